"""Rhythmic tiling canons over the cyclic group Z/nZ."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, ParseError, SearchLimitError
from .textformat import format_block, parse_document

DEFAULT_SEARCH_BOUND = 40
SEARCH_BOUND_ENV = "TESSELLATA_SEARCH_BOUND"


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z/nZ kept in canonical (sorted, reduced) form."""

    modulus: int
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus <= 0:
            raise DomainError("modulus must be positive")
        canon = tuple(sorted({int(e) % self.modulus for e in self.elements}))
        object.__setattr__(self, "elements", canon)

    @classmethod
    def of(cls, modulus: int, elements: Iterable[int]) -> ResidueSet:
        return cls(modulus, tuple(elements))

    @classmethod
    def full(cls, modulus: int) -> ResidueSet:
        return cls(modulus, tuple(range(modulus)))

    @classmethod
    def from_mask(cls, modulus: int, mask: int) -> ResidueSet:
        return cls(modulus, tuple(r for r in range(modulus) if mask >> r & 1))

    @property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, r):
        return r in self.elements

    def __str__(self):
        return "{" + ", ".join(map(str, self.elements)) + "}"


def _require_nonempty(s: ResidueSet, what="motif"):
    if not s.elements:
        raise DomainError(f"{what} must not be empty")


def _same_modulus(a: ResidueSet, b: ResidueSet):
    if a.modulus != b.modulus:
        raise DomainError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def translate_motif(s: ResidueSet, t: int) -> ResidueSet:
    """``s + t`` in Z/nZ; ``t`` must already lie in ``[0, n)``."""
    if not 0 <= t < s.modulus:
        raise DomainError(f"offset {t} outside [0, {s.modulus})")
    return ResidueSet(s.modulus, tuple(e + t for e in s.elements))


def _rotate_mask(mask: int, t: int, n: int) -> int:
    full = (1 << n) - 1
    t %= n
    return ((mask << t) | (mask >> (n - t))) & full


@dataclass(frozen=True)
class VoiceEntry:
    motif: ResidueSet
    offset: int
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.offset < self.motif.modulus:
            raise DomainError(f"offset {self.offset} outside [0, {self.motif.modulus})")

    def onsets(self) -> ResidueSet:
        return translate_motif(self.motif, self.offset)


@dataclass(frozen=True)
class CanonSpec:
    modulus: int
    voices: tuple[VoiceEntry, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.modulus, bool) or not isinstance(self.modulus, int) or self.modulus <= 0:
            raise DomainError("modulus must be positive")
        object.__setattr__(self, "voices", tuple(self.voices))
        for v in self.voices:
            if v.motif.modulus != self.modulus:
                raise DomainError(
                    f"voice {v.label!r} has modulus {v.motif.modulus}, canon has {self.modulus}"
                )
            _require_nonempty(v.motif)

    @classmethod
    def from_offsets(cls, motif: ResidueSet, offsets: Iterable[int]) -> CanonSpec:
        return cls(motif.modulus, tuple(VoiceEntry(motif, b) for b in offsets))


@dataclass(frozen=True)
class CoverageProfile:
    modulus: int
    counts: tuple[int, ...]

    @property
    def support(self) -> ResidueSet:
        return ResidueSet(self.modulus, tuple(r for r, c in enumerate(self.counts) if c))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_full(self) -> bool:
        return all(self.counts)

    def is_exact(self) -> bool:
        return all(c == 1 for c in self.counts)

    def overlaps(self) -> dict[int, int]:
        """Residues hit more than once, with their multiplicity."""
        return {r: c for r, c in enumerate(self.counts) if c > 1}


def coverage(spec: CanonSpec) -> CoverageProfile:
    if not spec.voices:
        raise DomainError("a canon needs at least one voice")
    counts = [0] * spec.modulus
    for v in spec.voices:
        for r in v.onsets():
            counts[r] += 1
    return CoverageProfile(spec.modulus, tuple(counts))


def is_exact_tiling(a: ResidueSet, b: ResidueSet) -> bool:
    """True when the translates ``a + b_i`` cover Z/nZ exactly once each."""
    _same_modulus(a, b)
    n = a.modulus
    if len(a) * len(b) != n:
        return False
    covered = 0
    for t in b:
        m = _rotate_mask(a.mask, t, n)
        if covered & m:
            return False
        covered |= m
    return covered == (1 << n) - 1


def is_cover(a: ResidueSet, b: ResidueSet) -> bool:
    """True when the translates ``a + b_i`` reach every residue (overlaps allowed)."""
    _same_modulus(a, b)
    n = a.modulus
    covered = 0
    for t in b:
        covered |= _rotate_mask(a.mask, t, n)
    return covered == (1 << n) - 1


def search_bound() -> int:
    raw = os.environ.get(SEARCH_BOUND_ENV)
    if raw is None:
        return DEFAULT_SEARCH_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{SEARCH_BOUND_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise DomainError(f"{SEARCH_BOUND_ENV} must be positive")
    return value


def _exact_complements(a: ResidueSet) -> list[int]:
    n = a.modulus
    full = (1 << n) - 1
    shapes = [_rotate_mask(a.mask, t, n) for t in range(n)]
    elems = a.elements
    found = []

    def dfs(covered: int, chosen: int):
        if covered == full:
            found.append(chosen)
            return
        # smallest uncovered residue must be hit by some translate
        r = (~covered & (covered + 1)).bit_length() - 1
        for e in elems:
            t = (r - e) % n
            m = shapes[t]
            if not covered & m:
                dfs(covered | m, chosen | 1 << t)

    dfs(0, 0)
    return found


def _minimal_covers(a: ResidueSet) -> list[int]:
    n = a.modulus
    full = (1 << n) - 1
    shapes = [_rotate_mask(a.mask, t, n) for t in range(n)]
    elems = a.elements
    found = set()

    def dfs(covered: int, chosen: int):
        if covered == full:
            found.add(chosen)
            return
        r = (~covered & (covered + 1)).bit_length() - 1
        for e in elems:
            t = (r - e) % n
            if not chosen >> t & 1:
                dfs(covered | shapes[t], chosen | 1 << t)

    dfs(0, 0)

    def minimal(chosen: int) -> bool:
        ts = [t for t in range(n) if chosen >> t & 1]
        for drop in ts:
            cov = 0
            for t in ts:
                if t != drop:
                    cov |= shapes[t]
            if cov == full:
                return False
        return True

    return [c for c in found if minimal(c)]


def find_complements(
    a: ResidueSet,
    exact_only: bool = True,
    *,
    canonical: bool = False,
    bound: int | None = None,
) -> list[ResidueSet]:
    """All offset sets ``B`` completing motif ``a`` to a cover of Z/nZ.

    With ``exact_only`` every residue is hit exactly once; otherwise the
    inclusion-minimal covers are returned. Results are sorted by element list.
    ``canonical`` keeps one representative (the least) per translation class.
    """
    _require_nonempty(a)
    n = a.modulus
    limit = search_bound() if bound is None else bound
    if n > limit:
        raise SearchLimitError(f"modulus {n} exceeds search bound {limit}")
    if exact_only:
        if n % len(a):
            return []
        masks = _exact_complements(a)
    else:
        masks = _minimal_covers(a)
    sets = sorted({ResidueSet.from_mask(n, m) for m in masks}, key=lambda s: s.elements)
    if canonical:
        sets = [s for s in sets if s == canonical_translate(s)]
    return sets


def canonical_translate(s: ResidueSet) -> ResidueSet:
    """Lexicographically least translate of ``s``."""
    n = s.modulus
    return min(
        (ResidueSet(n, tuple(e + t for e in s.elements)) for t in range(n)),
        key=lambda x: x.elements,
    )


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n) if n % d == 0]


def period_of(s: ResidueSet) -> int | None:
    """Least proper translation period of ``s``, or None when aperiodic."""
    _require_nonempty(s, "set")
    n = s.modulus
    m = s.mask
    for p in _divisors(n):
        if _rotate_mask(m, p, n) == m:
            return p
    return None


def is_vuza_canon(a: ResidueSet, b: ResidueSet) -> bool:
    """Exact tiling with both factors aperiodic; singleton factors don't count."""
    _same_modulus(a, b)
    if len(a) < 2 or len(b) < 2:
        return False
    return is_exact_tiling(a, b) and period_of(a) is None and period_of(b) is None


@dataclass(frozen=True)
class TilingScan:
    modulus: int
    tilings: int
    vuza: int


def scan_exact_tilings(n: int) -> TilingScan:
    """Every exact tiling ``A (+) B = Z/n`` and how many have both factors aperiodic.

    Since ``|A| * |B| = n`` one factor has at most ``isqrt(n)`` elements, and
    translating it to contain 0 changes neither factor's periodicity. So the
    scan runs over those small motifs and all of their complements.
    """
    if n <= 0:
        raise DomainError("modulus must be positive")
    tilings = vuza = 0
    for k in range(1, math.isqrt(n) + 1):
        if n % k:
            continue
        for rest in itertools.combinations(range(1, n), k - 1):
            a = ResidueSet(n, (0,) + rest)
            a_periodic = period_of(a) is not None
            for mask in _exact_complements(a):
                tilings += 1
                if k > 1 and not a_periodic and period_of(ResidueSet.from_mask(n, mask)) is None:
                    vuza += 1
    return TilingScan(n, tilings, vuza)


def to_accent_vector(s: ResidueSet) -> list[int]:
    return [1 if r in s.elements else 0 for r in range(s.modulus)]


def from_accent_vector(vector: Sequence[int]) -> ResidueSet:
    if not vector:
        raise DomainError("accent vector must not be empty")
    bad = [x for x in vector if x not in (0, 1)]
    if bad:
        raise DomainError(f"accent vector entries must be 0 or 1, got {bad[0]!r}")
    return ResidueSet(len(vector), tuple(r for r, x in enumerate(vector) if x))


# Tilework for Clarinet material (Z/15)
R = ResidueSet(15, (0, 2, 5))
R_ALT = ResidueSet(15, (0, 3, 5))
TILEWORK_ENTRIES = (("R", 1), ("R", 2), ("Rp", 5), ("Rp", 12), ("R", 9), ("Rp", 13))
BULERIA = ResidueSet(12, (0, 3, 6, 8, 10))


def tilework_canon() -> CanonSpec:
    motifs = {"R": R, "Rp": R_ALT}
    voices = tuple(
        VoiceEntry(motifs[name], t, f"Voice {i}") for i, (name, t) in enumerate(TILEWORK_ENTRIES, 1)
    )
    return CanonSpec(15, voices)


def parse_canon(text: str) -> CanonSpec:
    """Read a ``.canon.txt`` document (``modulus`` plus ``voice`` blocks)."""
    doc = parse_document(text)
    n = doc.fields.get("modulus")
    if n is None:
        raise ParseError("missing 'modulus'", 1)
    if not isinstance(n, int) or n <= 0:
        raise ParseError("modulus must be positive", doc.lines["modulus"])
    unknown = set(doc.fields) - {"modulus"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown key {key!r}", doc.lines[key])
    voices = []
    for block in doc.blocks:
        if block.name != "voice":
            raise ParseError(f"unknown block {block.name!r}", block.line)
        extra = set(block.fields) - {"motif", "offset", "label"}
        if extra:
            key = sorted(extra)[0]
            raise ParseError(f"unknown voice key {key!r}", block.lines[key])
        motif = block.require("motif")
        offset = block.require("offset")
        label = block.fields.get("label", "")
        if not isinstance(motif, list) or not all(isinstance(x, int) for x in motif):
            raise ParseError("motif must be a list of integers", block.lines["motif"])
        if not isinstance(offset, int):
            raise ParseError("offset must be an integer", block.lines["offset"])
        if not isinstance(label, str):
            raise ParseError("label must be a string", block.lines["label"])
        try:
            voices.append(VoiceEntry(ResidueSet(n, tuple(motif)), offset, label))
        except DomainError as exc:
            raise ParseError(str(exc), block.line) from None
    try:
        return CanonSpec(n, tuple(voices))
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def write_canon(spec: CanonSpec) -> str:
    lines = [f"modulus = {spec.modulus}"]
    for v in spec.voices:
        lines.append(
            format_block("voice", {"motif": list(v.motif.elements), "offset": v.offset, "label": v.label})
        )
    return "\n".join(lines) + "\n"
