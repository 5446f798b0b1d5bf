"""Motif-entry timelines and the Nasrid-mosaic part encoding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, ParseError
from .textformat import parse_document


def _exact(x, what) -> Fraction:
    if isinstance(x, float):
        raise DomainError(f"{what} must be exact (int or Fraction), not float")
    return Fraction(x)


@dataclass(frozen=True)
class MotifEntry:
    """One motif played by one instrument over the closed interval ``[start, end]``."""

    instrument: str
    motif: str
    start: Fraction
    duration: Fraction

    def __post_init__(self):
        start = _exact(self.start, "start")
        duration = _exact(self.duration, "duration")
        if start < 0:
            raise DomainError("start must be non-negative")
        if duration <= 0:
            raise DomainError("duration must be positive")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "duration", duration)

    @property
    def end(self) -> Fraction:
        return self.start + self.duration

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.start, self.end

    def active(self, t) -> bool:
        return self.start <= t <= self.end


def coverage_count(entries: Iterable[MotifEntry], t) -> int:
    """Number of entries whose closed interval contains ``t``."""
    t = _exact(t, "t")
    return sum(1 for e in entries if e.active(t))


def pairwise_overlap(e1: MotifEntry, e2: MotifEntry) -> tuple[Fraction, Fraction] | None:
    lo = max(e1.start, e2.start)
    hi = min(e1.end, e2.end)
    if lo > hi:
        return None
    return lo, hi


def motif_overlaps(entries: Sequence[MotifEntry], motif: str) -> list[tuple[MotifEntry, MotifEntry, tuple]]:
    """Overlaps between entries of different instruments playing ``motif``."""
    same = [e for e in entries if e.motif == motif]
    out = []
    for i, a in enumerate(same):
        for b in same[i + 1:]:
            if a.instrument == b.instrument:
                continue
            ov = pairwise_overlap(a, b)
            if ov is not None:
                out.append((a, b, ov))
    return out


def breakpoints(entries: Iterable[MotifEntry]) -> list[Fraction]:
    pts = set()
    for e in entries:
        pts.add(e.start)
        pts.add(e.end)
    return sorted(pts)


def coverage_integral(entries: Sequence[MotifEntry]) -> Fraction:
    """Exact integral of the coverage function over its whole span.

    The function is constant on each open interval between breakpoints, so
    it is evaluated at midpoints.
    """
    pts = breakpoints(entries)
    total = Fraction(0)
    for lo, hi in zip(pts, pts[1:]):
        total += coverage_count(entries, (lo + hi) / 2) * (hi - lo)
    return total


_SEQUENCES = (
    ("mandolin", "A", 0, 3),
    ("mandolin", "B", 3, 2),
    ("mandolin", "C", 5, 3),
    ("mandolin", "D", 8, 2),
    ("guitar", "A", 3, 3),
    ("guitar", "B", 6, 2),
    ("guitar", "C", 8, 3),
    ("guitar", "D", 11, 2),
    ("harp", "B", 4, 2),
    ("harp", "B", 8, 2),
)


def paper_sequences() -> list[MotifEntry]:
    """The mandolin, guitar and harp entries of the first movement, in table order."""
    return [MotifEntry(i, m, Fraction(t), Fraction(d)) for i, m, t, d in _SEQUENCES]


# Motif lengths in 5/8 measures, as the sequences use them.
MOTIF_MEASURES = {"A": 3, "B": 2, "C": 3, "D": 2}


def parse_timeline(text: str) -> list[MotifEntry]:
    """Read ``entry { instrument = ".."; motif = ".."; start = t; duration = d }`` blocks."""
    doc = parse_document(text)
    if doc.fields:
        key = sorted(doc.fields)[0]
        raise ParseError(f"unknown key {key!r}", doc.lines[key])
    entries = []
    for block in doc.blocks:
        if block.name != "entry":
            raise ParseError(f"unknown block {block.name!r}", block.line)
        extra = set(block.fields) - {"instrument", "motif", "start", "duration"}
        if extra:
            key = sorted(extra)[0]
            raise ParseError(f"unknown entry key {key!r}", block.lines[key])
        inst = block.require("instrument")
        motif = block.require("motif")
        start = block.require("start")
        dur = block.require("duration")
        if not isinstance(inst, str) or not isinstance(motif, str):
            raise ParseError("instrument and motif must be strings", block.line)
        for key, v in (("start", start), ("duration", dur)):
            if not isinstance(v, (int, Fraction)):
                raise ParseError(f"{key} must be a number", block.lines[key])
        try:
            entries.append(MotifEntry(inst, motif, Fraction(start), Fraction(dur)))
        except DomainError as exc:
            raise ParseError(str(exc), block.line) from None
    return entries


# -- Nasrid Bird mosaic -----------------------------------------------------------

STAR_MATRICES = {"A": (1,), "B": (2,), "C": (1, 2)}
BIRD_MATRICES = {"A": (1, 1, 1), "B": (2, 1, 1), "D": (1, 2, 2)}


@dataclass(frozen=True)
class MosaicPart:
    part: str
    star: str
    birds: tuple[str, str, str]

    def __post_init__(self):
        if self.star not in STAR_MATRICES:
            raise DomainError(f"unknown star colour {self.star!r}")
        if len(self.birds) != 3 or any(b not in BIRD_MATRICES for b in self.birds):
            raise DomainError(f"bird groups must be three of A, B, D, got {self.birds!r}")

    @property
    def star_matrix(self) -> tuple[int, ...]:
        return STAR_MATRICES[self.star]


@dataclass(frozen=True)
class MosaicRecord:
    role: str
    color: str
    matrix: tuple[int, ...]
    measures: int


# Bird groups listed as printed (first line, then left and right of the star);
# Part IV's "Dx3" is the same D group.
_PARTS = {
    "I": ("A", ("D", "D", "B")),
    "II": ("C", ("A", "A", "A")),
    "III": ("A", ("D", "D", "D")),
    "IV": ("B", ("D", "D", "A")),
    "V": ("C", ("B", "B", "B")),
    "VI": ("B", ("D", "A", "A")),
}
PART_IDS = tuple(_PARTS)


def mosaic_part(part: str) -> MosaicPart:
    try:
        star, birds = _PARTS[part]
    except KeyError:
        raise DomainError(f"unknown mosaic part {part!r}; expected one of {', '.join(PART_IDS)}") from None
    return MosaicPart(part, star, birds)


def expand_mosaic_part(p: MosaicPart | str) -> list[MosaicRecord]:
    """Three bird groups (3 measures each) followed by the star (1 or 2 measures)."""
    if isinstance(p, str):
        p = mosaic_part(p)
    records = [MosaicRecord("birds", c, BIRD_MATRICES[c], 3) for c in p.birds]
    star = STAR_MATRICES[p.star]
    records.append(MosaicRecord("star", p.star, star, len(star)))
    return records


def total_measures(records: Sequence[MosaicRecord]) -> int:
    return sum(r.measures for r in records)


def timeline_to_events(
    entries: Sequence[MotifEntry],
    motif_measure_lengths: Mapping[str, int | Fraction] = MOTIF_MEASURES,
    palette: Mapping[str, int] | None = None,
):
    """One score event per entry, in input order.

    Onsets and durations stay in measures. Each motif gets a placeholder
    pitch (quarter-tones on the MIDI grid) from ``palette``.
    """
    from .score import ScoreEvent

    palette = dict(DEFAULT_PALETTE if palette is None else palette)
    events = []
    for e in entries:
        if e.motif not in motif_measure_lengths:
            raise DomainError(f"motif {e.motif!r} has no measure length")
        if e.motif not in palette:
            raise DomainError(f"motif {e.motif!r} has no palette pitch")
        expected = Fraction(motif_measure_lengths[e.motif])
        if e.duration != expected:
            raise DomainError(
                f"{e.instrument} {e.motif} lasts {e.duration} measures, motif is {expected}"
            )
        events.append(ScoreEvent(e.instrument, e.start, e.duration, palette[e.motif]))
    return events


# A4, C5, E5, G5 on the quarter-tone MIDI grid
DEFAULT_PALETTE = {"A": 2 * 69, "B": 2 * 72, "C": 2 * 76, "D": 2 * 79}
