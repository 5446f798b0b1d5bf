"""Quarter-tone pitch classes and the geometry-to-interval walks.

Pitches are integers of quarter-tones modulo 24 (C = 0, so semitone ``s`` is
``2 * s``). Tables display them as semitone decimals again, e.g.
21 is shown as ``10.5``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .geometry import SegmentKind

QT_PER_OCTAVE = 24


@dataclass(frozen=True, order=True)
class QtPitch:
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise DomainError(f"quarter-tone value must be an integer, got {self.value!r}")
        object.__setattr__(self, "value", self.value % QT_PER_OCTAVE)

    @classmethod
    def from_semitones(cls, semitones) -> QtPitch:
        q = Fraction(semitones) * 2
        if q.denominator != 1:
            raise DomainError(f"{semitones} semitones is not a whole number of quarter-tones")
        return cls(int(q))

    @property
    def semitones(self) -> Fraction:
        return Fraction(self.value, 2)

    def __add__(self, delta: int) -> QtPitch:
        return QtPitch(self.value + delta)

    def __str__(self):
        return render_pitch(self)


_LETTERS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_ACCIDENTALS = {"": 0, "#": 1, "♯": 1, "b": -1, "♭": -1}
_PITCH_RE = re.compile(
    r"(?P<letter>[A-Ga-g])(?P<acc>[#♯b♭]?)\s*(?:(?P<sign>[+\-−])\s*(?P<num>\d+)\s*/\s*4)?"
)

# canonical spelling of the base notes in the walk tables
SPELLING = ("C", "C♯", "D", "E♭", "E", "F", "F♯", "G", "G♯", "A", "B♭", "B")


def parse_pitch(name: str) -> QtPitch:
    """Parse ``A``, ``F#``, ``B♭``, ``G+1/4``, ``C - 3/4`` ... into quarter-tones.

    The suffix ``±k/4`` adds ``k`` quarter-tones (a quarter of a whole tone each).
    """
    text = name.strip()
    m = _PITCH_RE.fullmatch(text)
    if not m:
        m2 = _PITCH_RE.match(text)
        pos = m2.end() + 1 if m2 else 1
        raise ParseError(f"cannot parse pitch name {name!r}", column=pos)
    semis = _LETTERS[m["letter"].upper()] + _ACCIDENTALS[m["acc"]]
    qt = 2 * semis
    if m["sign"]:
        k = int(m["num"])
        qt += -k if m["sign"] in "-−" else k
    return QtPitch(qt)


def render_pitch(p: QtPitch) -> str:
    """Canonical name from ``SPELLING``; odd quarter-tones get ``+1/4``."""
    name = SPELLING[p.value // 2]
    return name + "+1/4" if p.value % 2 else name


def format_semitones(qt: int, signed: bool = False) -> str:
    """Quarter-tone integer as a semitone decimal (``21`` -> ``10.5``)."""
    s = Fraction(qt, 2)
    text = str(s.numerator) if s.denominator == 1 else f"{float(s):g}"
    if signed and qt > 0:
        text = "+" + text
    return text


# -- hexagon scales -----------------------------------------------------------


@dataclass(frozen=True)
class HexScale:
    hexagon: str
    pitch_classes: frozenset[QtPitch]

    def __post_init__(self):
        if len(self.pitch_classes) != 6 or any(p.value % 2 for p in self.pitch_classes):
            raise DomainError("a hexagon scale holds exactly six semitone pitch classes")

    def semitones(self) -> list[int]:
        return sorted(p.value // 2 for p in self.pitch_classes)


_SCALES = {
    "H1": (0, 2, 4, 5, 9, 10),
    "H2": (0, 2, 4, 6, 9, 10),
    "H3": (2, 4, 6, 8, 9, 10),
}
# notes in the order each hexagon introduces them
SCALE_NOTES = {
    "H1": ("A", "B♭", "C", "D", "E", "F"),
    "H2": ("C", "D", "E", "F♯", "A", "B♭"),
    "H3": ("E", "F♯", "G♯", "A", "B♭", "D"),
}
# the three notes on sides shared by two hexagons
SHARED_SIDE_NOTES = ("B♭", "A", "F♯")


def hexagon_scale(hexagon: str) -> HexScale:
    try:
        pcs = _SCALES[hexagon]
    except KeyError:
        raise DomainError(f"unknown hexagon {hexagon!r}; expected H1, H2 or H3") from None
    return HexScale(hexagon, frozenset(QtPitch(2 * s) for s in pcs))


# -- segment walks ------------------------------------------------------------

_DELTA = {
    SegmentKind.HALF_SIDE: 2,
    SegmentKind.APOTHEM: 3,
    SegmentKind.DOUBLE_APOTHEM: 6,
    SegmentKind.FULL_SIDE: 4,
}


def segment_delta(kind: SegmentKind, direction: int) -> int:
    """Signed quarter-tone step for one boundary segment.

    Half side is a semitone, apothem three quarter-tones, two apothems six.
    A full side with direction 0 is a repeated note; with a sign it is a
    whole tone.
    """
    if direction not in (-1, 0, 1):
        raise DomainError(f"direction must be -1, 0 or +1, got {direction!r}")
    if direction == 0:
        if kind is not SegmentKind.FULL_SIDE:
            raise DomainError(f"{kind.value} needs a direction of +1 or -1")
        return 0
    return direction * _DELTA[kind]


_ALLOWED = {
    SegmentKind.HALF_SIDE: {2},
    SegmentKind.APOTHEM: {3},
    SegmentKind.DOUBLE_APOTHEM: {6},
    SegmentKind.FULL_SIDE: {0, 4},
}


@dataclass(frozen=True)
class WalkStep:
    kind: SegmentKind
    base: QtPitch
    delta: int
    result: QtPitch

    def __post_init__(self):
        if abs(self.delta) not in _ALLOWED[self.kind]:
            raise DomainError(f"delta {self.delta} does not fit a {self.kind.value}")
        if self.result != self.base + self.delta:
            raise DomainError("result must equal base + delta (mod 24)")


def _as_kind(kind) -> SegmentKind:
    if isinstance(kind, SegmentKind):
        return kind
    try:
        return SegmentKind(str(kind).replace("-", "_").lower())
    except ValueError:
        raise DomainError(f"unknown segment kind {kind!r}") from None


def pitch_walk(steps: Iterable[tuple]) -> list[WalkStep]:
    """Evaluate independent ``(kind, base, direction)`` rows."""
    out = []
    for i, (kind, base, direction) in enumerate(steps, 1):
        try:
            kind = _as_kind(kind)
            b = base if isinstance(base, QtPitch) else parse_pitch(base)
            delta = segment_delta(kind, direction)
        except DomainError as exc:
            raise type(exc)(f"step {i}: {exc}") from None
        out.append(WalkStep(kind, b, delta, b + delta))
    return out


def chain_walk(start: QtPitch, moves: Sequence[tuple[SegmentKind, int]]) -> list[QtPitch]:
    """Pitches visited when each move starts from the previous result."""
    cur = start
    seen = [cur]
    for kind, direction in moves:
        cur = cur + segment_delta(kind, direction)
        seen.append(cur)
    return seen


HALF = SegmentKind.HALF_SIDE
APO = SegmentKind.APOTHEM
FULL = SegmentKind.FULL_SIDE

# Large kite contour (Movement III): (kind, base note, direction)
MOVEMENT_III = (
    (HALF, "C", -1),
    (HALF, "A", +1),
    (APO, "C", -1),
    (APO, "A", +1),
    (APO, "A", -1),
    (APO, "F#", +1),
    (APO, "F#", +1),
    (APO, "F#", +1),
)
# Result labels exactly as printed in the Movement III table
MOVEMENT_III_LABELS = (
    "(Cb)", "(A#)", "(C - 3/4)", "(A + 3/4)", "(A - 3/4)(G+1/4)", "(G + 1/4)", "(G + 1/4)", "(G + 1/4)",
)

# Hat outline (Movement V)
MOVEMENT_V = (
    (HALF, "C", -1),
    (HALF, "A", +1),
    (APO, "A", +1),
    (APO, "E", +1),
    (HALF, "E♭", -1),
    (FULL, "D", 0),
    (HALF, "F♯", -1),
    (APO, "F♯", +1),
    (APO, "B♭", -1),
    (HALF, "B♭", -1),
    (HALF, "A", +1),
    (APO, "A", +1),
    (APO, "C", -1),
)

SEGMENT_LABELS = {
    SegmentKind.HALF_SIDE: "Half-side",
    SegmentKind.FULL_SIDE: "Full side",
    SegmentKind.APOTHEM: "Apothem",
    SegmentKind.DOUBLE_APOTHEM: "Two apothems",
}


def movement_iii_walk() -> list[WalkStep]:
    return pitch_walk(MOVEMENT_III)


def movement_v_walk() -> list[WalkStep]:
    return pitch_walk(MOVEMENT_V)


# -- small-kite transformation vectors (Movement IV) ----------------------------


@dataclass(frozen=True)
class KiteTransform:
    kite: int
    hexagon: str
    beats: int
    deltas: tuple[int, int, int, int]  # quarter-tones

    def __post_init__(self):
        mags = sorted(abs(d) for d in self.deltas)
        if len(self.deltas) != 4 or mags != [2, 2, 3, 3]:
            raise DomainError("a kite transform has two semitone and two 3/4-tone entries")
        if self.beats not in (3, 6):
            raise DomainError("beats must be 6 or 3")

    @property
    def semitone_deltas(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(d, 2) for d in self.deltas)


_KITE_ROWS = (
    (1, "H1", 6, (-2, +2, -3, +3)),
    (2, "H1", 3, (+2, -2, +3, -3)),
    (3, "H1", 6, (-2, -2, +3, +3)),
    (4, "H1", 3, (+2, +2, -3, -3)),
    (5, "H2", 6, (-2, +2, +3, +3)),
    (6, "H2", 3, (+2, -2, -3, -3)),
    (7, "H3", 6, (-2, -2, -3, +3)),
    (8, "H3", 3, (+2, +2, +3, -3)),
)


def kite_transforms() -> list[KiteTransform]:
    return [KiteTransform(*row) for row in _KITE_ROWS]


# -- table rendering ------------------------------------------------------------


def _semitone_of(base_name: str) -> str:
    return format_semitones(parse_pitch(base_name).value)


def _rows_to_text(header: Sequence[str], rows: list[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def movement_iii_table() -> str:
    rows = []
    for i, ((kind, base, _), step, label) in enumerate(
        zip(MOVEMENT_III, movement_iii_walk(), MOVEMENT_III_LABELS), 1
    ):
        rows.append((
            str(i),
            f"{base} ({_semitone_of(base)})",
            format_semitones(step.delta, signed=True),
            f"{format_semitones(step.result.value)} {label}",
        ))
    return _rows_to_text(("Step", "Base note", "Transformation (semi-tones)", "Result (mod 12)"), rows)


def movement_iv_table() -> str:
    rows = []
    for t in kite_transforms():
        vec = ", ".join(format_semitones(d, signed=True) for d in t.deltas)
        rows.append((str(t.kite), t.hexagon, str(t.beats), f"[{vec}]"))
    return _rows_to_text(
        ("Small kite (i)", "Hexagon (H)", "Time signature (beats)", "Transformations (in semi-tones)"),
        rows,
    )


def movement_v_table() -> str:
    rows = []
    for i, ((kind, base, _), step) in enumerate(zip(MOVEMENT_V, movement_v_walk()), 1):
        rows.append((
            str(i),
            SEGMENT_LABELS[kind],
            f"{base} ({_semitone_of(base)})",
            format_semitones(step.delta, signed=True),
            format_semitones(step.result.value),
        ))
    return _rows_to_text(
        ("Nº.", "Segment type", "Base note", "Transformation (semi-tones)", "Result (mod 12)"), rows
    )
