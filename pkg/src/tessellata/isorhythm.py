"""Talea/color expansion of the isorhythmic motet."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from typing import Sequence

from .errors import DomainError, ParseError
from .textformat import parse_document


@dataclass(frozen=True)
class Talea:
    durations: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "durations", tuple(self.durations))
        if not self.durations:
            raise DomainError("talea must not be empty")
        for d in self.durations:
            if isinstance(d, bool) or not isinstance(d, int) or d <= 0:
                raise DomainError(f"talea durations must be positive integers, got {d!r}")

    def __len__(self):
        return len(self.durations)


@dataclass(frozen=True)
class Color:
    pitches: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pitches", tuple(self.pitches))
        if not self.pitches:
            raise DomainError("color must not be empty")
        for p in self.pitches:
            if isinstance(p, bool) or not isinstance(p, int):
                raise DomainError(f"color pitches must be integers, got {p!r}")

    def __len__(self):
        return len(self.pitches)


@dataclass(frozen=True)
class IsoEvent:
    step: int
    pitch: int
    duration: int
    onset: int


def _coerce(talea, color) -> tuple[Talea, Color]:
    if not isinstance(talea, Talea):
        talea = Talea(tuple(talea))
    if not isinstance(color, Color):
        color = Color(tuple(color))
    return talea, color


def cycle_length(talea: Talea | Sequence[int], color: Color | Sequence[int]) -> int:
    talea, color = _coerce(talea, color)
    return math.lcm(len(talea), len(color))


def expand_isorhythm(
    talea: Talea | Sequence[int],
    color: Color | Sequence[int],
    cycles: int = 1,
) -> list[IsoEvent]:
    """Pair color and talea step by step until both realign.

    Step ``i`` takes pitch ``color[i mod n]`` and duration ``talea[i mod m]``;
    one cycle is ``lcm(m, n)`` steps. ``cycles`` repeats the whole period.
    """
    talea, color = _coerce(talea, color)
    if cycles < 1:
        raise DomainError("cycles must be at least 1")
    m, n = len(talea), len(color)
    steps = math.lcm(m, n) * cycles
    durations = [talea.durations[i % m] for i in range(steps)]
    onsets = [0, *accumulate(durations)][:-1]
    return [
        IsoEvent(i, color.pitches[i % n], durations[i], onsets[i]) for i in range(steps)
    ]


def cycle_duration(talea: Talea | Sequence[int], color: Color | Sequence[int]) -> int:
    talea, color = _coerce(talea, color)
    return cycle_length(talea, color) // len(talea) * sum(talea.durations)


def parse_isorhythm(text: str) -> tuple[Talea, Color]:
    """Read ``talea = [..]`` and ``color = [..]`` from a key-value document."""
    doc = parse_document(text)
    extra = set(doc.fields) - {"talea", "color"}
    if extra:
        key = sorted(extra)[0]
        raise ParseError(f"unknown key {key!r}", doc.lines[key])
    if doc.blocks:
        raise ParseError(f"unexpected block {doc.blocks[0].name!r}", doc.blocks[0].line)
    out = []
    for key in ("talea", "color"):
        if key not in doc.fields:
            raise ParseError(f"missing '{key}'")
        value = doc.fields[key]
        if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
            raise ParseError(f"{key} must be a list of integers", doc.lines[key])
        out.append(value)
    try:
        return Talea(tuple(out[0])), Color(tuple(out[1]))
    except DomainError as exc:
        raise ParseError(str(exc)) from None


DEMO_TALEA = Talea((2, 1, 1))
DEMO_COLOR = Color((60, 62, 64, 65))
