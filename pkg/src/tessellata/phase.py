"""Phase-shifting process: a copy of a clap pattern drifting by ``(k/n) T``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise DomainError("onset times must be exact (int or Fraction), not float")
    return Fraction(x)


@dataclass(frozen=True)
class ClapPattern:
    cycle_length: Fraction
    onsets: tuple[Fraction, ...]

    def __post_init__(self):
        T = _exact(self.cycle_length)
        if T <= 0:
            raise DomainError("cycle length must be positive")
        onsets = tuple(_exact(p) for p in self.onsets)
        for p in onsets:
            if not 0 <= p < T:
                raise DomainError(f"onset {p} outside [0, {T})")
        if any(b <= a for a, b in zip(onsets, onsets[1:])):
            raise DomainError("onsets must be strictly ascending")
        object.__setattr__(self, "cycle_length", T)
        object.__setattr__(self, "onsets", onsets)

    @classmethod
    def of(cls, cycle_length, onsets: Iterable) -> ClapPattern:
        return cls(_exact(cycle_length), tuple(sorted(_exact(p) for p in onsets)))

    @classmethod
    def from_accents(cls, accents: Iterable[int], beat=1) -> ClapPattern:
        accents = list(accents)
        beat = _exact(beat)
        return cls(beat * len(accents), tuple(beat * i for i, a in enumerate(accents) if a))

    def __len__(self):
        return len(self.onsets)


def shift_pattern(p: ClapPattern, k: int, n: int) -> ClapPattern:
    """Onsets moved by ``(k/n) * T`` around the cycle, re-sorted."""
    if n <= 0:
        raise DomainError("number of subdivisions n must be positive")
    if k < 0:
        raise DomainError("cycle index k must be non-negative")
    T = p.cycle_length
    delta = Fraction(k, n) * T
    return ClapPattern(T, tuple(sorted((q + delta) % T for q in p.onsets)))


def process_schedule(p: ClapPattern, n: int) -> list[ClapPattern]:
    """Patterns for ``k = 0 .. n``; the last equals the first."""
    if n <= 0:
        raise DomainError("number of subdivisions n must be positive")
    return [shift_pattern(p, k, n) for k in range(n + 1)]


def circular_distance(a: Fraction, b: Fraction, T: Fraction) -> Fraction:
    d = (a - b) % T
    return min(d, T - d)


def coincidence_count(a: ClapPattern, b: ClapPattern, tolerance=0) -> int:
    """Onsets of ``a`` and ``b`` within ``tolerance`` of each other on the circle.

    Pairs are matched greedily, nearest first; each onset is used at most once.
    """
    if a.cycle_length != b.cycle_length:
        raise DomainError("patterns have different cycle lengths")
    tol = _exact(tolerance)
    if tol < 0:
        raise DomainError("tolerance must be non-negative")
    T = a.cycle_length
    pairs = []
    for i, p in enumerate(a.onsets):
        for j, q in enumerate(b.onsets):
            d = circular_distance(p, q, T)
            if d <= tol:
                # key is symmetric in (p, q) so swapping a and b gives the same count
                pairs.append((d, min(p, q), max(p, q), i, j))
    pairs.sort(key=lambda x: x[:3])
    used_a, used_b = set(), set()
    count = 0
    for _, _, _, i, j in pairs:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        count += 1
    return count
