import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tessellata.errors import DomainError, ParseError
from tessellata.isorhythm import (
    DEMO_COLOR,
    DEMO_TALEA,
    Color,
    Talea,
    cycle_duration,
    cycle_length,
    expand_isorhythm,
    parse_isorhythm,
)

taleas = st.lists(st.integers(1, 6), min_size=1, max_size=7)
colors = st.lists(st.integers(0, 127), min_size=1, max_size=7)


def test_demo_table():
    events = expand_isorhythm((2, 1, 1), (60, 62, 64, 65))
    assert [e.step for e in events] == list(range(12))
    assert [e.pitch for e in events] == [60, 62, 64, 65] * 3
    assert [e.duration for e in events] == [2, 1, 1] * 4
    assert [e.onset for e in events] == [0, 2, 3, 4, 6, 7, 8, 10, 11, 12, 14, 15]
    assert events[11].onset == 15


def test_demo_constants():
    assert DEMO_TALEA.durations == (2, 1, 1)
    assert DEMO_COLOR.pitches == (60, 62, 64, 65)


def test_singleton():
    (e,) = expand_isorhythm((1,), (60,))
    assert (e.pitch, e.duration, e.onset) == (60, 1, 0)


@pytest.mark.parametrize("m, n, expected", [(3, 4, 12), (7, 7, 7), (15, 12, 60)])
def test_cycle_length(m, n, expected):
    assert cycle_length([1] * m, [60] * n) == expected


@pytest.mark.parametrize("talea, color", [((), (60,)), ((1,), ()), ((0,), (60,)), ((1.5,), (60,))])
def test_invalid(talea, color):
    with pytest.raises(DomainError):
        expand_isorhythm(talea, color)


@given(taleas, colors)
def test_expansion_invariants(talea, color):
    events = expand_isorhythm(talea, color)
    N = math.lcm(len(talea), len(color))
    assert len(events) == N
    assert [e.pitch for e in events] == [color[i % len(color)] for i in range(N)]
    assert [e.duration for e in events] == [talea[i % len(talea)] for i in range(N)]
    running = 0
    for e in events:
        assert e.onset == running
        running += e.duration
    assert running == cycle_duration(talea, color) == N // len(talea) * sum(talea)


@given(taleas, colors)
def test_two_cycles_concatenate(talea, color):
    one = expand_isorhythm(talea, color)
    two = expand_isorhythm(talea, color, cycles=2)
    span = cycle_duration(talea, color)
    assert [(e.pitch, e.duration) for e in two] == [(e.pitch, e.duration) for e in one] * 2
    assert [e.onset for e in two[len(one):]] == [e.onset + span for e in one]


def test_parse():
    talea, color = parse_isorhythm("talea = [2, 1, 1]\ncolor = [60, 62, 64, 65]  # C D E F\n")
    assert talea == Talea((2, 1, 1)) and color == Color((60, 62, 64, 65))


@pytest.mark.parametrize(
    "text, line",
    [
        ("talea = [2, 1]\ncolor = 60\n", 2),
        ("talea = [2, 1]\ncolor = [60]\nmode = 1\n", 3),
        ("talea = [2, 1]\n", None),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_isorhythm(text)
    assert info.value.line == line
