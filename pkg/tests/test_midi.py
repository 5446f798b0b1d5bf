from fractions import Fraction

import pytest

from generators import generator_scores
from tessellata.errors import CapacityError, DomainError
from tessellata.isorhythm import expand_isorhythm
from tessellata.midi import bend_value, plan_notes, read_events, varlen, write_midi
from tessellata.pitch import parse_pitch
from tessellata.score import Score, ScoreEvent, anchor, isorhythm_score


def note_ons(data):
    return [(t, m) for t, m in read_events(data) if m[0] >> 4 == 0x9]


def note_offs(data):
    return [(t, m) for t, m in read_events(data) if m[0] >> 4 == 0x8]


def bends(data):
    return [(t, m[0] & 0xF, m[1] | m[2] << 7) for t, m in read_events(data) if m[0] >> 4 == 0xE]


def test_header():
    data = write_midi(Score())
    assert data[:14] == b"MThd\x00\x00\x00\x06\x00\x00\x00\x01\x01\xe0"
    assert data[14:18] == b"MTrk"
    assert data.endswith(b"\x00\xff\x2f\x00")


def test_isorhythm_demo():
    data = write_midi(isorhythm_score(expand_isorhythm((2, 1, 1), (60, 62, 64, 65))))
    ons, offs = note_ons(data), note_offs(data)
    assert len(ons) == len(offs) == 12
    assert [m[1] for _, m in ons] == [60, 62, 64, 65] * 3
    assert [t for t, _ in ons] == [480 * o for o in (0, 2, 3, 4, 6, 7, 8, 10, 11, 12, 14, 15)]


def test_bend_precedes_every_note_on():
    data = write_midi(generator_scores()["walk_v"])
    events = read_events(data)
    for i, (t, m) in enumerate(events):
        if m[0] >> 4 == 0x9:
            prev_t, prev = events[i - 1]
            assert prev[0] == 0xE0 | (m[0] & 0xF) and prev_t == t


def test_a4_has_centre_bend():
    s = Score("", (ScoreEvent("v", 0, 1, anchor(parse_pitch("A"), 60)),))
    data = write_midi(s)
    assert note_ons(data)[0][1][1] == 69
    assert bends(data) == [(0, 0, 8192)]


def test_quarter_tone_bend_under_declared_range():
    s = Score("", (ScoreEvent("v", 0, 1, anchor(parse_pitch("G+1/4"), 60)),))
    # +1 quarter-tone is a quarter of the +-2 semitone half-range
    assert bends(write_midi(s)) == [(0, 0, 8192 + 2048)]
    assert bends(write_midi(s, bend_range=4)) == [(0, 0, 8192 + 1024)]
    assert note_ons(write_midi(s))[0][1][1] == 67


def test_bend_range_declared_with_rpn():
    s = Score("", (ScoreEvent("v", 0, 1, 120),))
    ccs = [m for t, m in read_events(write_midi(s, bend_range=4)) if m[0] >> 4 == 0xB]
    assert [(m[1], m[2]) for m in ccs] == [(101, 0), (100, 0), (6, 4), (38, 0), (101, 127), (100, 127)]


def test_bend_value_arithmetic():
    assert bend_value(0) == 8192
    assert bend_value(1) == 10240
    assert bend_value(1, 4) == 9216
    assert bend_value(-1) == 6144
    with pytest.raises(DomainError):
        bend_value(1, 3)


@pytest.mark.parametrize("name", sorted(generator_scores()))
def test_deterministic_and_complete(name):
    s = generator_scores()[name]
    a, b = write_midi(s), write_midi(s)
    assert a == b
    pitched = sum(1 for e in s.events if e.pitch is not None)
    assert len(note_ons(a)) == len(note_offs(a)) == pitched


def test_quantisation_error_below_one_tick():
    s = Score("", (ScoreEvent("v", Fraction(1, 3), Fraction(1, 7), 120),), ticks_per_quarter=480)
    (start, _), = [(t, m) for t, m in note_ons(write_midi(s))]
    assert abs(start - Fraction(480, 3)) < 1


def test_distinct_bends_spread_over_channels():
    evs = tuple(ScoreEvent(f"v{i}", 0, 1, 120 + (i % 2)) for i in range(2))
    plans = plan_notes(Score("", evs))
    assert len({p.channel for p in plans}) == 2


def test_round_robin_reuses_channels_with_equal_bend():
    evs = tuple(ScoreEvent(f"v{i}", 0, 4, 100 + 2 * i + 1) for i in range(16))
    assert [p.channel for p in plan_notes(Score("", evs))] == list(range(15)) + [0]


def test_channel_exhaustion():
    # sixteen sounding unisons each need a channel of their own
    evs = tuple(ScoreEvent(f"v{i}", 0, 4, 121) for i in range(16))
    with pytest.raises(CapacityError):
        write_midi(Score("", evs))
    assert write_midi(Score("", evs[:15]))


def test_same_note_twice_needs_another_channel():
    evs = (ScoreEvent("a", 0, 2, 120), ScoreEvent("b", 1, 2, 120))
    assert {p.channel for p in plan_notes(Score("", evs))} == {0, 1}


def test_out_of_range_pitch():
    with pytest.raises(DomainError):
        write_midi(Score("", (ScoreEvent("v", 0, 1, 2 * 128),)))


def test_varlen():
    assert varlen(0) == b"\x00"
    assert varlen(0x7F) == b"\x7f"
    assert varlen(0x80) == b"\x81\x00"
    assert varlen(0x0FFFFFFF) == b"\xff\xff\xff\x7f"
