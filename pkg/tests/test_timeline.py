from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tessellata.errors import DomainError, ParseError
from tessellata.timeline import (
    BIRD_MATRICES,
    PART_IDS,
    STAR_MATRICES,
    MotifEntry,
    MosaicPart,
    breakpoints,
    coverage_count,
    coverage_integral,
    expand_mosaic_part,
    motif_overlaps,
    pairwise_overlap,
    paper_sequences,
    parse_timeline,
    timeline_to_events,
    total_measures,
)

ENTRIES = paper_sequences()


def find(instrument, motif, start=None):
    return next(e for e in ENTRIES if e.instrument == instrument and e.motif == motif
                and (start is None or e.start == start))


def brute_count(entries, t):
    return sum(1 for e in entries if e.start <= t <= e.start + e.duration)


def test_three_instrument_sequences():
    assert len(ENTRIES) == 10
    rows = [(e.instrument, e.motif, e.start, e.duration) for e in ENTRIES]
    assert rows == [
        ("mandolin", "A", 0, 3), ("mandolin", "B", 3, 2), ("mandolin", "C", 5, 3), ("mandolin", "D", 8, 2),
        ("guitar", "A", 3, 3), ("guitar", "B", 6, 2), ("guitar", "C", 8, 3), ("guitar", "D", 11, 2),
        ("harp", "B", 4, 2), ("harp", "B", 8, 2),
    ]


def test_coverage_examples():
    assert coverage_count(ENTRIES, 4) == 3
    assert coverage_count(ENTRIES, 0) == 1
    assert coverage_count([], 7) == 0


def test_coverage_matches_brute_force_on_quarter_grid():
    for i in range(0, 14 * 4 + 1):
        t = Fraction(i, 4)
        assert coverage_count(ENTRIES, t) == brute_count(ENTRIES, t)


def test_intervals_are_closed():
    e = MotifEntry("x", "A", 0, 3)
    assert e.active(0) and e.active(3) and not e.active(Fraction(301, 100))


def test_overlap_examples():
    assert pairwise_overlap(find("mandolin", "B"), find("harp", "B", 4)) == (4, 5)
    a, b = MotifEntry("x", "A", 0, 3), MotifEntry("y", "A", 3, 2)
    assert pairwise_overlap(a, b) == (3, 3)
    assert pairwise_overlap(MotifEntry("x", "A", 0, 1), MotifEntry("y", "A", 2, 1)) is None


entries = st.builds(
    MotifEntry,
    st.sampled_from(["mandolin", "guitar", "harp"]),
    st.sampled_from("ABCD"),
    st.fractions(min_value=0, max_value=12, max_denominator=4),
    st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4),
)


@given(entries, entries)
def test_overlap_commutes_and_is_contained(a, b):
    ab = pairwise_overlap(a, b)
    assert ab == pairwise_overlap(b, a)
    if ab is not None:
        lo, hi = ab
        assert lo <= hi
        for e in (a, b):
            assert e.start <= lo and hi <= e.end


@given(st.lists(entries, max_size=8))
def test_integral_equals_total_duration(es):
    assert coverage_integral(es) == sum((e.duration for e in es), Fraction(0))


def test_three_instrument_integral():
    assert coverage_integral(ENTRIES) == 24
    assert breakpoints(ENTRIES)[0] == 0 and breakpoints(ENTRIES)[-1] == 13


def test_motif_overlaps():
    pairs = [(a.instrument, b.instrument, iv) for a, b, iv in motif_overlaps(ENTRIES, "B")]
    assert ("mandolin", "harp", (4, 5)) in pairs


def test_entry_validation():
    with pytest.raises(DomainError):
        MotifEntry("x", "A", 0, 0)
    with pytest.raises(DomainError):
        MotifEntry("x", "A", -1, 2)
    with pytest.raises(DomainError):
        MotifEntry("x", "A", 0.5, 2)


# -- mosaic ------------------------------------------------------------------------------


def test_part_ii():
    recs = expand_mosaic_part("II")
    assert [(r.role, r.color, r.matrix) for r in recs] == [
        ("birds", "A", (1, 1, 1)), ("birds", "A", (1, 1, 1)), ("birds", "A", (1, 1, 1)), ("star", "C", (1, 2)),
    ]
    assert total_measures(recs) == 11


def test_part_i():
    recs = expand_mosaic_part("I")
    assert [(r.color, r.matrix) for r in recs[:3]] == [("D", (1, 2, 2)), ("D", (1, 2, 2)), ("B", (2, 1, 1))]
    assert (recs[3].color, recs[3].matrix) == ("A", (1,))
    assert total_measures(recs) == 10


def test_part_vi_star():
    assert expand_mosaic_part("VI")[-1].matrix == (2,)


@pytest.mark.parametrize("part", PART_IDS)
def test_every_part_shape(part):
    recs = expand_mosaic_part(part)
    assert len(recs) == 4
    assert all(r.matrix in BIRD_MATRICES.values() for r in recs[:3])
    assert recs[3].role == "star" and recs[3].matrix in STAR_MATRICES.values()
    assert [r.measures for r in recs[:3]] == [3, 3, 3]
    assert total_measures(recs) == (11 if recs[3].color == "C" else 10)


def test_unknown_part():
    with pytest.raises(DomainError):
        expand_mosaic_part("VII")
    with pytest.raises(DomainError):
        MosaicPart("X", "D", ("A", "A", "A"))


# -- export and parsing --------------------------------------------------------------------


def test_timeline_to_events():
    events = timeline_to_events(ENTRIES)
    assert len(events) == 10
    assert max(e.end for e in events) == 13
    assert [e.voice for e in events] == [e.instrument for e in ENTRIES]
    assert timeline_to_events([]) == []
    with pytest.raises(DomainError):
        timeline_to_events([MotifEntry("x", "Z", 0, 1)])


def test_parse_timeline():
    text = 'entry { instrument = "harp"; motif = "B"; start = 4; duration = 2 }\n' \
           'entry { instrument = "harp"; motif = "B"; start = 17/2; duration = 2 }\n'
    es = parse_timeline(text)
    assert [e.start for e in es] == [4, Fraction(17, 2)]


@pytest.mark.parametrize(
    "text, line",
    [
        ('entry { instrument = "harp"; motif = "B"; start = 4 }\n', 1),
        ('\nentry { instrument = "harp"; motif = "B"; start = 4; duration = 0 }\n', 2),
        ('entry { instrument = "harp"; motif = "B"; start = 4; duration = 2; tempo = 3 }\n', 1),
        ('speed = 3\n', 1),
        ('\n\nnote { }\n', 3),
    ],
)
def test_parse_timeline_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_timeline(text)
    assert info.value.line == line
