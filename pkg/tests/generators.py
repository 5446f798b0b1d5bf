"""Every score-producing path in the package, for roundtrip and determinism checks."""

from tessellata import isorhythm, phase, pitch, rhythm, score, timeline


def generator_scores():
    return {
        "isorhythm": score.isorhythm_score(isorhythm.expand_isorhythm((2, 1, 1), (60, 62, 64, 65))),
        "canon": score.canon_score(rhythm.tilework_canon()),
        "phase": score.phase_score(phase.process_schedule(phase.ClapPattern.of(12, (0, 3, 6, 8, 10)), 12)),
        "walk_iii": score.walk_score(pitch.movement_iii_walk(), 2),
        "walk_v": score.walk_score(pitch.movement_v_walk(), 6),
        "timeline": score.Score("timeline", tuple(timeline.timeline_to_events(timeline.paper_sequences()))),
        "empty": score.Score(),
    }
