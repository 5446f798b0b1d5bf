"""Score events and the canonical line-oriented score file.

Pitches on events are absolute quarter-tone numbers on the MIDI grid:
``2 * midi_note`` for a tempered note, plus one for a quarter-tone above it.
Pitch classes (:class:`~tessellata.pitch.QtPitch`) are placed on that grid by
:func:`anchor`. In the file the pitch is written in MIDI semitones, so a
quarter-tone shows up as a half (``pitch = 135/2`` is G4 + 1/4).

File layout (``.score.txt``)::

    # tessellata score v1
    title = "..."
    ticks_per_quarter = 480
    event { voice = "..."; onset = 0; duration = 2; pitch = 60; velocity = 96 }
    ...

Events are written one per line, sorted by ``(onset, voice)``; an unpitched
event simply has no ``pitch`` key.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, ParseError
from .textformat import format_block, format_value, parse_document

HEADER = "# tessellata score v1"
DEFAULT_VELOCITY = 96
DEFAULT_TPQ = 480
DEFAULT_ANCHOR = 60


def _exact(x, what) -> Fraction:
    if isinstance(x, float):
        raise DomainError(f"{what} must be exact (int or Fraction), not float")
    return Fraction(x)


@dataclass(frozen=True)
class ScoreEvent:
    voice: str
    onset: Fraction
    duration: Fraction
    pitch: int | None = None
    velocity: int = DEFAULT_VELOCITY

    def __post_init__(self):
        onset = _exact(self.onset, "onset")
        duration = _exact(self.duration, "duration")
        if onset < 0:
            raise DomainError("onset must be non-negative")
        if duration <= 0:
            raise DomainError("duration must be positive")
        if self.pitch is not None and (isinstance(self.pitch, bool) or not isinstance(self.pitch, int)):
            raise DomainError(f"pitch must be an integer number of quarter-tones, got {self.pitch!r}")
        if not 1 <= self.velocity <= 127:
            raise DomainError("velocity must be in 1..127")
        object.__setattr__(self, "onset", onset)
        object.__setattr__(self, "duration", duration)

    @property
    def end(self) -> Fraction:
        return self.onset + self.duration

    @property
    def pitched(self) -> bool:
        return self.pitch is not None


def _sort_key(e: ScoreEvent):
    return (e.onset, e.voice)


@dataclass(frozen=True)
class Score:
    title: str = ""
    events: tuple[ScoreEvent, ...] = ()
    ticks_per_quarter: int = DEFAULT_TPQ

    def __post_init__(self):
        if self.ticks_per_quarter <= 0:
            raise DomainError("ticks_per_quarter must be positive")
        object.__setattr__(self, "events", tuple(sorted(self.events, key=_sort_key)))

    @property
    def voices(self) -> list[str]:
        seen = {}
        for e in self.events:
            seen.setdefault(e.voice, None)
        return list(seen)

    @property
    def end(self) -> Fraction:
        return max((e.end for e in self.events), default=Fraction(0))


def anchor(pitch_class, base_midi: int = DEFAULT_ANCHOR) -> int:
    """Place a quarter-tone pitch class in the octave starting at ``base_midi``."""
    value = pitch_class.value if hasattr(pitch_class, "value") else int(pitch_class)
    return 2 * base_midi + value % 24


def midi_pitch(midi_note: int) -> int:
    return 2 * midi_note


def write_score(s: Score) -> bytes:
    lines = [HEADER, f"title = {format_value(s.title)}", f"ticks_per_quarter = {s.ticks_per_quarter}"]
    for e in s.events:
        fields = {"voice": e.voice, "onset": e.onset, "duration": e.duration}
        if e.pitch is not None:
            fields["pitch"] = Fraction(e.pitch, 2)
        fields["velocity"] = e.velocity
        lines.append(format_block("event", fields))
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_score(data: bytes | str) -> Score:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    doc = parse_document(text)
    unknown = set(doc.fields) - {"title", "ticks_per_quarter"}
    if unknown:
        key = sorted(unknown)[0]
        raise ParseError(f"unknown key {key!r}", doc.lines[key])
    title = doc.fields.get("title", "")
    tpq = doc.fields.get("ticks_per_quarter", DEFAULT_TPQ)
    if not isinstance(title, str):
        raise ParseError("title must be a string", doc.lines["title"])
    if not isinstance(tpq, int) or tpq <= 0:
        raise ParseError("ticks_per_quarter must be a positive integer", doc.lines.get("ticks_per_quarter"))
    events = []
    for block in doc.blocks:
        if block.name != "event":
            raise ParseError(f"unknown block {block.name!r}", block.line)
        extra = set(block.fields) - {"voice", "onset", "duration", "pitch", "velocity"}
        if extra:
            key = sorted(extra)[0]
            raise ParseError(f"unknown event key {key!r}", block.lines[key])
        voice = block.require("voice")
        onset = block.require("onset")
        duration = block.require("duration")
        velocity = block.fields.get("velocity", DEFAULT_VELOCITY)
        pitch = block.fields.get("pitch")
        if not isinstance(voice, str):
            raise ParseError("voice must be a string", block.lines["voice"])
        qt = None
        if pitch is not None:
            if not isinstance(pitch, (int, Fraction)) or (Fraction(pitch) * 2).denominator != 1:
                raise ParseError("pitch must be a whole or half MIDI semitone", block.lines["pitch"])
            qt = int(Fraction(pitch) * 2)
        try:
            events.append(ScoreEvent(voice, Fraction(onset), Fraction(duration), qt, velocity))
        except (DomainError, TypeError) as exc:
            raise ParseError(str(exc), block.line) from None
    return Score(title, tuple(events), tpq)


# -- generators' adapters ------------------------------------------------------


def isorhythm_score(events, voice: str = "tenor", title: str = "isorhythm") -> Score:
    """IsoEvents (MIDI pitches, beats) as a score."""
    return Score(
        title,
        tuple(ScoreEvent(voice, e.onset, e.duration, midi_pitch(e.pitch)) for e in events),
    )


def canon_score(spec, pitches: Sequence[int] | None = None, title: str = "canon") -> Score:
    """One unit-length event per onset of each voice of a canon.

    Voice ``i`` sounds on ``pitches[i]`` (quarter-tone grid); by default the
    voices climb in whole tones from C4.
    """
    events = []
    for i, v in enumerate(spec.voices):
        pitch = pitches[i] if pitches is not None else midi_pitch(60 + 2 * i)
        label = v.label or f"voice {i + 1}"
        for r in v.onsets():
            events.append(ScoreEvent(label, Fraction(r), Fraction(1), pitch))
    return Score(title, tuple(events))


def phase_score(schedule, pitches=(2 * 72, 2 * 67), title: str = "phase") -> Score:
    """Performer A repeats the first pattern; performer B plays each shifted one.

    Cycle ``k`` starts at ``k * T``; each clap lasts one twelfth of the cycle
    or the gap to the next onset, whichever is shorter.
    """
    events = []
    base = schedule[0]
    T = base.cycle_length
    for k, pattern in enumerate(schedule):
        for voice, pat, pitch in (("performer A", base, pitches[0]), ("performer B", pattern, pitches[1])):
            for p in pat.onsets:
                dur = _clap_length(pat, p)
                events.append(ScoreEvent(voice, k * T + p, dur, pitch))
    return Score(title, tuple(events))


def _clap_length(pattern, p: Fraction) -> Fraction:
    T = pattern.cycle_length
    later = [q for q in pattern.onsets if q > p]
    gap = (later[0] - p) if later else (T - p + (pattern.onsets[0] if pattern.onsets else 0))
    return min(T / 12, gap) if gap > 0 else T / 12


def walk_score(steps, beats: Iterable[int] | int = 1, anchor_midi: int = DEFAULT_ANCHOR,
               voice: str = "walk", title: str = "walk") -> Score:
    """Each walk row as base note then result note."""
    beats = list(beats) if not isinstance(beats, int) else [beats] * len(steps)
    events = []
    t = Fraction(0)
    for step, b in zip(steps, beats):
        b = Fraction(b)
        events.append(ScoreEvent(voice, t, b / 2, anchor(step.base, anchor_midi)))
        events.append(ScoreEvent(voice, t + b / 2, b / 2, anchor(step.result, anchor_midi)))
        t += b
    return Score(title, tuple(events))


def merge_scores(title: str, scores: Iterable[Score]) -> Score:
    events = []
    for s in scores:
        events.extend(s.events)
    return Score(title, tuple(events))
