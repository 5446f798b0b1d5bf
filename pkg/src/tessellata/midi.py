"""Standard MIDI File (format 0) writer with quarter-tone pitch bends.

Each note-on is preceded by a pitch-bend on its channel. The bend range is
declared at the start of the track with registered parameter 0 (default
±2 semitones), so one quarter-tone is ``8192 / (2 * range)`` bend units.
Notes whose bends clash are spread round-robin over channels 0-14.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, DomainError
from .score import Score

CHANNELS = tuple(range(15))
BEND_CENTER = 8192
DEFAULT_BEND_RANGE = 2
TEMPO_US_PER_QUARTER = 500_000


def varlen(value: int) -> bytes:
    if value < 0:
        raise ValueError("variable-length quantity must be non-negative")
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def bend_value(quarter_tones: int, bend_range: int = DEFAULT_BEND_RANGE) -> int:
    """14-bit bend for an offset of ``quarter_tones`` under ±``bend_range`` semitones."""
    value = BEND_CENTER + Fraction(quarter_tones * 4096, bend_range)
    if value.denominator != 1:
        raise DomainError(f"bend range {bend_range} cannot express {quarter_tones} quarter-tones exactly")
    value = int(value)
    if not 0 <= value <= 0x3FFF:
        raise DomainError(f"{quarter_tones} quarter-tones is outside the ±{bend_range} bend range")
    return value


def to_ticks(beats: Fraction, tpq: int) -> int:
    return round(Fraction(beats) * tpq)


@dataclass(frozen=True)
class NotePlan:
    start: int
    end: int
    channel: int
    note: int
    bend: int
    velocity: int


def plan_notes(score: Score, bend_range: int = DEFAULT_BEND_RANGE) -> list[NotePlan]:
    """Quantize pitched events and assign each one a channel."""
    tpq = score.ticks_per_quarter
    pending = []
    for e in score.events:
        if e.pitch is None:
            continue
        note, quarter = divmod(e.pitch, 2)
        if not 0 <= note <= 127:
            raise DomainError(f"pitch {Fraction(e.pitch, 2)} is outside the MIDI range")
        start = to_ticks(e.onset, tpq)
        end = max(to_ticks(e.end, tpq), start + 1)
        pending.append((start, end, note, bend_value(quarter, bend_range), e.velocity))

    active: dict[int, list[tuple[int, int, int]]] = {ch: [] for ch in CHANNELS}
    cursor = 0
    plans = []
    for start, end, note, bend, vel in pending:
        chosen = None
        for step in range(len(CHANNELS)):
            ch = CHANNELS[(cursor + step) % len(CHANNELS)]
            sounding = [a for a in active[ch] if a[0] > start]
            active[ch] = sounding
            if all(b == bend and n != note for _, n, b in sounding):
                chosen = ch
                break
        if chosen is None:
            raise CapacityError(
                f"more than {len(CHANNELS)} simultaneous distinct bends at tick {start}"
            )
        active[chosen].append((end, note, bend))
        cursor = (CHANNELS.index(chosen) + 1) % len(CHANNELS)
        plans.append(NotePlan(start, end, chosen, note, bend, vel))
    return plans


def _rpn_bend_range(ch: int, semitones: int) -> list[bytes]:
    cc = 0xB0 | ch
    return [
        bytes((cc, 101, 0)),
        bytes((cc, 100, 0)),
        bytes((cc, 6, semitones)),
        bytes((cc, 38, 0)),
        bytes((cc, 101, 127)),
        bytes((cc, 100, 127)),
    ]


def write_midi(score: Score, bend_range: int = DEFAULT_BEND_RANGE) -> bytes:
    if not 1 <= bend_range <= 24:
        raise DomainError("bend range must be 1..24 semitones")
    plans = plan_notes(score, bend_range)

    # (tick, priority, sequence, message); offs before bends before ons
    timed: list[tuple[int, int, int, bytes]] = []
    name = score.title.encode("utf-8")
    timed.append((0, 0, 0, b"\xff\x03" + varlen(len(name)) + name))
    timed.append((0, 0, 1, b"\xff\x51\x03" + TEMPO_US_PER_QUARTER.to_bytes(3, "big")))
    used = sorted({p.channel for p in plans})
    seq = 2
    for ch in used:
        for msg in _rpn_bend_range(ch, bend_range):
            timed.append((0, 1, seq, msg))
            seq += 1
    for p in plans:
        seq += 1
        lsb, msb = p.bend & 0x7F, p.bend >> 7
        timed.append((p.start, 3, seq, bytes((0xE0 | p.channel, lsb, msb))))
        timed.append((p.start, 4, seq, bytes((0x90 | p.channel, p.note, p.velocity))))
        timed.append((p.end, 2, seq, bytes((0x80 | p.channel, p.note, 0))))
    timed.sort(key=lambda x: x[:3])

    track = bytearray()
    now = 0
    for tick, _, _, msg in timed:
        track += varlen(tick - now) + msg
        now = tick
    track += b"\x00\xff\x2f\x00"

    header = b"MThd" + struct.pack(">IHHH", 6, 0, 1, score.ticks_per_quarter)
    return header + b"MTrk" + struct.pack(">I", len(track)) + bytes(track)


def read_events(data: bytes) -> list[tuple[int, bytes]]:
    """Absolute-tick channel and meta messages of a file written by :func:`write_midi`.

    Only the subset this module emits is understood (no running status, no sysex).
    """
    if data[:4] != b"MThd":
        raise DomainError("not a MIDI file")
    (hlen,) = struct.unpack(">I", data[4:8])
    pos = 8 + hlen
    if data[pos:pos + 4] != b"MTrk":
        raise DomainError("missing track chunk")
    (tlen,) = struct.unpack(">I", data[pos + 4:pos + 8])
    pos += 8
    stop = pos + tlen
    tick = 0
    out = []
    while pos < stop:
        delta = 0
        while True:
            byte = data[pos]
            pos += 1
            delta = (delta << 7) | (byte & 0x7F)
            if not byte & 0x80:
                break
        tick += delta
        status = data[pos]
        if status == 0xFF:
            length, q = 0, pos + 2
            while True:
                byte = data[q]
                q += 1
                length = (length << 7) | (byte & 0x7F)
                if not byte & 0x80:
                    break
            msg = data[pos:q + length]
        elif status >> 4 in (0x8, 0x9, 0xB, 0xE):
            msg = data[pos:pos + 3]
        else:
            raise DomainError(f"unsupported status byte {status:#x}")
        out.append((tick, bytes(msg)))
        pos += len(msg)
    return out
