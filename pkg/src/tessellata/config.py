"""Optional TOML configuration for the command line.

Recognised keys (all optional)::

    velocity = 96            # default note velocity
    bend_range = 2           # MIDI pitch-bend range in semitones
    search_bound = 40        # largest modulus for complement search

    [anchor]                 # MIDI note where each voice's octave starts
    default = 60
    violin = 67

    [palette]                # SVG colour per voice
    "Voice 1" = "#1f77b4"

``TESSELLATA_SEARCH_BOUND`` in the environment overrides ``search_bound``.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .errors import DomainError, ParseError
from .rhythm import DEFAULT_SEARCH_BOUND
from .score import DEFAULT_ANCHOR, DEFAULT_VELOCITY


@dataclass
class Config:
    velocity: int = DEFAULT_VELOCITY
    bend_range: int = 2
    search_bound: int = DEFAULT_SEARCH_BOUND
    anchors: dict[str, int] = field(default_factory=dict)
    palette: dict[str, str] = field(default_factory=dict)

    def anchor_for(self, voice: str) -> int:
        return self.anchors.get(voice, self.anchors.get("default", DEFAULT_ANCHOR))


def _int(data, key, lo, hi):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
        raise DomainError(f"config key {key!r} must be an integer in {lo}..{hi}")
    return value


def parse_config(text: str) -> Config:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"config: {exc}") from None
    known = {"velocity", "bend_range", "search_bound", "anchor", "palette"}
    extra = set(data) - known
    if extra:
        raise DomainError(f"unknown config key {sorted(extra)[0]!r}")
    cfg = Config()
    if "velocity" in data:
        cfg.velocity = _int(data, "velocity", 1, 127)
    if "bend_range" in data:
        cfg.bend_range = _int(data, "bend_range", 1, 24)
    if "search_bound" in data:
        cfg.search_bound = _int(data, "search_bound", 1, 10_000)
    for voice, note in data.get("anchor", {}).items():
        if isinstance(note, bool) or not isinstance(note, int) or not 0 <= note <= 116:
            raise DomainError(f"anchor for {voice!r} must be a MIDI note in 0..116")
        cfg.anchors[voice] = note
    for voice, color in data.get("palette", {}).items():
        if not isinstance(color, str):
            raise DomainError(f"palette colour for {voice!r} must be a string")
        cfg.palette[voice] = color
    return cfg


def load_config(path: str | Path | None) -> Config:
    if path is None:
        return Config()
    return parse_config(Path(path).read_text(encoding="utf-8"))
