"""Exact models of musical tilings: rhythmic canons over Z/n, isorhythm,
phase shifting, the Hat monotile on a hexagon patch, and quarter-tone
pitch walks along its outline, with score, SVG and MIDI output."""

from .errors import (
    CapacityError,
    DomainError,
    InvariantError,
    ParseError,
    SearchLimitError,
    TessellataError,
)
from .ring import ExactCoord

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "ExactCoord",
    "InvariantError",
    "ParseError",
    "SearchLimitError",
    "TessellataError",
    "__version__",
]
