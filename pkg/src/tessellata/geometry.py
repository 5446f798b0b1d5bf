"""Exact construction of the three-hexagon patch, its kites, and the Hat.

Lengths use the half-side of a hexagon as the unit, so a hexagon has side 2,
circumradius 2 and apothem sqrt(3). Every vertex in the patch lives in
``Q(sqrt 3)``, which keeps closure, area and edge classification exact.

Patch layout (H1 pointy-top at the origin, neighbours one apothem-pair away):

    ======  ==============  ==================================
    id      centre          role
    ======  ==============  ==================================
    H1      (0, 0)          reference hexagon
    H2      (2√3, 0)        shares the side at 0° with H1
    H3      (√3, 3)         shares the side at 60° with H1
    ======  ==============  ==================================

All three meet at the vertex (√3, 1).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvariantError
from .ring import ExactCoord, ZERO

HALF = Fraction(1, 2)

# cos/sin of k*30 degrees, k = 0..11, all in Q(sqrt 3)
_COS = [
    ExactCoord(1),
    ExactCoord(0, HALF),
    ExactCoord(HALF),
    ExactCoord(0),
    ExactCoord(-HALF),
    ExactCoord(0, -HALF),
    ExactCoord(-1),
    ExactCoord(0, -HALF),
    ExactCoord(-HALF),
    ExactCoord(0),
    ExactCoord(HALF),
    ExactCoord(0, HALF),
]
_SIN = [_COS[(k - 3) % 12] for k in range(12)]


@dataclass(frozen=True)
class Point:
    x: ExactCoord
    y: ExactCoord

    @classmethod
    def of(cls, x, y) -> Point:
        return cls(ExactCoord.coerce(x), ExactCoord.coerce(y))

    def __add__(self, other: Point) -> Point:
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point) -> Point:
        return Point(self.x - other.x, self.y - other.y)

    def scale(self, k) -> Point:
        return Point(self.x * k, self.y * k)

    def key(self):
        """Total order usable for deterministic sorting."""
        return (float(self.x), float(self.y), self.x.a, self.x.b, self.y.a, self.y.b)

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)

    def __str__(self):
        return f"({self.x}, {self.y})"


ORIGIN = Point(ZERO, ZERO)


def polar(radius, step30: int) -> Point:
    """Point at ``radius`` and angle ``step30 * 30`` degrees."""
    r = ExactCoord.coerce(radius)
    k = step30 % 12
    return Point(r * _COS[k], r * _SIN[k])


def cross(u: Point, v: Point) -> ExactCoord:
    return u.x * v.y - u.y * v.x


def dot(u: Point, v: Point) -> ExactCoord:
    return u.x * v.x + u.y * v.y


def squared_length(v: Point) -> ExactCoord:
    return dot(v, v)


class SegmentKind(enum.Enum):
    HALF_SIDE = "half_side"
    FULL_SIDE = "full_side"
    APOTHEM = "apothem"
    DOUBLE_APOTHEM = "double_apothem"

    @property
    def squared_length(self) -> int:
        return _KIND_SQ[self]

    @classmethod
    def from_squared_length(cls, sq: ExactCoord) -> SegmentKind:
        if sq.b == 0 and sq.a.denominator == 1:
            kind = _SQ_KIND.get(int(sq.a))
            if kind is not None:
                return kind
        raise InvariantError(f"edge with squared length {sq} is not a lattice segment")


_KIND_SQ = {
    SegmentKind.HALF_SIDE: 1,
    SegmentKind.FULL_SIDE: 4,
    SegmentKind.APOTHEM: 3,
    SegmentKind.DOUBLE_APOTHEM: 12,
}
_SQ_KIND = {v: k for k, v in _KIND_SQ.items()}


@dataclass(frozen=True)
class Hexagon:
    id: str
    center: Point
    orientation: int
    vertices: tuple[Point, ...]

    half_side = 1

    def midpoint(self, j: int) -> Point:
        """Midpoint of the side from vertex ``j`` to vertex ``j + 1``."""
        a, b = self.vertices[j % 6], self.vertices[(j + 1) % 6]
        return (a + b).scale(HALF)

    def sides(self) -> list[tuple[Point, Point]]:
        return [(self.vertices[j], self.vertices[(j + 1) % 6]) for j in range(6)]

    def boundary(self) -> BoundaryPolygon:
        return BoundaryPolygon(self.vertices)


def build_hexagon(id: str, center: Point = ORIGIN, orientation: int = 0) -> Hexagon:
    """Regular hexagon of side 2 around ``center``.

    ``orientation`` is in degrees and must be a multiple of 30; 0 is pointy-top
    (a vertex straight up). Vertices are counterclockwise, starting at the one
    at ``30 + orientation`` degrees.
    """
    if isinstance(orientation, bool) or not isinstance(orientation, int) or orientation % 30:
        raise DomainError(f"orientation must be a multiple of 30 degrees, got {orientation!r}")
    k0 = 1 + orientation // 30
    verts = tuple(center + polar(2, k0 + 2 * j) for j in range(6))
    return Hexagon(id, center, orientation % 360, verts)


@dataclass(frozen=True)
class Kite:
    """One sixth of a hexagon: centre, side midpoint, vertex, next midpoint."""

    vertices: tuple[Point, Point, Point, Point]
    hexagon: str
    index: int

    @property
    def label(self) -> str:
        return f"{self.hexagon}.{self.index}"

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % 4]) for i in range(4)]

    def boundary(self) -> BoundaryPolygon:
        return BoundaryPolygon(self.vertices)


def kite_decomposition(h: Hexagon) -> list[Kite]:
    """The six kites of ``h``; kite ``j`` holds vertex ``j``."""
    kites = []
    for j in range(6):
        verts = (h.center, h.midpoint(j - 1), h.vertices[j], h.midpoint(j))
        kites.append(Kite(verts, h.id, j))
    return kites


H2_CENTER = Point(ExactCoord(0, 2), ExactCoord(0))
H3_CENTER = Point(ExactCoord(0, 1), ExactCoord(3))
COMMON_VERTEX = Point(ExactCoord(0, 1), ExactCoord(1))


def three_hexagon_patch() -> list[Hexagon]:
    return [
        build_hexagon("H1", ORIGIN, 0),
        build_hexagon("H2", H2_CENTER, 0),
        build_hexagon("H3", H3_CENTER, 0),
    ]


def shared_edges(hexagons: list[Hexagon]) -> list[tuple[str, str, tuple[Point, Point]]]:
    """Sides common to two hexagons, matched exactly."""
    out = []
    for i, h in enumerate(hexagons):
        sides_h = {frozenset(s) for s in h.sides()}
        for g in hexagons[i + 1:]:
            for s in g.sides():
                if frozenset(s) in sides_h:
                    out.append((h.id, g.id, s))
    return out


# Kite indices (per hexagon) forming the Hat. Six 4+2+2 selections reproduce
# the Movement V edge-kind cycle; this is the one congruent to the published
# outline (the other congruent one is its mirror). See tests/test_geometry.py.
HAT_KITES = {"H1": (0, 1, 2, 5), "H2": (2, 3), "H3": (4, 5)}
# The only five of the eight Hat kites whose union has a 6-edge outline.
LARGE_KITE_KITES = {"H1": (0, 5), "H2": (2, 3), "H3": (4,)}


def patch_kites(patch: list[Hexagon] | None = None) -> dict[str, list[Kite]]:
    patch = patch if patch is not None else three_hexagon_patch()
    return {h.id: kite_decomposition(h) for h in patch}


def _select(patch, table) -> list[Kite]:
    kites = patch_kites(patch)
    return [kites[hid][j] for hid in ("H1", "H2", "H3") for j in table.get(hid, ())]


def select_hat_kites(patch: list[Hexagon] | None = None) -> list[Kite]:
    return _select(patch, HAT_KITES)


def select_large_kite(patch: list[Hexagon] | None = None) -> list[Kite]:
    return _select(patch, LARGE_KITE_KITES)


@dataclass(frozen=True)
class BoundaryPolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def edge_vectors(self) -> list[Point]:
        return [b - a for a, b in self.edges()]

    def edge_sum(self) -> Point:
        total = ORIGIN
        for e in self.edge_vectors():
            total = total + e
        return total

    def is_closed(self) -> bool:
        return len(self.vertices) >= 3 and self.edge_sum() == ORIGIN

    def edge_kinds(self) -> list[SegmentKind]:
        return classify_edges(self)

    def signed_area(self) -> ExactCoord:
        v = self.vertices
        twice = ZERO
        for i in range(len(v)):
            twice = twice + cross(v[i], v[(i + 1) % len(v)])
        return twice * HALF


def classify_edges(p: BoundaryPolygon) -> list[SegmentKind]:
    return [SegmentKind.from_squared_length(squared_length(e)) for e in p.edge_vectors()]


def kind_counts(p: BoundaryPolygon) -> Counter:
    return Counter(classify_edges(p))


def _orient(a: Point, b: Point, c: Point) -> int:
    return cross(b - a, c - a).sign()


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    # assumes collinear
    return (
        min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def is_simple(p: BoundaryPolygon) -> bool:
    edges = p.edges()
    n = len(edges)
    if n < 3:
        return False
    if len(set(p.vertices)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges share one endpoint; reject folding back
                a, b = edges[i] if j == i + 1 else edges[j]
                c, d = edges[j] if j == i + 1 else edges[i]
                u, w = b - a, d - c
                if cross(u, w).sign() == 0 and dot(u, w).sign() < 0:
                    return False
                continue
            if segments_intersect(*edges[i], *edges[j]):
                return False
    return True


def polygon_area(p: BoundaryPolygon) -> ExactCoord:
    """Exact (unsigned) shoelace area of a closed simple polygon."""
    if len(p.vertices) < 3:
        raise DomainError(f"a polygon needs at least 3 vertices, got {len(p.vertices)}")
    if not p.is_closed():
        raise DomainError("polygon does not close")
    if not is_simple(p):
        raise DomainError("polygon is self-intersecting")
    return abs(p.signed_area())


def _edge_connected(kites: list[Kite]) -> bool:
    if not kites:
        return False
    owners: dict[frozenset, list[int]] = {}
    for i, k in enumerate(kites):
        for a, b in k.edges():
            owners.setdefault(frozenset((a, b)), []).append(i)
    adj = {i: set() for i in range(len(kites))}
    for idx in owners.values():
        for i in idx:
            adj[i].update(j for j in idx if j != i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i] - seen:
            seen.add(j)
            stack.append(j)
    return len(seen) == len(kites)


def merge_collinear(vertices: list[Point]) -> list[Point]:
    """Drop vertices whose incoming and outgoing edges point the same way."""
    out = list(vertices)
    changed = True
    while changed and len(out) > 3:
        changed = False
        n = len(out)
        for i in range(n):
            prev, cur, nxt = out[i - 1], out[i], out[(i + 1) % n]
            u, w = cur - prev, nxt - cur
            if cross(u, w).sign() == 0 and dot(u, w).sign() > 0:
                del out[i]
                changed = True
                break
    return out


def boundary_of(kites: list[Kite]) -> BoundaryPolygon:
    """Counterclockwise outline of an edge-connected union of kites.

    Interior edges cancel as opposite directed pairs; collinear runs of the
    remaining edges are merged. The outline starts at its lowest-leftmost
    vertex (smallest ``(x, y)``).
    """
    kites = list(kites)
    if not kites:
        raise DomainError("no kites given")
    if not _edge_connected(kites):
        raise DomainError("kite union is not edge-connected")
    directed = Counter()
    for k in kites:
        for a, b in k.edges():
            directed[(a, b)] += 1
    for (a, b), c in directed.items():
        if c > 1:
            raise DomainError("kites overlap: an edge is used twice in the same direction")
    boundary = [(a, b) for (a, b) in directed if (b, a) not in directed]
    nxt: dict[Point, Point] = {}
    for a, b in boundary:
        if a in nxt:
            raise DomainError("kite union pinches at a vertex")
        nxt[a] = b
    start = min(nxt, key=Point.key)
    loop = [start]
    cur = nxt[start]
    while cur != start:
        loop.append(cur)
        cur = nxt[cur]
        if len(loop) > len(nxt):
            raise InvariantError("boundary does not close")
    if len(loop) != len(nxt):
        raise DomainError("kite union has holes or several outlines")
    merged = merge_collinear(loop)
    start = min(merged, key=Point.key)
    i = merged.index(start)
    poly = BoundaryPolygon(tuple(merged[i:] + merged[:i]))
    if poly.signed_area().sign() <= 0:
        raise InvariantError("boundary is not counterclockwise")
    return poly


def hat() -> BoundaryPolygon:
    return boundary_of(select_hat_kites())


def large_kite() -> BoundaryPolygon:
    return boundary_of(select_large_kite())


def dump_polygon(p: BoundaryPolygon) -> str:
    """Debug listing: one exact vertex per line with the outgoing edge kind."""
    lines = []
    for v, kind in zip(p.vertices, classify_edges(p)):
        lines.append(f"{v}  -> {kind.value}")
    return "\n".join(lines)
