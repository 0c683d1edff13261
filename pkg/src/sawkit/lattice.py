"""Points, directions, walks, and regions of the square lattice Z^2.

Walks are stored as a start point plus a move string over ``URDL``; the
visited points are recomputed on demand.  Regions are membership
predicates with a handful of built-ins (full lattice, box, explicit point
set); bounded regions additionally expose their finite vertex set so that
boundaries can be computed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

DIRECTIONS = "URDL"

_DISPLACEMENT = {"U": (0, 1), "R": (1, 0), "D": (0, -1), "L": (-1, 0)}
_REVERSE = {"U": "D", "D": "U", "L": "R", "R": "L"}

_WALK_TEXT = re.compile(r"^\((-?\d+),(-?\d+)\)([URDL]*)$")


class Point(NamedTuple):
    x: int
    y: int


def displacement(direction: str) -> tuple[int, int]:
    """Unit displacement of a direction character."""
    try:
        return _DISPLACEMENT[direction]
    except KeyError:
        raise ValueError(f"unknown direction {direction!r}") from None


def reverse(direction: str) -> str:
    """Opposite direction: U<->D, L<->R."""
    try:
        return _REVERSE[direction]
    except KeyError:
        raise ValueError(f"unknown direction {direction!r}") from None


def step(point: Point, direction: str) -> Point:
    """The point one unit step away in the given direction."""
    dx, dy = displacement(direction)
    return Point(point[0] + dx, point[1] + dy)


def manhattan(a: Point, b: Point) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(frozen=True)
class Walk:
    """A lattice walk: a start point and a finite move string over URDL."""

    start: Point
    moves: str = ""

    def __post_init__(self) -> None:
        if not isinstance(self.moves, str) or any(m not in _DISPLACEMENT for m in self.moves):
            raise ValueError("moves must be a string over U, R, D, L")
        object.__setattr__(self, "start", Point(*self.start))

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def end(self) -> Point:
        x, y = self.start
        for m in self.moves:
            dx, dy = _DISPLACEMENT[m]
            x += dx
            y += dy
        return Point(x, y)

    def points(self) -> list[Point]:
        """Visited points A_0..A_len, including the start."""
        x, y = self.start
        pts = [Point(x, y)]
        for m in self.moves:
            dx, dy = _DISPLACEMENT[m]
            x += dx
            y += dy
            pts.append(Point(x, y))
        return pts

    def is_self_avoiding(self) -> bool:
        """True iff all visited points are pairwise distinct."""
        pts = self.points()
        return len(set(pts)) == len(pts)

    def to_text(self) -> str:
        """Canonical text codec: ``(x,y)`` followed by the move string."""
        return f"({self.start.x},{self.start.y}){self.moves}"

    @classmethod
    def from_text(cls, text: str) -> "Walk":
        m = _WALK_TEXT.match(text)
        if m is None:
            raise ValueError(f"not a walk in (x,y)URDL form: {text!r}")
        return cls(Point(int(m.group(1)), int(m.group(2))), m.group(3))


def points_of(walk: Walk) -> list[Point]:
    """Visited point sequence of a walk (length len(walk)+1)."""
    return walk.points()


def is_self_avoiding(walk: Walk) -> bool:
    return walk.is_self_avoiding()


def moves_between(points: list[Point]) -> str:
    """Reconstruct the move string of a point sequence (unit steps required)."""
    out = []
    for a, b in zip(points, points[1:]):
        delta = (b[0] - a[0], b[1] - a[1])
        for m, d in _DISPLACEMENT.items():
            if d == delta:
                out.append(m)
                break
        else:
            raise ValueError(f"points {a} -> {b} are not one lattice step apart")
    return "".join(out)


def walk_through(points: list[Point]) -> Walk:
    """Walk visiting exactly the given unit-step point sequence."""
    if not points:
        raise ValueError("need at least one point")
    return Walk(Point(*points[0]), moves_between([Point(*p) for p in points]))


@dataclass(frozen=True)
class LatticeBox:
    """Axis-aligned integer rectangle {p : lo <= p <= hi} (componentwise)."""

    lo: Point
    hi: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Point(*self.lo))
        object.__setattr__(self, "hi", Point(*self.hi))
        if self.lo.x > self.hi.x or self.lo.y > self.hi.y:
            raise ValueError(f"box corners must satisfy lo <= hi, got {self.lo} > {self.hi}")

    @classmethod
    def spanning(cls, a: Point, b: Point) -> "LatticeBox":
        """Smallest box containing both points (no corner-order requirement)."""
        return cls(Point(min(a[0], b[0]), min(a[1], b[1])), Point(max(a[0], b[0]), max(a[1], b[1])))

    def expand(self, margin: int) -> "LatticeBox":
        return LatticeBox(
            Point(self.lo.x - margin, self.lo.y - margin),
            Point(self.hi.x + margin, self.hi.y + margin),
        )

    def __contains__(self, p: tuple) -> bool:
        return self.lo.x <= p[0] <= self.hi.x and self.lo.y <= p[1] <= self.hi.y

    def points(self) -> Iterator[Point]:
        for x in range(self.lo.x, self.hi.x + 1):
            for y in range(self.lo.y, self.hi.y + 1):
                yield Point(x, y)

    def size(self) -> int:
        return (self.hi.x - self.lo.x + 1) * (self.hi.y - self.lo.y + 1)


class Region:
    """Membership predicate over lattice points.

    Bounded regions report a finite vertex set via :meth:`points` and a
    :meth:`bounding_box`; membership is pure and deterministic.
    """

    bounded: bool = False

    def __contains__(self, p: tuple) -> bool:
        raise NotImplementedError

    def points(self) -> Iterator[Point]:
        raise ValueError("unbounded region has no finite vertex set")

    def bounding_box(self) -> LatticeBox:
        raise ValueError("unbounded region has no bounding box")


class FullLattice(Region):
    """All of Z^2."""

    bounded = False

    def __contains__(self, p: tuple) -> bool:
        return True

    def __repr__(self) -> str:
        return "FullLattice()"


class BoxRegion(Region):
    """Region induced by a lattice box."""

    bounded = True

    def __init__(self, box: LatticeBox):
        self.box = box

    def __contains__(self, p: tuple) -> bool:
        return p in self.box

    def points(self) -> Iterator[Point]:
        return self.box.points()

    def bounding_box(self) -> LatticeBox:
        return self.box

    def __repr__(self) -> str:
        return f"BoxRegion({self.box.lo} .. {self.box.hi})"


class PointSetRegion(Region):
    """Region given by an explicit finite point set."""

    bounded = True

    def __init__(self, pts):
        self._pts = frozenset(Point(*p) for p in pts)
        if not self._pts:
            raise ValueError("point set region must be nonempty")

    def __contains__(self, p: tuple) -> bool:
        return Point(p[0], p[1]) in self._pts

    def points(self) -> Iterator[Point]:
        return iter(sorted(self._pts))

    def bounding_box(self) -> LatticeBox:
        xs = [p.x for p in self._pts]
        ys = [p.y for p in self._pts]
        return LatticeBox(Point(min(xs), min(ys)), Point(max(xs), max(ys)))


def neighbors(p: Point) -> list[Point]:
    return [Point(p[0], p[1] + 1), Point(p[0] + 1, p[1]), Point(p[0], p[1] - 1), Point(p[0] - 1, p[1])]


def boundary(region: Region) -> frozenset[Point]:
    """Member points with at least one of their 4 lattice neighbors outside."""
    if not region.bounded:
        raise ValueError("boundary requires bounded region")
    out = []
    for p in region.points():
        if any(q not in region for q in neighbors(p)):
            out.append(p)
    return frozenset(out)


def boundary_points_in_box(region: Region, box: LatticeBox) -> int:
    """|boundary(region) ∩ box|."""
    return sum(1 for p in boundary(region) if p in box)


def reflect_walk(walk: Walk, flip_x: bool, flip_y: bool) -> Walk:
    """Mirror a walk across the coordinate axes (x -> -x and/or y -> -y)."""
    sx, sy = walk.start
    moves = walk.moves
    if flip_x:
        sx = -sx
        moves = moves.translate(str.maketrans("LR", "RL"))
    if flip_y:
        sy = -sy
        moves = moves.translate(str.maketrans("UD", "DU"))
    return Walk(Point(sx, sy), moves)
