"""Brute-force enumerators and statistical testers.

Everything here is intentionally naive: depth-first enumeration with
visited-set pruning, in the fixed move order U, R, D, L so output is
deterministic and diffable.  These are the ground truth the dynamic
program and the samplers are tested against.  Caps are hard errors, never
silent truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .lattice import FullLattice, Point, Region, Walk

_MOVES = (("U", 0, 1), ("R", 1, 0), ("D", 0, -1), ("L", -1, 0))

DEFAULT_WALK_CAP = 16
DEFAULT_PARTITION_CAP = 4


@dataclass
class EnumerationResult:
    """Outcome of an exhaustive enumeration."""

    instance: dict
    items: list = field(repr=False)
    count: int = 0

    def __post_init__(self) -> None:
        self.count = len(self.items)


def _check_cap(length: int, cap: int) -> None:
    if length > cap:
        raise ValueError(f"enumeration length {length} exceeds cap {cap}")


def _walk_dfs(
    region: Region,
    start: Point,
    end: Point,
    length: int,
    admit: Callable[[list[Point], tuple[int, int]], bool],
) -> list[str]:
    """Shared DFS core; ``admit(pts, candidate)`` filters each extension."""
    full = isinstance(region, FullLattice)
    contains = region.__contains__
    ex, ey = end
    out: list[str] = []
    moves: list[str] = []
    pts: list[tuple[int, int]] = [(start[0], start[1])]

    def rec() -> None:
        x, y = pts[-1]
        rem = length - len(moves)
        if rem == 0:
            if x == ex and y == ey:
                out.append("".join(moves))
            return
        gap = abs(x - ex) + abs(y - ey) - rem
        if gap > 0 or gap % 2:
            return
        for m, dx, dy in _MOVES:
            np_ = (x + dx, y + dy)
            if not full and not contains(np_):
                continue
            if not admit(pts, np_):
                continue
            pts.append(np_)
            moves.append(m)
            rec()
            pts.pop()
            moves.pop()

    rec()
    return out


def enumerate_walks(
    region: Region, start: Point, end: Point, length: int, cap: int = DEFAULT_WALK_CAP
) -> EnumerationResult:
    """All length-`length` walks start -> end inside the region (revisits allowed)."""
    _check_cap(length, cap)
    moves = _walk_dfs(region, start, end, length, lambda pts, np_: True)
    return EnumerationResult(
        {"kind": "walks", "start": tuple(start), "end": tuple(end), "length": length},
        [Walk(Point(*start), m) for m in moves],
    )


def enumerate_saws(
    region: Region, start: Point, end: Point, length: int, cap: int = DEFAULT_WALK_CAP
) -> EnumerationResult:
    """All self-avoiding walks start -> end of exactly the given length."""
    _check_cap(length, cap)

    def admit(pts: list[tuple[int, int]], np_: tuple[int, int]) -> bool:
        return np_ not in pts

    moves = _walk_dfs(region, start, end, length, admit)
    return EnumerationResult(
        {"kind": "saw", "start": tuple(start), "end": tuple(end), "length": length},
        [Walk(Point(*start), m) for m in moves],
    )


def enumerate_low_girth_walks(
    region: Region,
    start: Point,
    end: Point,
    length: int,
    girth: int,
    cap: int = DEFAULT_WALK_CAP,
) -> EnumerationResult:
    """Walks with no revisit within 2*girth steps (no cycle of length <= 2*girth)."""
    _check_cap(length, cap)
    if girth < 1:
        raise ValueError("girth parameter must be >= 1")
    window = 2 * girth + 1  # checking one extra point is harmless by parity

    def admit(pts: list[tuple[int, int]], np_: tuple[int, int]) -> bool:
        lo = len(pts) - window
        if lo < 0:
            lo = 0
        for j in range(lo, len(pts)):
            if pts[j] == np_:
                return False
        return True

    moves = _walk_dfs(region, start, end, length, admit)
    return EnumerationResult(
        {
            "kind": "low-girth",
            "start": tuple(start),
            "end": tuple(end),
            "length": length,
            "girth": girth,
        },
        [Walk(Point(*start), m) for m in moves],
    )


def enumerate_partitions(k: int, params, budget: int | None = None, cap: int = DEFAULT_PARTITION_CAP):
    """All contiguous 2-partitions of the order-k Aztec diamond meeting the budget.

    Exhaustive subset enumeration is used through k = 2; for k = 3, 4 the
    partitions are enumerated through their boundary paths, which is
    exhaustive over the same set whenever the perimeter budget is below 8k
    (the budget excludes partitions whose cut does not reach the outer
    boundary).  Both engines agree at k <= 2 (tested).
    """
    from . import aztec

    if k > cap:
        raise ValueError(f"exhaustive partition enumeration capped at k={cap}")
    if budget is None:
        budget = params.budget(k)
    if k <= 2:
        items = _partitions_by_subsets(k, budget)
    else:
        if budget >= 8 * k:
            raise ValueError("path-based enumeration requires budget < 8k")
        items = _partitions_by_paths(k, budget)
    items.sort(key=lambda p: sorted(p.class1))
    return EnumerationResult({"kind": "partitions", "k": k, "budget": budget}, items)


def _partitions_by_subsets(k: int, budget: int):
    from . import aztec

    verts = sorted(aztec.dual_vertices(k))
    anchor = verts[0]
    rest = [v for v in verts if v != anchor]
    items = []
    for bits in range(2 ** len(rest)):
        class1 = {anchor}
        for i, v in enumerate(rest):
            if bits >> i & 1:
                class1.add(v)
        if len(class1) == len(verts):
            continue
        try:
            part = aztec.make_partition(k, class1)
        except ValueError:
            continue
        if max(part.boundary_sizes) <= budget:
            items.append(part)
    return items


def _partitions_by_paths(k: int, budget: int):
    from . import aztec

    region = aztec.aztec_region(k)
    bpts = sorted(aztec.boundary_vertices(k))
    max_len = budget - 4 * k  # cut length + larger outer share (>= 4k) <= budget
    seen = set()
    items = []
    for i, s in enumerate(bpts):
        for t in bpts[i + 1 :]:
            for length in range(abs(s[0] - t[0]) + abs(s[1] - t[1]), max_len + 1, 2):
                for walk in enumerate_saws(region, s, t, length, cap=max_len).items:
                    try:
                        part = aztec.path_to_partition(k, walk)
                    except ValueError:
                        continue
                    if max(part.boundary_sizes) <= budget and part.class1 not in seen:
                        seen.add(part.class1)
                        items.append(part)
    return items


def uniformity_test(samples: Sequence, support: Iterable) -> dict:
    """Frequency diagnostics of samples against a finite uniform support.

    Returns per-element deviations in sigma units, the worst deviation, and
    a chi-square statistic with |support|-1 degrees of freedom.  A sample
    outside the support is a hard failure (it indicates a sampler bug, not
    bad luck).
    """
    support = list(support)
    if not support:
        raise ValueError("support must be nonempty")
    idx = {s: i for i, s in enumerate(support)}
    counts = [0] * len(support)
    outside = []
    for s in samples:
        i = idx.get(s)
        if i is None:
            outside.append(s)
        else:
            counts[i] += 1
    if outside:
        raise ValueError(f"{len(outside)} samples outside the support, e.g. {outside[0]!r}")
    n = len(samples)
    p = 1.0 / len(support)
    sigma = math.sqrt(p * (1.0 - p) / n) if n else float("inf")
    devs = [abs(c / n - p) / sigma for c in counts] if n else [0.0] * len(support)
    expected = n * p
    chi2 = sum((c - expected) ** 2 / expected for c in counts) if n else 0.0
    dof = len(support) - 1
    if dof > 0 and n:
        from scipy.stats import chi2 as chi2_dist

        p_value = float(chi2_dist.sf(chi2, dof))
    else:
        p_value = 1.0
    return {
        "n": n,
        "support_size": len(support),
        "counts": counts,
        "max_dev_sigmas": max(devs) if devs else 0.0,
        "chi2": chi2,
        "dof": dof,
        "p_value": p_value,
    }
