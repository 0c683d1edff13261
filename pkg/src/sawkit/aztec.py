"""Aztec diamond geometry, the partition/path bijection, and Algorithm-4 sampling.

The dual diamond A_k lives at half-integer coordinates; everything here
stores dual vertices in doubled coordinates (odd, odd) so arithmetic stays
integral.  The primal diamond A_k' is the points with |x|+|y| <= k; each
primal edge crosses exactly one interior dual edge, which is what turns a
boundary-to-boundary path into a contiguous 2-partition and back.
"""

from __future__ import annotations

import os
import pickle
from dataclasses import dataclass
from math import floor

from .counting import DEFAULT_MEMORY_CAP, CountTable
from .lattice import LatticeBox, Point, Region, Walk, boundary_points_in_box, manhattan, walk_through
from .sampling import FamilyEntry, RngStream, SampleReport, SamplingBudgetError, make_family, sample_length_then_walk

CACHE_ENV = "SAWKIT_CACHE_DIR"
_CACHE_MAGIC = "sawkit-aztec-table"
_CACHE_VERSION = 1


class AztecRegion(Region):
    """Primal Aztec diamond A_k': integer points with |x|+|y| <= k."""

    bounded = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("diamond order k must be >= 1")
        self.k = k

    def __contains__(self, p: tuple) -> bool:
        return abs(p[0]) + abs(p[1]) <= self.k

    def points(self):
        k = self.k
        for x in range(-k, k + 1):
            r = k - abs(x)
            for y in range(-r, r + 1):
                yield Point(x, y)

    def bounding_box(self) -> LatticeBox:
        k = self.k
        return LatticeBox(Point(-k, -k), Point(k, k))

    def __repr__(self) -> str:
        return f"AztecRegion(k={self.k})"


def aztec_region(k: int) -> AztecRegion:
    return AztecRegion(k)


def boundary_vertices(k: int) -> list[Point]:
    """The 4k primal points with |x|+|y| = k, sorted."""
    out = set()
    for x in range(-k, k + 1):
        y = k - abs(x)
        out.add(Point(x, y))
        out.add(Point(x, -y))
    return sorted(out)


def dual_vertices(k: int) -> frozenset[tuple[int, int]]:
    """Dual diamond vertices in doubled coordinates: odd (a,b), |a|+|b| <= 2k."""
    if k < 1:
        raise ValueError("diamond order k must be >= 1")
    out = []
    for a in range(-2 * k + 1, 2 * k, 2):
        for b in range(-2 * k + 1, 2 * k, 2):
            if abs(a) + abs(b) <= 2 * k:
                out.append((a, b))
    return frozenset(out)


def _dual_neighbors(v: tuple[int, int]):
    a, b = v
    return ((a + 2, b), (a - 2, b), (a, b + 2), (a, b - 2))


def outer_boundary_edge_count(k: int) -> int:
    """Dual-lattice edges leaving V(A_k), by direct scan (equals 8k)."""
    verts = dual_vertices(k)
    return sum(1 for v in verts for u in _dual_neighbors(v) if u not in verts)


def anchor_vertex(k: int) -> tuple[int, int]:
    """Designated dual vertex fixing class-label symmetry (lexicographic min)."""
    return min(dual_vertices(k))


@dataclass(frozen=True)
class Partition:
    """Contiguous 2-partition of the dual diamond; class 1 holds the anchor."""

    k: int
    class1: frozenset
    class2: frozenset
    boundary_sizes: tuple[int, int]


def _connected(verts: frozenset) -> bool:
    if not verts:
        return False
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in _dual_neighbors(v):
            if u in verts and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(verts)


def _boundary_size(cls: frozenset) -> int:
    total = 0
    for v in cls:
        for u in _dual_neighbors(v):
            if u not in cls:
                total += 1
    return total


def make_partition(k: int, class1_vertices) -> Partition:
    """Validated partition from one class's vertex set (doubled coordinates)."""
    verts = dual_vertices(k)
    c1 = frozenset(tuple(v) for v in class1_vertices)
    if not c1 <= verts:
        raise ValueError("class vertices must lie in the dual diamond")
    c2 = verts - c1
    if not c1 or not c2:
        raise ValueError("both classes must be nonempty")
    if not _connected(c1) or not _connected(c2):
        raise ValueError("both classes must be connected")
    if anchor_vertex(k) not in c1:
        c1, c2 = c2, c1
    return Partition(k, c1, c2, (_boundary_size(c1), _boundary_size(c2)))


def edge_boundary_size(p: Partition, class_id: int) -> int:
    """Dual edges from the given class (1 or 2) to everything else."""
    if class_id not in (1, 2):
        raise ValueError("class_id must be 1 or 2")
    return p.boundary_sizes[class_id - 1]


def _crossed_dual_edge(p: Point, q: Point) -> tuple[tuple[int, int], tuple[int, int]]:
    """The dual edge crossed by primal edge p-q (doubled coordinates)."""
    if q < p:
        p, q = q, p
    if q == (p[0] + 1, p[1]):
        return ((2 * p[0] + 1, 2 * p[1] - 1), (2 * p[0] + 1, 2 * p[1] + 1))
    if q == (p[0], p[1] + 1):
        return ((2 * p[0] - 1, 2 * p[1] + 1), (2 * p[0] + 1, 2 * p[1] + 1))
    raise ValueError(f"{p} and {q} are not lattice neighbors")


def _dual_edge_to_primal(u: tuple[int, int], v: tuple[int, int]) -> tuple[Point, Point]:
    """The primal edge crossing dual edge u-v."""
    if v < u:
        u, v = v, u
    a, b = u
    if v == (a + 2, b):
        return (Point((a + 1) // 2, (b - 1) // 2), Point((a + 1) // 2, (b + 1) // 2))
    if v == (a, b + 2):
        return (Point((a - 1) // 2, (b + 1) // 2), Point((a + 1) // 2, (b + 1) // 2))
    raise ValueError(f"{u} and {v} are not dual neighbors")


def path_to_partition(k: int, walk: Walk) -> Partition:
    """Partition induced by cutting every dual edge the walk crosses.

    The walk must be a self-avoiding path in A_k' with both endpoints on
    the boundary; removal of the crossed dual edges must leave exactly two
    components, which become the classes.
    """
    pts = walk.points()
    if len(pts) < 2:
        raise ValueError("walk must have at least one edge")
    region = aztec_region(k)
    if any(p not in region for p in pts):
        raise ValueError("walk leaves the diamond")
    if not walk.is_self_avoiding():
        raise ValueError("walk must be self-avoiding")
    for endpoint in (pts[0], pts[-1]):
        if abs(endpoint.x) + abs(endpoint.y) != k:
            raise ValueError(f"endpoint {endpoint} not on the diamond boundary")
    cut = {frozenset(_crossed_dual_edge(p, q)) for p, q in zip(pts, pts[1:])}
    verts = dual_vertices(k)
    comps = []
    unseen = set(verts)
    while unseen:
        v0 = unseen.pop()
        comp = {v0}
        stack = [v0]
        while stack:
            v = stack.pop()
            for u in _dual_neighbors(v):
                if u in unseen and frozenset((v, u)) not in cut:
                    unseen.discard(u)
                    comp.add(u)
                    stack.append(u)
        comps.append(comp)
        if len(comps) > 2:
            raise ValueError("walk does not induce a 2-partition")
    if len(comps) != 2:
        raise ValueError("walk does not induce a 2-partition")
    c1 = frozenset(comps[0])
    c2 = frozenset(comps[1])
    if anchor_vertex(k) not in c1:
        c1, c2 = c2, c1
    return Partition(k, c1, c2, (_boundary_size(c1), _boundary_size(c2)))


def partition_to_path(p: Partition) -> Walk:
    """The boundary path of a partition, oriented from its smaller endpoint.

    The between-class dual edges are mapped to the primal edges crossing
    them; those edges must form a single simple path, else the partition is
    not path-representable and a ValueError is raised.
    """
    edges = []
    for v in p.class1:
        for u in _dual_neighbors(v):
            if u in p.class2:
                edges.append(_dual_edge_to_primal(v, u))
    if not edges:
        raise ValueError("no between-class edges")
    adj: dict[Point, list[Point]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    ends = sorted(q for q, nb in adj.items() if len(nb) == 1)
    if len(ends) != 2 or any(len(nb) > 2 for nb in adj.values()):
        raise ValueError("between-class edges do not form a single path")
    cur = ends[0]
    prev = None
    pts = [cur]
    while cur != ends[1]:
        nxt = [q for q in adj[cur] if q != prev]
        if len(nxt) != 1:
            raise ValueError("between-class edges do not form a single path")
        prev, cur = cur, nxt[0]
        pts.append(cur)
    if len(pts) != len(edges) + 1:
        raise ValueError("between-class edges do not form a single path")
    return walk_through(pts)


def partition_endpoints(p: Partition) -> tuple[Point, Point]:
    """Endpoints of the partition's boundary path (sorted)."""
    walk = partition_to_path(p)
    a, b = walk.start, walk.end
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class OmegaParams:
    """Perimeter slack parameters: budget(k) = 6k + floor(C * k^(1-eps))."""

    C: float
    eps: float

    def __post_init__(self) -> None:
        if self.C <= 0:
            raise ValueError("C must be positive")
        if not 0 < self.eps <= 1:
            raise ValueError("eps must lie in (0, 1]")

    def slack(self, k: int) -> int:
        return floor(self.C * k ** (1 - self.eps))

    def budget(self, k: int) -> int:
        return 6 * k + self.slack(k)


def in_omega(p: Partition, params: OmegaParams) -> bool:
    """True iff both class boundaries fit the 6k + slack budget."""
    return max(p.boundary_sizes) <= params.budget(p.k)


@dataclass(frozen=True)
class WidthReport:
    """Boundary-width certificate for one endpoint pair."""

    k: int
    ell: int
    bound: int
    boundary_points: int
    admissible: bool

    @property
    def certified(self) -> bool:
        return self.admissible and self.boundary_points <= self.bound


def _omega_admissible(k: int, slack: int, p1: Point, p2: Point) -> bool:
    """Nearly-antipodal endpoint condition under which the width bound applies."""
    for fx in (1, -1):
        for fy in (1, -1):
            for a, b in ((p1, p2), (p2, p1)):
                hx, hy = a.x * fx, a.y * fy
                lx, ly = b.x * fx, b.y * fy
                if hx < 0 or hy < 0:
                    continue
                if lx <= 0 and ly <= 0 and abs(lx + hx) + abs(ly + hy) <= slack + 1:
                    return True
                if lx <= 0 <= ly and abs(hy - ly) <= slack:
                    return True
                if ly <= 0 <= lx and abs(hx - lx) <= slack:
                    return True
    return False


def width_certificate(k: int, params: OmegaParams, p1: Point, p2: Point, ell: int) -> WidthReport:
    """Check that paths of length dist+2*ell meet few boundary points.

    The enlarged lattice box spanned by the endpoints, padded by ell, must
    contain at most 16*ell + 4*slack boundary points of A_k'; the bound is
    claimed only for omega-admissible (nearly antipodal or nearly aligned)
    endpoint pairs, and the report says whether the pair qualifies.
    """
    p1, p2 = Point(*p1), Point(*p2)
    region = aztec_region(k)
    for q in (p1, p2):
        if abs(q.x) + abs(q.y) != k:
            raise ValueError(f"endpoint {q} not on the diamond boundary")
    slack = params.slack(k)
    box = LatticeBox.spanning(p1, p2).expand(ell)
    count = boundary_points_in_box(region, box)
    return WidthReport(
        k=k,
        ell=ell,
        bound=16 * ell + 4 * slack,
        boundary_points=count,
        admissible=_omega_admissible(k, slack, p1, p2),
    )


def staircase_partition(k: int) -> Partition:
    """Partition cut by the antipodal staircase path (the canonical start state)."""
    a = (k + 1) // 2
    b = k // 2
    moves = "RU" * (2 * b) + "R" * (2 * a - 2 * b)
    walk = Walk(Point(-a, -b), moves)
    return path_to_partition(k, walk)


# -- Algorithm-4 sampling -------------------------------------------------------


def _cache_path(cache_dir: str, k: int, girth: int, budget: int, target: Point) -> str:
    return os.path.join(cache_dir, f"aztec-k{k}-l{girth}-b{budget}-t{target.x}_{target.y}.pkl")


def _load_cached_table(path: str, region: AztecRegion, target: Point, girth: int, lengths) -> CountTable | None:
    try:
        with open(path, "rb") as fh:
            payload = pickle.load(fh)
    except (OSError, pickle.PickleError, EOFError):
        return None
    header = payload.get("header", {})
    if (
        header.get("magic") != _CACHE_MAGIC
        or header.get("version") != _CACHE_VERSION
        or header.get("k") != region.k
        or header.get("girth") != girth
        or tuple(header.get("lengths", ())) != tuple(lengths)
        or tuple(header.get("endpoint", ())) != tuple(target)
    ):
        return None
    table = CountTable(region, target, girth, lengths, layers=payload["layers"])
    return table


def _store_cached_table(path: str, table: CountTable, budget: int) -> None:
    payload = {
        "header": {
            "magic": _CACHE_MAGIC,
            "version": _CACHE_VERSION,
            "k": table.region.k,
            "girth": table.girth,
            "budget": budget,
            "lengths": table.lengths,
            "endpoint": tuple(table.target),
        },
        "layers": table.export_layers(),
    }
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)
    os.replace(tmp, path)


def partition_family(
    k: int,
    params: OmegaParams,
    girth: int,
    *,
    cache_dir: str | None = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> list[FamilyEntry]:
    """All (endpoint pair, length) cells with their exact walk counts.

    One all-sources table is built per target endpoint and reused across
    every start; per-table layers are cached on disk when a cache dir is
    configured.  Walk lengths run up to 2k + slack, the largest cut a
    partition inside the budget can have.
    """
    region = aztec_region(k)
    slack = params.slack(k)
    budget = params.budget(k)
    max_len = 2 * k + slack
    lengths = tuple(t for t in range(2, max_len + 1) if t % 2 == 0)
    if not lengths:
        raise ValueError("length budget below the shortest possible cut")
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
    bpts = boundary_vertices(k)
    raw_entries = []
    for target in bpts:
        table = None
        path = _cache_path(cache_dir, k, girth, budget, target) if cache_dir else None
        if path:
            table = _load_cached_table(path, region, target, girth, lengths)
        if table is None:
            table = CountTable(region, target, girth, lengths, memory_cap=memory_cap)
            if path:
                _store_cached_table(path, table, budget)
        for start in bpts:
            if start >= target:
                continue
            d = manhattan(start, target)
            for t in range(d, max_len + 1, 2):
                raw_entries.append(((tuple(start), tuple(target)), table, start, t))
    return make_family(raw_entries)


def sample_partition(
    k: int,
    params: OmegaParams,
    girth: int,
    rng: RngStream,
    *,
    family: list[FamilyEntry] | None = None,
    max_attempts: int = 10000,
    cache_dir: str | None = None,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> tuple[Partition, SampleReport]:
    """One exactly-uniform partition from Omega, by proportional draw + rejection.

    Draws (endpoint pair, length) proportional to the girth-restricted walk
    count, samples a walk, and rejects non-self-avoiding walks, walks that
    do not induce a 2-partition, and partitions over budget.  Each accepted
    partition corresponds to exactly one (pair, length, walk) triple, so
    acceptance leaves the uniform distribution on Omega.
    """
    if family is None:
        family = partition_family(k, params, girth, cache_dir=cache_dir, memory_cap=memory_cap)
    for attempt in range(1, max_attempts + 1):
        _, walk = sample_length_then_walk(family, rng)
        if not walk.is_self_avoiding():
            continue
        try:
            part = path_to_partition(k, walk)
        except ValueError:
            continue
        if not in_omega(part, params):
            continue
        return part, SampleReport(len(walk), attempt, walk)
    raise SamplingBudgetError(max_attempts, f"no partition accepted in {max_attempts} attempts (k={k})")
