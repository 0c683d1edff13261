"""Glauber dynamics on perimeter-constrained Aztec partitions.

The chain proposes a uniformly random dual vertex and flips its class; the
move is accepted only when the result is again a contiguous partition
inside the perimeter budget, else the chain holds (self-loop).  This
symmetric-proposal variant has a symmetric transition matrix, so the
uniform distribution on the state space is stationary.  Conductance and
the mixing-time lower bound 1/(4*Phi) are computed in exact rational
arithmetic on exhaustively enumerated state spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .aztec import OmegaParams, Partition, anchor_vertex, dual_vertices, _dual_neighbors, _dual_edge_to_primal
from .lattice import Point
from .sampling import RngStream


class _Diamond:
    """Per-order bitmask geometry of the dual diamond."""

    _cache: dict[int, "_Diamond"] = {}

    def __init__(self, k: int):
        self.k = k
        self.verts = sorted(dual_vertices(k))
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.n = len(self.verts)
        self.all_mask = (1 << self.n) - 1
        self.anchor_bit = 1 << self.index[anchor_vertex(k)]
        nbrs = []
        nbr_masks = []
        outside_deg = []
        for v in self.verts:
            row = []
            mask = 0
            od = 0
            for u in _dual_neighbors(v):
                j = self.index.get(u)
                if j is None:
                    od += 1
                else:
                    row.append(j)
                    mask |= 1 << j
            nbrs.append(tuple(row))
            nbr_masks.append(mask)
            outside_deg.append(od)
        self.nbrs = nbrs
        self.nbr_masks = nbr_masks
        self.outside_deg = outside_deg
        # dual edges (i < j) with the primal edge each one crosses
        edges = []
        for i, v in enumerate(self.verts):
            for j in self.nbrs[i]:
                if i < j:
                    edges.append((i, j, _dual_edge_to_primal(v, self.verts[j])))
        self.edges = edges

    @classmethod
    def get(cls, k: int) -> "_Diamond":
        d = cls._cache.get(k)
        if d is None:
            d = cls._cache[k] = _Diamond(k)
        return d

    def connected(self, mask: int) -> bool:
        if mask == 0:
            return False
        comp = frontier = mask & -mask
        nbr_masks = self.nbr_masks
        while frontier:
            grow = 0
            f = frontier
            while f:
                b = f & -f
                grow |= nbr_masks[b.bit_length() - 1]
                f ^= b
            frontier = grow & mask & ~comp
            comp |= frontier
        return comp == mask

    def boundary_size(self, mask: int) -> int:
        total = 0
        m = mask
        inv = ~mask
        while m:
            b = m & -m
            i = b.bit_length() - 1
            total += self.outside_deg[i] + (self.nbr_masks[i] & inv).bit_count()
            m ^= b
        return total

    def mask_of(self, verts) -> int:
        mask = 0
        for v in verts:
            mask |= 1 << self.index[tuple(v)]
        return mask

    def partition_of(self, mask: int) -> Partition:
        if not mask & self.anchor_bit:
            mask = self.all_mask ^ mask
        c1 = frozenset(self.verts[i] for i in range(self.n) if mask >> i & 1)
        c2 = frozenset(self.verts[i] for i in range(self.n) if not mask >> i & 1)
        return Partition(self.k, c1, c2, (self.boundary_size(mask), self.boundary_size(self.all_mask ^ mask)))

    def cut_endpoints(self, mask: int) -> tuple[Point, Point]:
        """Endpoints of the boundary path: odd-degree points of the cut edges."""
        deg: dict[Point, int] = {}
        for i, j, (pa, pb) in self.edges:
            if (mask >> i & 1) != (mask >> j & 1):
                deg[pa] = deg.get(pa, 0) + 1
                deg[pb] = deg.get(pb, 0) + 1
        ends = sorted(p for p, d in deg.items() if d % 2 == 1)
        if len(ends) != 2:
            raise ValueError("cut does not have exactly two endpoints")
        return ends[0], ends[1]


def _flip_valid(d: _Diamond, budget: int, mask: int, b_in: int, b_out: int, v: int) -> tuple[int, int] | None:
    """Boundary sizes after flipping vertex v, or None when the flip is invalid.

    mask is the class currently containing v's side labeling: b_in is the
    boundary of the class that contains v, b_out of the other one.
    """
    bit = 1 << v
    leaving = mask if mask & bit else d.all_mask ^ mask
    joining = d.all_mask ^ leaving
    if leaving == bit:
        return None  # class would become empty
    same = (d.nbr_masks[v] & leaving).bit_count()
    other = (d.nbr_masks[v] & joining).bit_count()
    od = d.outside_deg[v]
    if other == 0:
        return None  # not adjacent to the class it joins
    new_b_leave = b_in - (od + other) + same
    new_b_join = b_out - other + od + same
    if max(new_b_leave, new_b_join) > budget:
        return None
    if same > 1 and not d.connected(leaving ^ bit):
        return None
    return new_b_leave, new_b_join


@dataclass
class ChainState:
    """Mutable Glauber chain state; the current partition is always in Omega."""

    diamond: _Diamond
    params: OmegaParams
    budget: int
    mask: int
    b_mask: int
    b_comp: int
    rng: RngStream
    step: int = 0
    moves: int = 0

    @property
    def partition(self) -> Partition:
        return self.diamond.partition_of(self.mask)

    def endpoints(self) -> tuple[Point, Point]:
        return self.diamond.cut_endpoints(self.mask)


def make_chain(k: int, params: OmegaParams, start: Partition, rng: RngStream) -> ChainState:
    d = _Diamond.get(k)
    if max(start.boundary_sizes) > params.budget(k):
        raise ValueError("start partition outside Omega")
    mask = d.mask_of(start.class1)
    return ChainState(
        diamond=d,
        params=params,
        budget=params.budget(k),
        mask=mask,
        b_mask=start.boundary_sizes[0],
        b_comp=start.boundary_sizes[1],
        rng=rng,
    )


def glauber_step(state: ChainState) -> bool:
    """One proposal; returns True when the chain moved (False on self-loop)."""
    d = state.diamond
    v = state.rng.uniform_int(d.n)
    state.step += 1
    bit = 1 << v
    in_mask = bool(state.mask & bit)
    b_in = state.b_mask if in_mask else state.b_comp
    b_out = state.b_comp if in_mask else state.b_mask
    res = _flip_valid(d, state.budget, state.mask, b_in, b_out, v)
    if res is None:
        return False
    new_b_leave, new_b_join = res
    state.mask ^= bit
    if in_mask:
        state.b_mask, state.b_comp = new_b_leave, new_b_join
    else:
        state.b_comp, state.b_mask = new_b_leave, new_b_join
    state.moves += 1
    return True


def ordered_endpoints(p: Partition) -> bool:
    """The slow cut S: both endpoint coordinates weakly ordered the same way."""
    from .aztec import partition_endpoints

    a, b = partition_endpoints(p)
    return (a.x - b.x) * (a.y - b.y) >= 0


def enumerate_omega(k: int, params: OmegaParams, budget: int | None = None, cap: int = 4) -> list[Partition]:
    """All partitions in Omega, label symmetry quotiented by the anchor vertex."""
    return oracle.enumerate_partitions(k, params, budget=budget, cap=cap).items


@dataclass(frozen=True)
class CutReport:
    """Exact conductance data of one cut of the state space."""

    state_count: int
    cut_size: int
    mass: Fraction
    flow: Fraction
    ratio: Fraction
    mixing_lower_bound: Fraction | None


def conductance_of_cut(omega: list[Partition], params: OmegaParams, cut) -> CutReport:
    """Exact Q(S, S-bar)/pi(S) for the cut selected by the predicate.

    pi is uniform on omega, P(w, w') = 1/|V| per valid single-vertex flip.
    If the selected set has mass above 1/2 its complement is used; an empty
    selection (or empty complement) is an error.
    """
    if not omega:
        raise ValueError("empty state space")
    k = omega[0].k
    d = _Diamond.get(k)
    budget = params.budget(k)
    masks = {}
    for p in omega:
        m = d.mask_of(p.class1)
        if not m & d.anchor_bit:
            m = d.all_mask ^ m
        masks[m] = p
    in_cut = {m: bool(cut(p)) for m, p in masks.items()}
    s_masks = [m for m, f in in_cut.items() if f]
    if 2 * len(s_masks) > len(masks):
        s_masks = [m for m, f in in_cut.items() if not f]
        in_cut = {m: not f for m, f in in_cut.items()}
    if not s_masks:
        raise ValueError("cut selects an empty set (or everything)")
    crossings = 0
    for m in s_masks:
        p = masks[m]
        b1, b2 = p.boundary_sizes
        for v in range(d.n):
            b_in = b1 if m >> v & 1 else b2
            b_out = b2 if m >> v & 1 else b1
            if _flip_valid(d, budget, m, b_in, b_out, v) is None:
                continue
            m2 = m ^ (1 << v)
            if not m2 & d.anchor_bit:
                m2 = d.all_mask ^ m2
            if m2 not in masks:
                raise AssertionError("valid flip left the enumerated state space")
            if not in_cut[m2]:
                crossings += 1
    n = len(masks)
    mass = Fraction(len(s_masks), n)
    flow = Fraction(crossings, n * d.n)
    ratio = flow / mass
    bound = None if ratio == 0 else Fraction(1, 4) / ratio
    return CutReport(n, len(s_masks), mass, flow, ratio, bound)


@dataclass
class ChainTrace:
    """Recorded observables of one chain run."""

    k: int
    steps: int
    crossings: int
    moves: int
    records: list = field(default_factory=list)
    final: Partition | None = None


def run_chain(
    k: int,
    params: OmegaParams,
    steps: int,
    rng: RngStream,
    start: Partition | None = None,
    record_every: int = 1,
) -> ChainTrace:
    """Run the chain, tracking endpoint observables and S <-> S-bar crossings.

    The trace records (step, endpoints, in_S, boundary sizes) every
    record_every steps (plus step 0); crossings of the ordered-endpoints
    cut are counted at every step regardless.
    """
    from .aztec import staircase_partition

    if start is None:
        start = staircase_partition(k)
    state = make_chain(k, params, start, rng)
    d = state.diamond

    def snapshot() -> tuple:
        a, b = state.endpoints()
        return (state.step, (tuple(a), tuple(b)), cur_in_s, (state.b_mask, state.b_comp))

    def in_s_now() -> bool:
        a, b = state.endpoints()
        return (a.x - b.x) * (a.y - b.y) >= 0

    cur_in_s = in_s_now()
    trace = ChainTrace(k=k, steps=steps, crossings=0, moves=0)
    trace.records.append(snapshot())
    for i in range(1, steps + 1):
        moved = glauber_step(state)
        if moved:
            new_in_s = in_s_now()
            if new_in_s != cur_in_s:
                trace.crossings += 1
            cur_in_s = new_in_s
        if i % record_every == 0:
            trace.records.append(snapshot())
    trace.moves = state.moves
    trace.final = state.partition
    return trace


def transition_counts(omega: list[Partition], params: OmegaParams) -> tuple[list[list[int]], int]:
    """Integer transition matrix M with P = M/|V|, over the enumerated space."""
    if not omega:
        raise ValueError("empty state space")
    k = omega[0].k
    d = _Diamond.get(k)
    budget = params.budget(k)
    canon = []
    for p in omega:
        m = d.mask_of(p.class1)
        if not m & d.anchor_bit:
            m = d.all_mask ^ m
        canon.append(m)
    idx = {m: i for i, m in enumerate(canon)}
    n = len(canon)
    mat = [[0] * n for _ in range(n)]
    for i, m in enumerate(canon):
        p = omega[i]
        b1, b2 = p.boundary_sizes
        out = 0
        for v in range(d.n):
            b_in = b1 if m >> v & 1 else b2
            b_out = b2 if m >> v & 1 else b1
            if _flip_valid(d, budget, m, b_in, b_out, v) is None:
                continue
            m2 = m ^ (1 << v)
            if not m2 & d.anchor_bit:
                m2 = d.all_mask ^ m2
            mat[i][idx[m2]] += 1
            out += 1
        mat[i][i] = d.n - out
    return mat, d.n


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _mat_pow(m: list[list[int]], e: int) -> list[list[int]]:
    n = len(m)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = m
    while e:
        if e & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base) if e > 1 else base
        e >>= 1
    return result


def _tv_ok_exact(mat: list[list[int]], vdeg: int, t: int) -> bool:
    """max-over-starts TV(P^t(s,.), uniform) <= 1/4, checked in integers."""
    n = len(mat)
    mt = _mat_pow(mat, t)
    d_tot = vdeg**t
    half = n * d_tot  # compare 2*sum|n*mt - D| <= n*D
    for row in mt:
        s = sum(abs(n * x - d_tot) for x in row)
        if 2 * s > half:
            return False
    return True


def exact_mixing_time(omega: list[Partition], params: OmegaParams, t_cap: int = 200_000) -> int:
    """Smallest t with worst-start total-variation distance <= 1/4, exactly.

    A float iteration locates the candidate step; the verdict at the
    candidate and its predecessor is then certified with exact integer
    matrix powers.
    """
    import numpy as np

    mat, vdeg = transition_counts(omega, params)
    n = len(mat)
    p = np.array(mat, dtype=float) / vdeg
    pt = np.eye(n)
    t = 0
    while t < t_cap:
        pt = pt @ p
        t += 1
        tv = 0.5 * np.abs(pt - 1.0 / n).sum(axis=1).max()
        if tv <= 0.25:
            break
    else:
        raise RuntimeError(f"mixing time exceeds cap {t_cap}")
    # certify exactly, walking the boundary if float was off by a step
    while not _tv_ok_exact(mat, vdeg, t):
        t += 1
    while t > 1 and _tv_ok_exact(mat, vdeg, t - 1):
        t -= 1
    return t
