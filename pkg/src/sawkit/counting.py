"""Exact DP counts of girth-restricted walks over a region.

States are keyed by (point, suffix window, remaining steps).  The suffix
window is the move sequence of the most recent min(2l, steps-taken) steps,
canonically encoded; stepping onto any window point is forbidden, which on
the bipartite lattice forbids exactly the cycles of length <= 2l.

The table is filled iteratively by remaining-steps layer (layer t reads
only layer t-1), with states pruned to those reachable within the length
budget.  Counts are exact Python integers; an absent key in a completed
layer means a computed zero.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left

from .lattice import LatticeBox, Point, Region, manhattan

MOVE_CHARS = "URDL"
_DX = (0, 1, 0, -1)
_DY = (1, 0, -1, 0)

DEFAULT_MEMORY_CAP = 2 * 1024**3


class ResourceLimitError(RuntimeError):
    """Estimated table size exceeds the configured memory cap."""


class TableDomainError(ValueError):
    """Query for a state the table does not cover (not reachable in budget)."""


class WindowAutomaton:
    """Transition tables over all canonical suffix windows for one girth value.

    Windows are tuples of move codes (U=0, R=1, D=2, L=3) of length 0..2l
    whose spanned points are pairwise distinct.  Transitions are relative,
    so collision checks are position-independent.
    """

    def __init__(self, girth: int):
        if girth < 1:
            raise ValueError("girth parameter must be >= 1")
        self.girth = girth
        self.max_moves = 2 * girth
        windows: list[tuple[int, ...]] = []
        frontier = [()]
        windows.append(())
        for _ in range(self.max_moves):
            nxt = []
            for w in frontier:
                for d in range(4):
                    w2 = w + (d,)
                    if self._self_avoiding(w2):
                        nxt.append(w2)
            windows.extend(nxt)
            frontier = nxt
        windows.sort(key=lambda w: (len(w), w))
        self.windows = windows
        self.index = {w: i for i, w in enumerate(windows)}
        self.offsets = [self._offsets(w) for w in windows]
        by_length: dict[int, list[int]] = {}
        for i, w in enumerate(windows):
            by_length.setdefault(len(w), []).append(i)
        self.by_length = {m: tuple(v) for m, v in by_length.items()}
        # trans[wid] = ((d, next_wid) for each non-colliding direction d)
        trans = []
        step_map = []
        for w in windows:
            offs = set(self._offsets(w))
            row = []
            smap = [-1, -1, -1, -1]
            for d in range(4):
                if (_DX[d], _DY[d]) in offs:
                    continue
                w2 = w + (d,)
                if len(w2) > self.max_moves:
                    w2 = w2[1:]
                nid = self.index[w2]
                row.append((d, nid))
                smap[d] = nid
            trans.append(tuple(row))
            step_map.append(tuple(smap))
        self.trans = trans
        self.step_map = step_map
        self.empty_id = self.index[()]

    @staticmethod
    def _offsets(w: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
        """Window points relative to the end point, newest (0,0) first."""
        out = [(0, 0)]
        x = y = 0
        for d in reversed(w):
            x -= _DX[d]
            y -= _DY[d]
            out.append((x, y))
        return tuple(out)

    @classmethod
    def _self_avoiding(cls, w: tuple[int, ...]) -> bool:
        offs = cls._offsets(w)
        return len(set(offs)) == len(offs)


_AUTOMATA: dict[int, WindowAutomaton] = {}


def window_automaton(girth: int) -> WindowAutomaton:
    auto = _AUTOMATA.get(girth)
    if auto is None:
        auto = _AUTOMATA[girth] = WindowAutomaton(girth)
    return auto


class _FrozenLayer:
    """Compact read-only layer: sorted keys + length-prefixed count bytes."""

    __slots__ = ("_keys", "_offs", "_blob")

    def __init__(self, entries: dict[int, int]):
        items = sorted(entries.items())
        self._keys = array("q", [k for k, _ in items])
        offs = array("q", [0] * (len(items) + 1))
        chunks = []
        pos = 0
        for i, (_, v) in enumerate(items):
            b = v.to_bytes((v.bit_length() + 7) // 8, "little")
            chunks.append(b)
            pos += len(b)
            offs[i + 1] = pos
        self._offs = offs
        self._blob = b"".join(chunks)

    def get(self, key: int, default: int = 0) -> int:
        keys = self._keys
        i = bisect_left(keys, key)
        if i == len(keys) or keys[i] != key:
            return default
        return int.from_bytes(self._blob[self._offs[i] : self._offs[i + 1]], "little")

    def items(self):
        for i, k in enumerate(self._keys):
            yield k, int.from_bytes(self._blob[self._offs[i] : self._offs[i + 1]], "little")

    def __len__(self) -> int:
        return len(self._keys)


class CountTable:
    """Layered exact counts of girth-restricted continuations toward a target.

    In origin mode (``origin`` given) the table covers walks origin->target
    of each length in ``lengths``; growing-window states near the start are
    anchored at the origin.  In all-sources mode (``origin=None``, used for
    the Aztec sampler) the table answers counts from any start point in the
    region for every covered length.
    """

    def __init__(
        self,
        region: Region,
        target: Point,
        girth: int,
        lengths,
        *,
        origin: Point | None = None,
        box: LatticeBox | None = None,
        memory_cap: int = DEFAULT_MEMORY_CAP,
        compact: bool = False,
        layers: list | None = None,
    ):
        target = Point(*target)
        if target not in region:
            raise ValueError(f"target {target} outside region")
        if origin is not None:
            origin = Point(*origin)
            if origin not in region:
                raise ValueError(f"origin {origin} outside region")
        lengths = tuple(sorted(set(int(x) for x in lengths)))
        if not lengths or lengths[0] < 0:
            raise ValueError("lengths must be nonnegative")
        self.region = region
        self.target = target
        self.origin = origin
        self.girth = girth
        self.lengths = lengths
        self._length_set = frozenset(lengths)
        self.max_length = lengths[-1]
        self.auto = window_automaton(girth)

        if box is None:
            if origin is not None:
                margin = max(0, (self.max_length - manhattan(origin, target)) // 2)
                box = LatticeBox.spanning(origin, target).expand(margin)
            else:
                box = region.bounding_box()
        self.box = box

        est_bytes = box.size() * 2 * 16**girth * 24
        if est_bytes > memory_cap:
            raise ResourceLimitError(
                f"estimated table size {est_bytes/1e9:.1f} GB exceeds memory cap "
                f"{memory_cap/1e9:.1f} GB (girth l={girth}, box {box.size()} points)"
            )

        self._build_geometry()
        if layers is None:
            self._build_layers(compact)
        else:
            self.import_layers(layers)

    # -- geometry ------------------------------------------------------------

    def _build_geometry(self) -> None:
        region, box = self.region, self.box
        pts = [p for p in box.points() if p in region]
        if not pts:
            raise ValueError("restricted region is empty")
        self._pts = pts
        self._pid = {p: i for i, p in enumerate(pts)}
        if self.target not in self._pid:
            raise ValueError("target outside the restriction box")
        if self.origin is not None and self.origin not in self._pid:
            raise ValueError("origin outside the restriction box")
        self._target_pid = self._pid[self.target]
        nw = len(self.auto.windows)
        self._nw = nw
        tx, ty = self.target
        self._dist_target = array("l", [abs(p[0] - tx) + abs(p[1] - ty) for p in pts])
        if self.origin is not None:
            ox, oy = self.origin
            self._dist_origin = array("l", [abs(p[0] - ox) + abs(p[1] - oy) for p in pts])
        else:
            self._dist_origin = None
        pid = self._pid
        nbr_base = []
        for (x, y) in pts:
            row = []
            for d in range(4):
                q = pid.get((x + _DX[d], y + _DY[d]))
                row.append(-1 if q is None else q * nw)
            nbr_base.append(tuple(row))
        self._nbr_base = nbr_base
        # window validity: deep points admit every window
        r = self.auto.max_moves
        ball = [(dx, dy) for dx in range(-r, r + 1) for dy in range(-r, r + 1) if abs(dx) + abs(dy) <= r]
        self._deep = [all((x + dx, y + dy) in pid for dx, dy in ball) for (x, y) in pts]
        self._vw_cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def _windows_at(self, p: int, m: int) -> tuple[int, ...]:
        """Window ids of length m whose points all lie in the restricted region."""
        if self._deep[p]:
            return self.auto.by_length[m]
        key = (p, m)
        got = self._vw_cache.get(key)
        if got is None:
            x, y = self._pts[p]
            pid = self._pid
            offsets = self.auto.offsets
            got = tuple(
                w
                for w in self.auto.by_length[m]
                if all((x + dx, y + dy) in pid for dx, dy in offsets[w])
            )
            self._vw_cache[key] = got
        return got

    # -- build ---------------------------------------------------------------

    def _active_points(self) -> list[list[int]]:
        """active[t] = pids that can sit t steps from the target within budget."""
        max_len = self.max_length
        active: list[list[int]] = [[] for _ in range(max_len + 1)]
        d_t = self._dist_target
        d_o = self._dist_origin
        for p in range(len(self._pts)):
            hi = max_len if d_o is None else max_len - d_o[p]
            for t in range(d_t[p], hi + 1, 2):
                active[t].append(p)
        return active

    def _origin_prefixes(self, m: int) -> list[tuple[int, int]]:
        """(pid, wid) of every m-step self-avoiding prefix from the origin."""
        cache = self._prefix_cache
        if m in cache:
            return cache[m]
        if m == 0:
            out = [(self._pid[self.origin], self.auto.empty_id)]
        else:
            out = []
            for p, wid in self._origin_prefixes(m - 1):
                nb = self._nbr_base[p]
                for d, wid2 in self.auto.trans[wid]:
                    nbase = nb[d]
                    if nbase >= 0:
                        out.append((nbase // self._nw, wid2))
        cache[m] = out
        return out

    def _build_layers(self, compact: bool) -> None:
        auto = self.auto
        nw = self._nw
        max_len = self.max_length
        full_m = auto.max_moves
        trans = auto.trans
        nbr_base = self._nbr_base
        target_pid = self._target_pid
        self._prefix_cache: dict[int, list[tuple[int, int]]] = {}
        active = self._active_points()
        length_set = set(self.lengths)

        layers: list = [None] * (max_len + 1)
        self._layers = layers
        prev: dict[int, int] = {}

        def base_get(key: int, default: int = 0) -> int:
            return 1 if key // nw == target_pid else 0

        for t in range(1, max_len + 1):
            prev_get = base_get if t == 1 else prev.get
            cur: dict[int, int] = {}
            if t <= max_len - full_m:
                for p in active[t]:
                    nb = nbr_base[p]
                    base = p * nw
                    for wid in self._windows_at(p, full_m):
                        tot = 0
                        for d, wid2 in trans[wid]:
                            nbase = nb[d]
                            if nbase >= 0:
                                tot += prev_get(nbase + wid2, 0)
                        if tot:
                            cur[base + wid] = tot
            short_ms = sorted({L - t for L in length_set if 0 <= L - t < full_m})
            for m in short_ms:
                if self.origin is not None:
                    states = self._origin_prefixes(m)
                else:
                    states = [(p, wid) for p in active[t] for wid in self._windows_at(p, m)]
                for p, wid in states:
                    nb = nbr_base[p]
                    tot = 0
                    for d, wid2 in trans[wid]:
                        nbase = nb[d]
                        if nbase >= 0:
                            tot += prev_get(nbase + wid2, 0)
                    if tot:
                        cur[p * nw + wid] = tot
            layers[t] = cur
            if compact and t >= 2:
                layers[t - 1] = _FrozenLayer(layers[t - 1])
            prev = cur
        if compact and max_len >= 1:
            layers[max_len] = _FrozenLayer(layers[max_len])

    # -- queries ---------------------------------------------------------------

    def _layer_get(self, t: int, key: int) -> int:
        if t == 0:
            return 1 if key // self._nw == self._target_pid else 0
        return self._layers[t].get(key, 0)

    def counts(self) -> dict[int, int]:
        """Walk count for every covered length (origin mode)."""
        return {L: self.low_girth_walk_count(L) for L in self.lengths}

    def low_girth_walk_count(self, length: int) -> int:
        if self.origin is None:
            raise ValueError("table has no fixed origin; use count_from")
        return self.count_from(self.origin, length)

    def count_from(self, start: Point, length: int) -> int:
        """Number of girth-restricted walks start -> target of the given length."""
        start = Point(*start)
        if length not in self._length_set:
            raise ValueError(f"length {length} not covered (lengths {self.lengths})")
        if self.origin is not None and start != self.origin:
            raise ValueError("origin-mode table only counts walks from its origin")
        p = self._pid.get(start)
        if p is None:
            return 0
        if length == 0:
            return 1 if p == self._target_pid else 0
        return self._layer_get(length, p * self._nw + self.auto.empty_id)

    def completion_count(self, point: Point, window_moves: str, t: int) -> int:
        """Admissible t-step continuations from (point, window) to the target.

        The window is the move string of the most recent steps (newest last).
        Raises TableDomainError for states outside the budget-reachable cone
        the table covers.
        """
        point = Point(*point)
        codes = tuple(MOVE_CHARS.index(c) for c in window_moves)
        wid = self.auto.index.get(codes)
        if wid is None:
            raise ValueError(f"invalid window {window_moves!r} (self-intersecting or too long)")
        p = self._pid.get(point)
        if p is None:
            raise ValueError(f"point {point} outside the restricted region")
        if not 0 <= t <= self.max_length:
            raise ValueError(f"t={t} out of range 0..{self.max_length}")
        x, y = point
        if not all((x + dx, y + dy) in self._pid for dx, dy in self.auto.offsets[wid]):
            raise ValueError("window leaves the restricted region")
        if t == 0:
            return 1 if p == self._target_pid else 0
        if self._dist_target[p] > t or (self._dist_target[p] - t) % 2:
            return 0
        m = len(codes)
        if m == self.auto.max_moves:
            if t > self.max_length - m:
                raise TableDomainError(f"full-window state at t={t} exceeds the length budget")
            if self._dist_origin is not None and self._dist_origin[p] > self.max_length - t:
                raise TableDomainError("state not reachable from the origin within budget")
        else:
            if (t + m) not in self._length_set:
                raise TableDomainError(f"window length {m} with t={t} matches no covered length")
            if self.origin is not None:
                sx, sy = self.auto.offsets[wid][-1]
                if (x + sx, y + sy) != self.origin:
                    raise TableDomainError("short window must be a walk prefix from the origin")
        return self._layer_get(t, p * self._nw + wid)

    # -- sampler support -------------------------------------------------------

    def start_state(self, start: Point) -> tuple[int, int]:
        start = Point(*start)
        p = self._pid.get(start)
        if p is None:
            raise ValueError(f"start {start} outside the restricted region")
        return p, self.auto.empty_id

    def point_at(self, pid: int) -> Point:
        return self._pts[pid]

    def step_options(self, pid: int, wid: int, t: int) -> list[tuple[str, int, int, int]]:
        """(move, next_pid, next_wid, count) for each admissible next step."""
        nb = self._nbr_base[pid]
        nw = self._nw
        out = []
        for d, wid2 in self.auto.trans[wid]:
            nbase = nb[d]
            if nbase >= 0:
                c = self._layer_get(t - 1, nbase + wid2)
                if c:
                    out.append((MOVE_CHARS[d], nbase // nw, wid2, c))
        return out

    # -- persistence -----------------------------------------------------------

    def export_layers(self) -> list[dict[int, int] | None]:
        out: list[dict[int, int] | None] = []
        for layer in self._layers:
            if layer is None:
                out.append(None)
            elif isinstance(layer, _FrozenLayer):
                out.append(dict(layer.items()))
            else:
                out.append(layer)
        return out

    def import_layers(self, layers) -> None:
        if len(layers) != self.max_length + 1:
            raise ValueError("layer count mismatch")
        self._layers = [None if x is None else dict(x) for x in layers]


def build_table(
    region: Region,
    origin: Point,
    target: Point,
    girth: int,
    extra: int,
    *,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    compact: bool = False,
) -> CountTable:
    """Table for walks origin -> target of lengths n, n+2, ..., n+2*extra."""
    if extra < 0:
        raise ValueError("extra steps must be >= 0")
    n = manhattan(Point(*origin), Point(*target))
    lengths = [n + 2 * j for j in range(extra + 1)]
    return CountTable(
        region,
        Point(*target),
        girth,
        lengths,
        origin=Point(*origin),
        memory_cap=memory_cap,
        compact=compact,
    )


def build_all_sources_table(
    region: Region,
    target: Point,
    girth: int,
    lengths,
    *,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    compact: bool = False,
) -> CountTable:
    """Table answering counts from every start in a bounded region."""
    return CountTable(region, Point(*target), girth, lengths, memory_cap=memory_cap, compact=compact)
