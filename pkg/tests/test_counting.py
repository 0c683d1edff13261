"""Girth-DP tests: frozen examples, oracle equivalence, and a reference memo.

The recursive memoized reference implementation here is an independent
second route to the same counts (different traversal order from the
layered build), exercised on small instances.
"""

import pytest

from sawkit.counting import (
    CountTable,
    ResourceLimitError,
    TableDomainError,
    build_all_sources_table,
    build_table,
    window_automaton,
)
from sawkit.lattice import BoxRegion, FullLattice, LatticeBox, Point
from sawkit.oracle import enumerate_low_girth_walks, enumerate_saws

Z = FullLattice()


def test_window_automaton_sizes():
    assert len(window_automaton(1).windows) == 1 + 4 + 12
    assert len(window_automaton(2).windows) == 1 + 4 + 12 + 36 + 100
    auto = window_automaton(2)
    # stepping back onto the previous point is always forbidden
    for wid, w in enumerate(auto.windows):
        if w:
            assert auto.step_map[wid][w[-1] ^ 2] == -1


def test_frozen_examples():
    assert build_table(Z, (0, 0), (1, 0), 1, 1).counts() == {1: 1, 3: 2}
    assert build_table(Z, (0, 0), (1, 1), 2, 1).counts() == {2: 2, 4: 4}
    assert build_table(Z, (0, 0), (1, 1), 1, 0).counts() == {2: 2}
    assert build_table(Z, (0, 0), (1, 1), 2, 2).counts()[6] == 16


def test_completion_count_base_cases():
    table = build_table(Z, (0, 0), (1, 1), 2, 1)
    assert table.completion_count((1, 1), "", 0) == 1
    assert table.completion_count((0, 1), "", 0) == 0
    assert table.completion_count((0, 0), "", 4) == table.low_girth_walk_count(4)


def test_completion_count_validation():
    table = build_table(Z, (0, 0), (2, 2), 2, 1)
    with pytest.raises(ValueError):
        table.completion_count((0, 0), "UD", 2)  # self-intersecting window
    with pytest.raises(ValueError):
        table.completion_count((50, 50), "", 2)  # outside restriction box
    with pytest.raises(ValueError):
        table.low_girth_walk_count(5)  # wrong parity
    with pytest.raises(TableDomainError):
        # a short window that is not a prefix of walks from the origin
        table.completion_count((2, 1), "U", 3)


def test_memory_cap():
    with pytest.raises(ResourceLimitError):
        build_table(Z, (0, 0), (150, 150), 5, 10)


def _reference_counts(region, origin, target, girth, length):
    """Recursive memoized DP, top-down (a different traversal order)."""
    window = 2 * girth + 1
    memo = {}

    def rec(pts, t):
        if t == 0:
            return 1 if pts[-1] == target else 0
        key = (pts[-(window):], t)
        if key in memo:
            return memo[key]
        x, y = pts[-1]
        total = 0
        for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0)):
            np_ = (x + dx, y + dy)
            if np_ not in region:
                continue
            if np_ in pts[-window:]:
                continue
            total += rec(pts[-(window - 1):] + (np_,), t - 1)
        memo[key] = total
        return total

    return rec(((origin[0], origin[1]),), length)


@pytest.mark.parametrize("n1,n2,k,girth", [(1, 0, 2, 1), (1, 1, 2, 2), (2, 1, 1, 1), (2, 2, 1, 3), (0, 3, 1, 2)])
def test_against_recursive_reference(n1, n2, k, girth):
    box = BoxRegion(LatticeBox(Point(-k, -k), Point(max(n1, 1) + k, max(n2, 1) + k)))
    table = build_table(box, (0, 0), (n1, n2), girth, k)
    for j in range(k + 1):
        length = n1 + n2 + 2 * j
        assert table.low_girth_walk_count(length) == _reference_counts(
            box, (0, 0), (n1, n2), girth, length
        )


def test_oracle_equivalence_sweep():
    for n1, n2 in ((1, 0), (1, 1), (2, 1), (3, 0), (2, 2)):
        n = n1 + n2
        kmax = (10 - n) // 2
        for girth in (1, 2, 3):
            table = build_table(Z, (0, 0), (n1, n2), girth, kmax)
            for j in range(kmax + 1):
                length = n + 2 * j
                assert table.low_girth_walk_count(length) == enumerate_low_girth_walks(
                    Z, Point(0, 0), Point(n1, n2), length, girth
                ).count


def test_saw_collapse_when_window_covers_length():
    table = build_table(Z, (0, 0), (2, 1), 3, 1)
    assert table.low_girth_walk_count(5) == enumerate_saws(Z, Point(0, 0), Point(2, 1), 5).count


def test_sandwich_and_monotone_in_girth():
    for n1, n2, k in ((2, 2, 2), (3, 1, 2)):
        length = n1 + n2 + 2 * k
        saws = enumerate_saws(Z, Point(0, 0), Point(n1, n2), length).count
        counts = [
            build_table(Z, (0, 0), (n1, n2), girth, k).low_girth_walk_count(length)
            for girth in (1, 2, 3)
        ]
        assert saws <= counts[2] <= counts[1] <= counts[0]


def test_region_restricted_counts():
    corridor = BoxRegion(LatticeBox(Point(0, -1), Point(1, 1)))
    table = build_table(corridor, (0, 0), (1, 0), 1, 2)
    assert table.counts() == {1: 1, 3: 2, 5: 2}


def test_all_sources_table():
    region = BoxRegion(LatticeBox(Point(0, 0), Point(3, 3)))
    table = build_all_sources_table(region, Point(3, 3), 2, (2, 4, 6))
    for start in (Point(3, 1), Point(1, 1), Point(0, 3)):
        for length in (2, 4, 6):
            want = enumerate_low_girth_walks(region, start, Point(3, 3), length, 2).count
            assert table.count_from(start, length) == want


def test_compact_layers_agree():
    plain = build_table(Z, (0, 0), (3, 2), 2, 2)
    compact = build_table(Z, (0, 0), (3, 2), 2, 2, compact=True)
    assert plain.counts() == compact.counts()
    assert compact.completion_count((1, 1), "UR", 5) == plain.completion_count((1, 1), "UR", 5)


def test_export_import_layers():
    table = build_table(Z, (0, 0), (2, 2), 2, 1)
    clone = CountTable(
        table.region, table.target, table.girth, table.lengths,
        origin=table.origin, layers=table.export_layers(),
    )
    assert clone.counts() == table.counts()
