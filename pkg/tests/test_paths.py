import math
import random
from collections import Counter

import pytest

from sawkit.lattice import BoxRegion, FullLattice, LatticeBox, Point, Walk
from sawkit.paths import (
    GoodEdgeMapError,
    base_path,
    bump,
    bumpable_good_edges,
    bumpable_indices,
    corner_count,
    from_first_quadrant,
    good_edge_map,
    is_non_adjacent,
    sample_shortest_path,
    straight_indices,
    straight_pair_count,
    to_first_quadrant,
    unbump,
)
from sawkit.sampling import RngStream

Z = FullLattice()


def test_sample_shortest_path_degenerate():
    rng = RngStream(1)
    assert sample_shortest_path(rng, 1, 0).moves == "R"
    assert sample_shortest_path(rng, 0, 3).moves == "UUU"


def test_sample_shortest_path_two_paths():
    rng = RngStream(2)
    seen = Counter(sample_shortest_path(rng, 1, 1).moves for _ in range(4000))
    assert set(seen) == {"RU", "UR"}
    assert abs(seen["RU"] / 4000 - 0.5) < 4 * math.sqrt(0.25 / 4000)


def test_sample_shortest_path_uniform_over_three():
    rng = RngStream(3)
    n = 30_000
    seen = Counter(sample_shortest_path(rng, 2, 1).moves for _ in range(n))
    p = 1 / 3
    sigma = math.sqrt(p * (1 - p) / n)
    assert set(seen) == {"RRU", "RUR", "URR"}
    for m in seen:
        assert abs(seen[m] / n - p) < 4 * sigma


def test_straight_pair_count():
    assert straight_pair_count(Walk(Point(0, 0), "RRR")) == 2
    assert straight_pair_count(Walk(Point(0, 0), "RURU")) == 0
    assert straight_pair_count(Walk(Point(0, 0), "RRUUR")) == 2


def test_bump_examples():
    w = bump(Walk(Point(0, 0), "RRRRR"), {1, 3, 4})
    assert len(w) == 11 and w.end == (5, 0)
    assert Point(1, -1) in w.points()
    assert bump(Walk(Point(0, 0), "RU"), ()).moves == "RU"
    w2 = bump(Walk(Point(0, 0), "UU"), {2})
    assert w2.moves == "ULUR" and w2.end == (0, 2) and w2.is_self_avoiding()


def test_bump_errors():
    with pytest.raises(ValueError):
        bump(Walk(Point(0, 0), "RU"), {3})
    with pytest.raises(ValueError):
        bump(Walk(Point(0, 0), "RD"), {2})  # only U and R moves can be bumped


def test_bumpable_indices():
    assert bumpable_indices(Walk(Point(0, 0), "RURU"), Z) == ()
    assert bumpable_indices(Walk(Point(0, 0), "RRR"), Z) == (2, 3)
    strip = BoxRegion(LatticeBox(Point(0, 0), Point(2, 0)))
    assert bumpable_indices(Walk(Point(0, 0), "RR"), strip) == ()
    with pytest.raises(ValueError):
        bumpable_indices(Walk(Point(0, 0), "RD"), Z)


def test_unbump():
    assert unbump(Walk(Point(0, 0), "ULUR")).moves == "UU"
    assert unbump(Walk(Point(0, 0), "RURU")).moves == "RURU"
    with pytest.raises(ValueError):
        unbump(Walk(Point(0, 0), "LU"))
    with pytest.raises(ValueError):
        unbump(Walk(Point(0, 0), "DRD"))


def test_base_path_of_shortest_path_is_itself():
    for moves in ("RRUU", "RURU", "UUU", "R"):
        assert base_path(Walk(Point(0, 0), moves)).moves == moves


def test_base_path_inverts_single_bumps():
    b = Walk(Point(0, 0), "RRRR")
    assert base_path(bump(b, {2})).moves == "RRRR"
    assert base_path(Walk(Point(0, 0), "RDRU")).moves == "RR"


def test_base_path_validation():
    with pytest.raises(ValueError):
        base_path(Walk(Point(1, 0), "RU"))  # start not at origin
    with pytest.raises(ValueError):
        base_path(Walk(Point(0, 0), "RL"))  # not self-avoiding
    with pytest.raises(ValueError):
        base_path(Walk(Point(0, 0), "LL"))  # endpoint outside first quadrant


def test_good_edge_map_examples():
    assert good_edge_map(Walk(Point(0, 0), "RRRR")).entries == (0, 1, 2, 3)
    assert good_edge_map(Walk(Point(0, 0), "RDRU")).entries == (0, 2)


def test_good_edge_map_conditions_on_random_bumps():
    rng = RngStream(5)
    pyrng = random.Random(5)
    for _ in range(500):
        n1, n2 = pyrng.randint(1, 9), pyrng.randint(1, 9)
        b = sample_shortest_path(rng, n1, n2)
        m = []
        for i in straight_indices(b):
            if all(abs(i - j) > 1 for j in m) and pyrng.random() < 0.5:
                m.append(i)
        a = bump(b, m)
        gem = good_edge_map(a)
        assert gem.validate(a, base_path(a))


def test_good_edge_map_can_fail_on_adversarial_walks():
    # a walk that loops over the top of a sub-box; no strictly increasing
    # super-parallel assignment exists for its base path
    pts_moves = "DRRRRUUUUULLD" + "R"
    w = Walk(Point(0, 0), pts_moves)
    assert w.is_self_avoiding() and w.end == (3, 3)
    with pytest.raises(GoodEdgeMapError):
        good_edge_map(w)


def test_bumpable_good_edges():
    assert bumpable_good_edges(Walk(Point(0, 0), "RRRR"), Z) == (1, 2, 3, 4)
    assert bumpable_good_edges(Walk(Point(0, 0), "RDRU"), Z) == (3,)


def test_corner_count():
    assert corner_count(Walk(Point(0, 0), "RRR")) == 2
    assert corner_count(Walk(Point(0, 0), "RU")) == 3
    assert corner_count(Walk(Point(0, 0), "RURU")) == 5


def test_non_adjacent_predicate():
    assert is_non_adjacent((2, 4, 9))
    assert not is_non_adjacent((2, 3))


def test_straight_pair_concentration_small():
    # lemma-style bound at n=60 with eps=0.05
    n, eps = 60, 0.05
    threshold = n / 2 - 2 * math.log(n) - math.sqrt(-n * math.log(eps))
    rng = RngStream(6)
    ok = sum(1 for _ in range(400) if straight_pair_count(sample_shortest_path(rng, 30, 30)) >= threshold)
    assert ok >= 0.95 * 400


def test_frame_normalization_round_trip():
    w = Walk(Point(3, -2), "LLDDR")
    norm, transform = to_first_quadrant(w)
    assert norm.start == (0, 0)
    end = norm.end
    assert end.x >= 0 and end.y >= 0
    assert from_first_quadrant(norm, transform).to_text() == w.to_text()
