import pytest

from sawkit.aztec import aztec_region
from sawkit.lattice import (
    BoxRegion,
    FullLattice,
    LatticeBox,
    Point,
    PointSetRegion,
    Walk,
    boundary,
    boundary_points_in_box,
    moves_between,
    points_of,
    reflect_walk,
    reverse,
    step,
)


def test_step_unit_displacements():
    assert step(Point(0, 0), "R") == (1, 0)
    assert step(Point(2, 3), "D") == (2, 2)
    assert step(Point(-1, 0), "L") == (-2, 0)


def test_step_reverse_round_trip():
    for d in "URDL":
        for p in (Point(0, 0), Point(3, -7), Point(-2, 5)):
            assert step(step(p, d), reverse(d)) == p


def test_points_of():
    assert points_of(Walk(Point(0, 0), "RU")) == [(0, 0), (1, 0), (1, 1)]
    assert points_of(Walk(Point(0, 0), "")) == [(0, 0)]
    assert points_of(Walk(Point(0, 0), "RL")) == [(0, 0), (1, 0), (0, 0)]


def test_points_round_trip_moves():
    w = Walk(Point(2, -1), "URRDLU")
    assert moves_between(w.points()) == w.moves


def test_self_avoidance():
    assert Walk(Point(0, 0), "RU").is_self_avoiding()
    assert not Walk(Point(0, 0), "RL").is_self_avoiding()
    assert not Walk(Point(0, 0), "RULD").is_self_avoiding()


def test_walk_rejects_bad_moves():
    with pytest.raises(ValueError):
        Walk(Point(0, 0), "RX")


def test_codec_round_trip():
    for text in ("(0,0)", "(3,-4)URDL", "(-1,2)RRUU"):
        assert Walk.from_text(text).to_text() == text
    with pytest.raises(ValueError):
        Walk.from_text("0,0 RU")


def test_boundary_of_box():
    region = BoxRegion(LatticeBox(Point(0, 0), Point(2, 2)))
    bd = boundary(region)
    assert len(bd) == 8 and Point(1, 1) not in bd


def test_boundary_single_point():
    assert boundary(PointSetRegion([(0, 0)])) == {Point(0, 0)}


def test_boundary_unbounded_errors():
    with pytest.raises(ValueError):
        boundary(FullLattice())


def test_boundary_aztec_2():
    bd = boundary(aztec_region(2))
    assert bd == {p for p in aztec_region(2).points() if abs(p.x) + abs(p.y) == 2}
    assert len(bd) == 8


def test_boundary_points_in_box():
    region = aztec_region(2)
    assert boundary_points_in_box(region, LatticeBox(Point(-2, 0), Point(2, 0))) == 2
    assert boundary_points_in_box(region, LatticeBox(Point(0, 0), Point(2, 2))) == 3
    assert boundary_points_in_box(region, LatticeBox(Point(0, 0), Point(0, 0))) == 0


def test_non_boundary_points_have_all_neighbors_inside():
    region = aztec_region(3)
    bd = boundary(region)
    for p in region.points():
        if p not in bd:
            assert all(q in region for q in
                       (Point(p.x+1, p.y), Point(p.x-1, p.y), Point(p.x, p.y+1), Point(p.x, p.y-1)))


def test_reflect_walk():
    w = Walk(Point(1, 2), "RRU")
    assert reflect_walk(w, True, False).to_text() == "(-1,2)LLU"
    assert reflect_walk(w, False, True).to_text() == "(1,-2)RRD"
    assert reflect_walk(reflect_walk(w, True, True), True, True).to_text() == w.to_text()


def test_box_validation():
    with pytest.raises(ValueError):
        LatticeBox(Point(1, 0), Point(0, 0))
    box = LatticeBox.spanning(Point(3, -1), Point(0, 4))
    assert box.lo == (0, -1) and box.hi == (3, 4)
