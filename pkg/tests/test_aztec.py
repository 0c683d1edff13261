import math
from collections import Counter

import pytest

from sawkit.aztec import (
    OmegaParams,
    anchor_vertex,
    aztec_region,
    boundary_vertices,
    dual_vertices,
    edge_boundary_size,
    in_omega,
    make_partition,
    outer_boundary_edge_count,
    partition_family,
    partition_to_path,
    path_to_partition,
    sample_partition,
    staircase_partition,
    width_certificate,
)
from sawkit.glauber import enumerate_omega
from sawkit.lattice import Point, Walk, boundary
from sawkit.sampling import RngStream


def test_region_counts():
    assert len(list(aztec_region(1).points())) == 5
    assert len(boundary(aztec_region(1))) == 4
    assert len(list(aztec_region(2).points())) == 13
    assert len(boundary(aztec_region(2))) == 8


def test_dual_vertex_counts():
    assert len(dual_vertices(1)) == 4
    assert len(dual_vertices(2)) == 12
    assert len(dual_vertices(4)) == 40
    for k in range(1, 13):
        assert len(dual_vertices(k)) == 2 * k * (k + 1)


def test_outer_boundary_edges():
    for k in (1, 2, 5, 12):
        assert outer_boundary_edge_count(k) == 8 * k


def test_k1_bijection_by_hand():
    w = Walk(Point(-1, 0), "RR")
    p = path_to_partition(1, w)
    assert p.boundary_sizes == (6, 6)
    assert {p.class1, p.class2} == {frozenset({(-1, 1), (1, 1)}), frozenset({(-1, -1), (1, -1)})}
    assert anchor_vertex(1) in p.class1
    assert partition_to_path(p).to_text() == w.to_text()


def test_paper_figure_path_k4():
    walk = Walk(Point(-2, -2), "UURURRRU")
    part = path_to_partition(4, walk)
    assert part.boundary_sizes == (24, 24)
    assert partition_to_path(part).to_text() == walk.to_text()


def test_path_to_partition_errors():
    with pytest.raises(ValueError):
        path_to_partition(2, Walk(Point(0, 0), "R"))  # interior endpoints
    with pytest.raises(ValueError):
        path_to_partition(2, Walk(Point(-2, 0), "RLRL"))  # not self-avoiding
    # touching boundary mid-path can pinch off extra components
    with pytest.raises(ValueError):
        path_to_partition(2, Walk(Point(2, 0), "LULU"))


def test_partition_validation():
    with pytest.raises(ValueError):
        make_partition(1, set())  # empty class
    with pytest.raises(ValueError):
        make_partition(2, {(-3, -1), (3, 1)})  # disconnected class
    with pytest.raises(ValueError):
        make_partition(2, {(-1, -1), (-1, 1), (1, -1), (1, 1)})  # ring complement splits
    enclosed = make_partition(3, {(-1, -1), (-1, 1), (1, -1), (1, 1)})
    with pytest.raises(ValueError):
        partition_to_path(enclosed)  # cut is a cycle, not a path


def test_edge_boundary_identity():
    # sum of class boundaries = 8k + 2 * cut size
    params = OmegaParams(2, 0.5)
    for k in (1, 2):
        for p in enumerate_omega(k, params):
            cut = len(partition_to_path(p))
            assert edge_boundary_size(p, 1) + edge_boundary_size(p, 2) == 8 * k + 2 * cut


def test_in_omega():
    params = OmegaParams(0.5, 1.0)  # slack 0: budget exactly 6k
    w = Walk(Point(-1, 0), "RR")
    assert in_omega(path_to_partition(1, w), params)
    corner = path_to_partition(2, Walk(Point(2, 0), "LU"))
    assert max(corner.boundary_sizes) > OmegaParams(0.5, 1.0).budget(2)
    assert not in_omega(corner, OmegaParams(0.5, 1.0))


def test_no_partition_beats_6k():
    # exhaustively at k=2: a budget below 6k admits nothing
    from sawkit.oracle import enumerate_partitions

    assert enumerate_partitions(2, OmegaParams(2, 0.5), budget=11).count == 0
    assert enumerate_partitions(2, OmegaParams(2, 0.5), budget=12).count > 0


def test_width_certificate_antipodal():
    params = OmegaParams(1, 0.5)
    rep = width_certificate(8, params, Point(-8, 0), Point(8, 0), 2)
    assert rep.admissible and rep.certified
    assert rep.bound == 16 * 2 + 4 * params.slack(8)
    assert rep.boundary_points <= rep.bound


def test_width_certificate_aligned_pair():
    params = OmegaParams(1, 0.5)
    rep = width_certificate(8, params, Point(1, -7), Point(1, 7), 0)
    assert rep.admissible and rep.certified
    assert rep.boundary_points <= 4 * params.slack(8) + 4


def test_width_certificate_inadmissible_pair():
    # corner-to-corner pairs violate the nearly-antipodal conditions
    params = OmegaParams(1, 0.5)
    rep = width_certificate(8, params, Point(8, 0), Point(0, 8), 0)
    assert not rep.admissible and not rep.certified
    with pytest.raises(ValueError):
        width_certificate(8, params, Point(0, 0), Point(8, 0), 1)


def test_staircase_partition():
    for k in (2, 3, 4, 8):
        p = staircase_partition(k)
        assert in_omega(p, OmegaParams(2, 0.5))
        assert len(partition_to_path(p)) == 2 * k


def test_sample_partition_k1():
    params = OmegaParams(0.5, 1.0)  # budget 6: exactly the two antipodal cuts
    omega = enumerate_omega(1, params)
    assert len(omega) == 2
    rng = RngStream(42)
    fam = partition_family(1, params, girth=2)
    seen = Counter()
    for _ in range(2000):
        part, _ = sample_partition(1, params, 2, rng, family=fam)
        seen[part.class1] += 1
    assert set(seen) == {p.class1 for p in omega}
    assert abs(seen.most_common()[0][1] / 2000 - 0.5) < 4 * math.sqrt(0.25 / 2000)


def test_sample_partition_stays_in_omega():
    params = OmegaParams(2, 0.5)
    fam = partition_family(2, params, girth=2)
    rng = RngStream(43)
    for _ in range(200):
        part, rep = sample_partition(2, params, 2, rng, family=fam)
        assert in_omega(part, params)
        assert rep.attempts >= 1


def test_table_cache_round_trip(tmp_path):
    params = OmegaParams(2, 0.5)
    fam1 = partition_family(2, params, girth=2, cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert files and all(f.suffix == ".pkl" for f in files)
    fam2 = partition_family(2, params, girth=2, cache_dir=str(tmp_path))
    assert [(e.label, e.length, e.count) for e in fam1] == [(e.label, e.length, e.count) for e in fam2]


def test_boundary_vertices_sorted_count():
    for k in (1, 2, 5):
        bv = boundary_vertices(k)
        assert len(bv) == 4 * k
        assert bv == sorted(bv)
