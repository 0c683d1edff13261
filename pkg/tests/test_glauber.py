import math
from collections import Counter
from fractions import Fraction
from math import comb

import pytest

from sawkit.aztec import OmegaParams, staircase_partition
from sawkit.glauber import (
    _Diamond,
    conductance_of_cut,
    enumerate_omega,
    exact_mixing_time,
    glauber_step,
    make_chain,
    ordered_endpoints,
    run_chain,
    transition_counts,
)
from sawkit.sampling import RngStream

PARAMS = OmegaParams(3, 0.5)


def test_k1_chain_is_all_self_loops():
    # budget 6: only the two antipodal cuts, and no flip can stay in budget
    params = OmegaParams(0.5, 1.0)
    omega = enumerate_omega(1, params)
    assert len(omega) == 2
    state = make_chain(1, params, omega[0], RngStream(1))
    for _ in range(200):
        assert not glauber_step(state)
    assert state.partition.class1 == omega[0].class1


def test_transition_matrix_symmetric_doubly_stochastic():
    for k in (1, 2, 3):
        omega = enumerate_omega(k, PARAMS)
        mat, vdeg = transition_counts(omega, PARAMS)
        n = len(mat)
        assert all(mat[i][j] == mat[j][i] for i in range(n) for j in range(n))
        assert all(sum(row) == vdeg for row in mat)


def test_disconnecting_flip_is_rejected():
    # moving the middle of a 3-cell class would disconnect it
    params = OmegaParams(6, 1.0)  # generous budget so only connectivity can block
    omega = enumerate_omega(2, params)
    d = _Diamond.get(2)
    from sawkit.glauber import _flip_valid

    for p in omega:
        m = d.mask_of(p.class1)
        b1, b2 = p.boundary_sizes
        for v in range(d.n):
            res = _flip_valid(d, params.budget(2), m, b1 if m >> v & 1 else b2,
                              b2 if m >> v & 1 else b1, v)
            if res is None:
                continue
            # accepted flips must keep both classes connected
            m2 = m ^ (1 << v)
            assert d.connected(m2 & d.all_mask) or m2 == 0
            assert d.connected(d.all_mask ^ m2) or m2 == d.all_mask


def test_chain_stays_in_omega_and_mixes_small():
    omega = enumerate_omega(2, PARAMS)
    budget = PARAMS.budget(2)
    state = make_chain(2, PARAMS, staircase_partition(2), RngStream(7))
    seen = set()
    for _ in range(20_000):
        glauber_step(state)
        assert max(state.b_mask, state.b_comp) <= budget
        seen.add(state.partition.class1)
    assert seen == {p.class1 for p in omega}


def test_chain_empirical_uniformity_thinned():
    # thin to near-independent samples (t_mix = 87 at these parameters)
    omega = enumerate_omega(2, PARAMS)
    d = _Diamond.get(2)
    state = make_chain(2, PARAMS, staircase_partition(2), RngStream(11))
    counts = Counter()
    kept = 0
    for i in range(1_000_000):
        glauber_step(state)
        if (i + 1) % 250 == 0:
            m = state.mask if state.mask & d.anchor_bit else d.all_mask ^ state.mask
            counts[m] += 1
            kept += 1
    p = 1 / len(omega)
    sigma = math.sqrt(p * (1 - p) / kept)
    canon = []
    for part in omega:
        m = d.mask_of(part.class1)
        if not m & d.anchor_bit:
            m = d.all_mask ^ m
        canon.append(m)
    devs = [abs(counts.get(m, 0) / kept - p) / sigma for m in canon]
    assert max(devs) < 4.0


def test_conductance_report_k2():
    omega = enumerate_omega(2, PARAMS)
    rep = conductance_of_cut(omega, PARAMS, ordered_endpoints)
    assert rep.ratio > 0
    assert rep.mixing_lower_bound == Fraction(1, 4) / rep.ratio
    assert rep.mass <= Fraction(1, 2)


def test_conductance_cut_of_everything_errors():
    omega = enumerate_omega(2, PARAMS)
    with pytest.raises(ValueError):
        conductance_of_cut(omega, PARAMS, lambda p: True)


def test_conductance_decreasing_k2_k3():
    r2 = conductance_of_cut(enumerate_omega(2, PARAMS), PARAMS, ordered_endpoints).ratio
    r3 = conductance_of_cut(enumerate_omega(3, PARAMS), PARAMS, ordered_endpoints).ratio
    assert r2 > r3


def test_exact_mixing_time_bounds():
    omega = enumerate_omega(2, PARAMS)
    tmix = exact_mixing_time(omega, PARAMS)
    rep = conductance_of_cut(omega, PARAMS, ordered_endpoints)
    assert Fraction(tmix) >= rep.mixing_lower_bound
    # t-1 must not mix yet (minimality)
    from sawkit.glauber import _tv_ok_exact

    mat, vdeg = transition_counts(omega, PARAMS)
    assert _tv_ok_exact(mat, vdeg, tmix)
    assert not _tv_ok_exact(mat, vdeg, tmix - 1)


def test_reducible_space_at_tight_budget():
    # with C=2 the k=2 space contains four corner cuts no flip can leave
    params = OmegaParams(2, 0.5)
    omega = enumerate_omega(2, params)
    mat, _ = transition_counts(omega, params)
    isolated = [i for i, row in enumerate(mat) if all(mat[i][j] == 0 for j in range(len(mat)) if j != i)]
    assert len(isolated) == 4


def test_ordered_endpoints_floor():
    for k in (2, 3):
        omega = enumerate_omega(k, PARAMS)
        assert sum(1 for p in omega if ordered_endpoints(p)) >= comb(2 * k, k)


def test_run_chain_zero_steps():
    trace = run_chain(2, PARAMS, 0, RngStream(5))
    assert len(trace.records) == 1 and trace.crossings == 0


def test_run_chain_records_and_crossings():
    trace = run_chain(2, PARAMS, 50_000, RngStream(6), record_every=5000)
    assert trace.crossings > 0  # the small space crosses the cut freely
    assert len(trace.records) == 11
    step0 = trace.records[0]
    assert step0[0] == 0 and isinstance(step0[2], bool)
