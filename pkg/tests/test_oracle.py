import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chiralosc.dynamics import hs_probabilities, time_grid
from chiralosc.model import DoubletSpec, LevelSpec, ModelSpec, full_hamiltonian, random_model, validate_model
from chiralosc.oracle import (
    compare_ww,
    convergence_study,
    default_horizon,
    empirical_orders,
    exact_evolve,
    exact_probabilities,
)

from conftest import rk4_amplitudes


def left_state(dim):
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def test_empty_tower_reduces_to_closed_form():
    H = full_hamiltonian(validate_model(ModelSpec(DoubletSpec(0.0, 1.0, 0.0))))
    state = exact_evolve(H, left_state(2), math.pi / 4)
    assert (state.p_l, state.p_r) == pytest.approx((0.5, 0.5), abs=1e-15)


@settings(max_examples=100, deadline=None)
@given(
    m=st.floats(-5, 5), delta=st.floats(-3, 3), epsilon=st.floats(-3, 3), t=st.floats(0, 20)
)
def test_empty_tower_equivalence_property(m, delta, epsilon, t):
    H = full_hamiltonian(validate_model(ModelSpec(DoubletSpec(m, delta, epsilon))))
    state = exact_evolve(H, left_state(2), t)
    p_l, p_r = hs_probabilities(delta, epsilon, t)
    assert state.p_l == pytest.approx(p_l, abs=1e-12)
    assert state.p_r == pytest.approx(p_r, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(0, 8), t=st.floats(0, 100))
def test_norm_conserved(seed, n, t):
    model = random_model(seed, n_levels=n, energy_range=(-3.0, 3.0))
    H = full_hamiltonian(model)
    rng = np.random.default_rng(seed)
    psi0 = rng.standard_normal(n + 2) + 1j * rng.standard_normal(n + 2)
    psi0 /= np.linalg.norm(psi0)
    assert abs(exact_evolve(H, psi0, t).norm - 1.0) <= 1e-10


def test_against_rk4_integrator():
    model = random_model(7, n_levels=5, energy_range=(0.5, 3.0), delta=0.4, epsilon=0.2)
    H = full_hamiltonian(model)
    psi0 = left_state(7)
    state = exact_evolve(H, psi0, 1.0)
    ref = rk4_amplitudes(H, psi0, 1.0, 1e-4)
    assert state.p_l == pytest.approx(abs(ref[0]) ** 2, abs=1e-8)
    np.testing.assert_allclose(state.amplitudes, ref, atol=1e-8)


def test_time_additivity():
    model = random_model(9, n_levels=4)
    H = full_hamiltonian(model)
    psi0 = left_state(6)
    mid = exact_evolve(H, psi0, 1.3)
    end = exact_evolve(H, mid.amplitudes, 2.4)
    direct = exact_evolve(H, psi0, 3.7)
    np.testing.assert_allclose(end.amplitudes, direct.amplitudes, atol=1e-10)


def test_grid_matches_pointwise():
    H = full_hamiltonian(random_model(1, n_levels=3))
    t = np.linspace(0, 5, 11)
    p_l, p_r = exact_probabilities(H, left_state(5), t)
    for k, tt in enumerate(t):
        s = exact_evolve(H, left_state(5), tt)
        assert (p_l[k], p_r[k]) == pytest.approx((s.p_l, s.p_r), abs=1e-14)


def test_rejects_unnormalized_state():
    with pytest.raises(ValueError):
        exact_evolve(np.eye(2), np.array([1.0, 1.0]), 0.5)


def test_compare_empty_tower_exact():
    model = validate_model(ModelSpec(DoubletSpec(0.2, 0.3, 0.1)))
    report = compare_ww(model, np.linspace(0, 30, 301))
    assert report.max_abs_error_pl < 1e-12 and report.max_abs_error_pr < 1e-12


def test_compare_single_far_level():
    model = validate_model(
        ModelSpec(DoubletSpec(0.0, 0.1, 0.0), levels=(LevelSpec(100.0, 0.1, 0.0),))
    )
    report = compare_ww(model, np.linspace(0, 10, 1001))
    assert report.max_abs_error_pl < 1e-3 and report.max_abs_error_pr < 1e-3


def test_compare_decoupled_tower():
    model = validate_model(
        ModelSpec(DoubletSpec(0.0, 0.1, 0.0), levels=(LevelSpec(100.0, 0.0, 0.0),))
    )
    report = compare_ww(model, np.linspace(0, 10, 101))
    assert report.max_abs_error < 1e-12


def test_compare_rejects_decay():
    model = validate_model(
        ModelSpec(DoubletSpec(0.0, 0.1, 0.0), levels=(LevelSpec(0.0, 0.1, 0.0),), broadening=1.0)
    )
    with pytest.raises(ValueError):
        compare_ww(model, np.linspace(0, 1, 5))


def test_convergence_zero_coupling():
    model = random_model(0)
    (report,) = convergence_study(model, [0.0], np.linspace(0, 10, 51))
    assert report.max_abs_error < 1e-12
    assert report.coupling_scale == 0.0


def test_convergence_is_second_order():
    # The leading discrepancy is the O(lambda^2) population that leaks into
    # the excited levels, so halving the coupling shrinks the error about 4x.
    model = random_model(0)
    t = time_grid(default_horizon(model), 501)
    reports = convergence_study(model, [0.2, 0.1, 0.05, 0.025], t)
    errors = [r.max_abs_error for r in reports]
    assert all(b < a for a, b in zip(errors, errors[1:]))
    for order in empirical_orders(reports):
        assert order == pytest.approx(2.0, abs=0.1)


def test_convergence_ladder_must_be_nonincreasing():
    with pytest.raises(ValueError):
        convergence_study(random_model(0), [0.1, 0.2], np.linspace(0, 1, 5))
    with pytest.raises(ValueError):
        convergence_study(random_model(0), [-0.1], np.linspace(0, 1, 5))


def test_default_horizon():
    assert default_horizon(random_model(0, delta=0.1)) == pytest.approx(50.0)
    with pytest.raises(ValueError):
        default_horizon(random_model(0, delta=0.0))
