import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chiralosc.errors import NonFiniteValue, NonHermitianInput
from chiralosc.model import (
    DoubletSpec,
    LevelSpec,
    ModelSpec,
    doublet_block,
    full_hamiltonian,
    random_model,
    scale_couplings,
    validate_model,
)


def test_empty_tower_is_valid():
    model = validate_model(ModelSpec(DoubletSpec(m=0, delta=1, epsilon=0)))
    assert model.n_levels == 0
    assert model.degenerate == ()


def test_exactly_degenerate_level_is_flagged():
    spec = ModelSpec(
        DoubletSpec(m=0.0, delta=1, epsilon=0),
        levels=(LevelSpec(0.0, 1.0, 0.0), LevelSpec(2.0, 1.0, 0.0)),
        degeneracy_tolerance=1e-9,
    )
    assert validate_model(spec).degenerate == (True, False)


def test_antihermitian_override_rejected():
    spec = ModelSpec(DoubletSpec(0, 1, 0), h_override=((0, 1j), (1j, 0)))
    with pytest.raises(NonHermitianInput):
        validate_model(spec)


def test_cross_couplings_must_be_hermitian_and_square():
    levels = (LevelSpec(1.0, 0.1, 0.0), LevelSpec(2.0, 0.0, 0.1))
    with pytest.raises(NonHermitianInput):
        validate_model(ModelSpec(DoubletSpec(0, 1, 0), levels, cross_couplings=((0, 1), (2, 0))))
    with pytest.raises(NonHermitianInput):
        validate_model(ModelSpec(DoubletSpec(0, 1, 0), levels, cross_couplings=((0,),)))


@pytest.mark.parametrize(
    "spec",
    [
        ModelSpec(DoubletSpec(float("nan"), 1, 0)),
        ModelSpec(DoubletSpec(0, float("inf"), 0)),
        ModelSpec(DoubletSpec(0, 1, 0), levels=(LevelSpec(1.0, complex(0, float("nan"))),)),
        ModelSpec(DoubletSpec(0, 1, 0, theta_max=0.0)),
        ModelSpec(DoubletSpec(0, 1, 0), degeneracy_tolerance=-1.0),
        ModelSpec(DoubletSpec(0, 1, 0), broadening=-0.5),
    ],
)
def test_invalid_values_rejected(spec):
    with pytest.raises(NonFiniteValue):
        validate_model(spec)


def test_validation_is_idempotent():
    model = random_model(3, n_levels=4)
    assert validate_model(model) == model
    assert validate_model(validate_model(model.spec)) == model


@pytest.mark.parametrize(
    "delta, epsilon, expected",
    [
        (1, 0, [[0, 1], [1, 0]]),
        (0, 2, [[2, 0], [0, -2]]),
        (3, 4, [[4, 3], [3, -4]]),
    ],
)
def test_doublet_block(delta, epsilon, expected):
    model = validate_model(ModelSpec(DoubletSpec(0, delta, epsilon)))
    np.testing.assert_array_equal(doublet_block(model), np.array(expected, dtype=complex))


def test_doublet_block_override():
    h = ((1.0, 0.5j), (-0.5j, -1.0))
    model = validate_model(ModelSpec(DoubletSpec(0, 9, 9), h_override=h))
    np.testing.assert_array_equal(doublet_block(model), np.array(h))


def test_full_hamiltonian_no_levels():
    model = validate_model(ModelSpec(DoubletSpec(m=1.5, delta=0.3, epsilon=0.2)))
    H = full_hamiltonian(model)
    np.testing.assert_array_equal(H, 1.5 * np.eye(2) + doublet_block(model))


def test_full_hamiltonian_single_level_placement():
    model = validate_model(
        ModelSpec(DoubletSpec(0, 0.1, 0), levels=(LevelSpec(10.0, 0.5, 0.0),))
    )
    H = full_hamiltonian(model)
    assert H.shape == (3, 3)
    assert H[0, 2] == 0.5 and H[1, 2] == 0 and H[2, 2] == 10
    assert H[2, 0] == 0.5 and H[0, 1] == 0.1


def test_full_hamiltonian_conjugate_placement():
    model = validate_model(
        ModelSpec(DoubletSpec(0, 0.1, 0), levels=(LevelSpec(3.0, 1 + 2j, -1j),))
    )
    H = full_hamiltonian(model)
    # row k holds <k|H|L>, <k|H|R>
    assert H[2, 0] == 1 + 2j and H[0, 2] == 1 - 2j
    assert H[2, 1] == -1j and H[1, 2] == 1j


def test_full_hamiltonian_cross_couplings_offdiagonal_only():
    levels = (LevelSpec(1.0, 0.1, 0.0), LevelSpec(2.0, 0.0, 0.1))
    cross = ((7.0, 0.3 + 0.1j), (0.3 - 0.1j, 7.0))
    H = full_hamiltonian(validate_model(ModelSpec(DoubletSpec(0, 1, 0), levels, cross_couplings=cross)))
    assert H[2, 2] == 1.0 and H[3, 3] == 2.0
    assert H[2, 3] == 0.3 + 0.1j and H[3, 2] == 0.3 - 0.1j


def test_random_eight_level_hamiltonian_hermitian():
    H = full_hamiltonian(random_model(8, n_levels=8))
    assert np.linalg.norm(H - H.conj().T) < 1e-14


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(0, 8))
def test_full_hamiltonian_hermitian_property(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    model = random_model(seed, n_levels=n, m=rng.uniform(-1, 1), delta=rng.uniform(-1, 1))
    if n:
        model = validate_model(
            ModelSpec(model.doublet, model.levels, cross_couplings=tuple(map(tuple, A + A.conj().T)))
        )
    H = full_hamiltonian(model)
    assert np.linalg.norm(H - H.conj().T) <= 1e-12 * np.linalg.norm(H)
    np.testing.assert_array_equal(
        H[:2, :2], model.doublet.m * np.eye(2) + doublet_block(model)
    )


def test_scale_couplings_leaves_doublet():
    model = random_model(0)
    scaled = scale_couplings(model, 0.5)
    assert scaled.doublet == model.doublet
    for a, b in zip(model.levels, scaled.levels):
        assert b.g_L == 0.5 * a.g_L and b.energy == a.energy
