import numpy as np
import pytest
from scipy import sparse

from fermisect.fock import (
    DimensionTooLarge,
    QuasiOperator,
    build_space,
    random_canonical_transform,
    vacuum_expectation,
)


def _anticommutator(a, b):
    return (a @ b + b @ a).toarray()


def test_dimensions():
    assert build_space(1, 1).dimension == 4
    assert build_space(2, 2).dimension == 16
    with pytest.raises(DimensionTooLarge):
        build_space(7, 6)


def test_car_identities_exact():
    space = build_space(2, 2)
    eye = np.eye(space.dimension)
    ops = list(space.create_particle) + list(space.create_anti)
    for i, ci in enumerate(ops):
        ai = ci.conj().T
        for j, cj in enumerate(ops):
            aj = cj.conj().T
            target = eye if i == j else 0.0
            assert np.max(np.abs(_anticommutator(ai, cj) - target)) <= 1e-13
            assert np.max(np.abs(_anticommutator(ai, aj))) <= 1e-13
            assert np.max(np.abs(_anticommutator(ci, cj))) <= 1e-13


def test_vacuum_is_annihilated():
    space = build_space(2, 1)
    vac = space.vacuum()
    for j in range(2):
        assert np.linalg.norm(space.annihilate_particle(j) @ vac) == 0
    assert np.linalg.norm(space.annihilate_anti(0) @ vac) == 0


def test_vacuum_uniqueness():
    # the joint kernel of all annihilators is one-dimensional
    space = build_space(2, 1)
    stack = sparse.vstack(
        [space.create_particle[j].conj().T for j in range(2)]
        + [space.create_anti[0].conj().T]
    ).toarray()
    _, s, vh = np.linalg.svd(stack)
    null_dim = np.sum(s < 1e-12) + (vh.shape[0] - len(s))
    assert null_dim == 1


def test_number_conservation_in_vacuum():
    space = build_space(3, 3)
    for j in range(3):
        n_op = space.create_particle[j] @ space.annihilate_particle(j)
        assert vacuum_expectation(space, [n_op]) == 0


def test_pure_particle_quasi_op_preserves_vacuum():
    space = build_space(2, 2)
    c = QuasiOperator(alpha=np.array([0.6, 0.8j]), beta=np.zeros(2))
    mat = c.matrix(space)
    assert abs(vacuum_expectation(space, [c.dagger_matrix(space), mat])) == 0


def test_single_mode_mixing_occupation():
    # c = cos(t) a + e^{i phi} sin(t) bdag: <cdag c> = sin(t)^2
    space = build_space(1, 1)
    for theta, phi in [(0.3, 0.0), (1.1, 2.0), (np.pi / 2, -0.7)]:
        c = QuasiOperator(
            alpha=np.array([np.cos(theta)]),
            beta=np.array([np.exp(1j * phi) * np.sin(theta)]),
        )
        val = vacuum_expectation(space, [c.dagger_matrix(space), c.matrix(space)])
        assert val.real == pytest.approx(np.sin(theta) ** 2, abs=1e-12)
        assert abs(val.imag) <= 1e-14
        assert c.canonicity() == pytest.approx(1.0)


def test_occupation_equals_beta_row_norm_without_canonicity():
    # <cdag c> = sum |beta|^2 for arbitrary rows; no normalization needed
    rng = np.random.default_rng(5)
    space = build_space(3, 3)
    for _ in range(5):
        c = QuasiOperator(
            alpha=rng.normal(size=3) + 1j * rng.normal(size=3),
            beta=rng.normal(size=3) + 1j * rng.normal(size=3),
        )
        val = vacuum_expectation(space, [c.dagger_matrix(space), c.matrix(space)])
        assert val.real == pytest.approx(float(np.sum(np.abs(c.beta) ** 2)), rel=1e-12)


def test_random_canonical_transform_is_canonical():
    for seed in range(10):
        ops = random_canonical_transform(4, seed)
        assert len(ops) == 4
        space = build_space(4, 4)
        eye = np.eye(space.dimension)
        mats = [op.matrix(space) for op in ops]
        for i, mi in enumerate(mats):
            for j, mj in enumerate(mats):
                target = eye if i == j else 0.0
                assert np.max(np.abs(_anticommutator(mi, mj.conj().T.tocsr()) - target)) <= 1e-12
                assert np.max(np.abs(_anticommutator(mi, mj))) <= 1e-12


def test_random_canonical_transform_reproducible():
    ops = random_canonical_transform(2, seed=7)
    again = random_canonical_transform(2, seed=7)
    assert np.array_equal(ops[0].alpha, again[0].alpha)
    assert np.array_equal(ops[0].beta, again[0].beta)
    # frozen regression snapshot
    assert ops[0].alpha == pytest.approx(
        np.array([-0.03731572 - 0.23997918j, 0.27016142 - 0.38477088j]), abs=1e-8
    )
    assert ops[0].beta == pytest.approx(
        np.array([-0.47461813 - 0.55615369j, -0.43019859 + 0.01848214j]), abs=1e-8
    )


def test_zero_generator_identity_transform():
    # expm(0) = 1: directly check the identity rows satisfy the convention
    c = QuasiOperator(alpha=np.array([1.0, 0.0]), beta=np.zeros(2))
    space = build_space(2, 2)
    diff = (c.matrix(space) - space.annihilate_particle(0)).toarray()
    assert np.max(np.abs(diff)) == 0


def test_transform_mode_cap():
    with pytest.raises(DimensionTooLarge):
        random_canonical_transform(7, 0)
