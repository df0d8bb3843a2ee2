import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hybridtn.errors import CapacityError, ContractViolation
from hybridtn.numkit import (
    H,
    I2,
    MAX_MATRIX_QUBITS,
    PAULIS,
    X,
    Y,
    Z,
    eig_hermitian,
    haar_random_unitary,
    is_hermitian,
    is_unitary,
    kron,
    pauli_decompose,
    random_pauli_string,
    svd,
)

from conftest import power_iteration_opnorm, random_complex, random_hermitian, sampled_opnorm

complex_2x2 = st.lists(
    st.floats(-10, 10, allow_nan=False, allow_infinity=False), min_size=8, max_size=8
).map(lambda xs: (np.array(xs[:4]) + 1j * np.array(xs[4:])).reshape(2, 2))


def test_kron_identity():
    assert np.array_equal(kron(I2, I2), np.eye(4))


def test_kron_x_z_entries():
    m = kron(X, Z)
    expected = np.zeros((4, 4))
    expected[0, 2], expected[1, 3], expected[2, 0], expected[3, 1] = 1, -1, 1, -1
    assert np.array_equal(m, expected)


def test_kron_mixed_product_on_vectors():
    rng = np.random.default_rng(7)
    a, b = random_complex((2, 2), rng), random_complex((2, 2), rng)
    v, w = random_complex(2, rng), random_complex(2, rng)
    direct = np.array([(a @ v)[i] * (b @ w)[j] for i in range(2) for j in range(2)])
    assert np.allclose(kron(a, b) @ np.kron(v, w), direct, atol=1e-12)


def test_kron_capacity():
    big = np.eye(2 ** (MAX_MATRIX_QUBITS // 2 + 1))
    with pytest.raises(CapacityError):
        kron(big, big)


def test_eig_z_and_x():
    dz = eig_hermitian(Z)
    assert np.allclose(dz.eigenvalues, [1, -1])
    assert np.allclose(dz.rotation, np.eye(2))
    dx = eig_hermitian(X)
    assert np.allclose(dx.eigenvalues, [1, -1])
    # rows of the rotation are eigenvector bras; equal to H up to per-row phases
    assert np.allclose(np.abs(dx.rotation), np.abs(H))
    assert np.allclose(dx.reconstruct(), X, atol=1e-12)


def test_eig_random_reconstruction():
    m = random_hermitian(2, np.random.default_rng(11))
    d = eig_hermitian(m)
    assert np.max(np.abs(d.reconstruct() - m)) <= 1e-10
    assert d.eigenvalues[0] >= d.eigenvalues[1]


def test_eig_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_idempotent():
    m = random_hermitian(4, np.random.default_rng(3))
    once = eig_hermitian(m).reconstruct()
    twice = eig_hermitian(once).reconstruct()
    assert np.allclose(once, twice, atol=1e-10)


def test_svd_diagonal():
    f = svd(np.diag([1, 0.5]))
    assert np.allclose(f.left, np.eye(2)) and np.allclose(f.right, np.eye(2))
    assert np.allclose(f.singulars, [1, 0.5]) and f.opnorm == 1


def test_svd_zero_matrix_identity_convention():
    f = svd(np.zeros((2, 2)))
    assert np.array_equal(f.singulars, [0, 0]) and f.opnorm == 0
    assert np.array_equal(f.left, np.eye(2)) and np.array_equal(f.right, np.eye(2))


def test_svd_random_against_norm_oracles():
    m = random_complex((2, 2), np.random.default_rng(13))
    f = svd(m)
    assert np.max(np.abs(f.reconstruct() - m)) <= 1e-10
    assert abs(f.opnorm - power_iteration_opnorm(m)) <= 1e-8
    sampled = sampled_opnorm(m)
    assert sampled <= f.opnorm + 1e-12
    assert f.opnorm - sampled < 1e-2 * f.opnorm


@settings(max_examples=200, deadline=None)
@given(complex_2x2)
def test_svd_properties(m):
    f = svd(m)
    assert np.all(f.singulars >= 0)
    assert np.all(np.diff(f.singulars) <= 0)
    assert f.singulars[0] == f.opnorm
    assert np.max(np.abs(f.reconstruct() - m)) <= 1e-10 * max(1.0, f.opnorm)
    assert is_unitary(f.left, 1e-10) and is_unitary(f.right, 1e-10)
    assert abs(f.opnorm - power_iteration_opnorm(m)) <= 1e-8 * max(1.0, f.opnorm)


def test_pauli_decompose_identity():
    p = pauli_decompose(I2)
    assert np.allclose(p.coeffs, [1, 0, 0, 0]) and p.gamma == 1
    assert np.allclose(p.probs, [1, 0, 0, 0])


def test_pauli_decompose_ladder():
    ladder = np.array([[0, 1], [0, 0]])
    assert np.allclose((X + 1j * Y) / 2, ladder)
    p = pauli_decompose(ladder)
    assert np.allclose(p.coeffs, [0, 0.5, 0.5j, 0])
    assert np.isclose(p.gamma, 1)
    assert np.allclose(p.phases, [0, 0, np.pi / 2, 0])
    assert p.probs[0] == 0 and p.probs[3] == 0


def test_pauli_decompose_random_reconstruction():
    m = random_complex((2, 2), np.random.default_rng(17))
    p = pauli_decompose(m)
    assert np.max(np.abs(p.reconstruct() - m)) <= 1e-12
    assert np.isclose(p.probs.sum(), 1)
    assert np.allclose(p.gamma * p.probs * np.exp(1j * p.phases), p.coeffs)


def test_pauli_decompose_rejects_larger():
    with pytest.raises(ContractViolation):
        pauli_decompose(np.eye(4))


def test_gamma_bounds_opnorm_on_random_matrices():
    rng = np.random.default_rng(2024)
    mats = random_complex((10_000, 2, 2), rng)
    for m in mats:
        p = pauli_decompose(m)
        assert np.linalg.norm(m, 2) <= p.gamma + 1e-10


def test_haar_one_qubit_unitary():
    u = haar_random_unitary(1, np.random.default_rng(5))
    assert is_unitary(u, 1e-10)
    assert abs(abs(np.linalg.det(u)) - 1) <= 1e-10


def test_haar_rows_normalized_and_deterministic():
    a = haar_random_unitary(4, np.random.default_rng(99))
    b = haar_random_unitary(4, np.random.default_rng(99))
    assert np.array_equal(a, b)
    assert np.allclose(np.sum(np.abs(a) ** 2, axis=1), 1, atol=1e-10)


def test_haar_second_moment():
    # E|u_ij|^2 = 1/2^q under the Haar measure
    rng = np.random.default_rng(1)
    q, count = 3, 1000
    samples = np.array([np.abs(haar_random_unitary(q, rng)[2, 5]) ** 2 for _ in range(count)])
    se = samples.std(ddof=1) / np.sqrt(count)
    assert abs(samples.mean() - 1 / 8) <= 3 * se


def test_haar_phase_distribution_is_uniform():
    # the R-diagonal correction removes LAPACK's bias towards real positive diagonals
    rng = np.random.default_rng(8)
    phases = np.array([np.angle(haar_random_unitary(1, rng)[0, 0]) for _ in range(4000)])
    assert abs(np.mean(np.cos(phases))) < 0.05 and abs(np.mean(np.sin(phases))) < 0.05


def test_random_pauli_string_uniform():
    rng = np.random.default_rng(31)
    labels = [random_pauli_string(1, rng)[0] for _ in range(10_000)]
    counts = np.array([labels.count(c) for c in "IXYZ"])
    chi2 = np.sum((counts - 2500) ** 2 / 2500)
    assert chi2 < 11.345  # chi^2 critical value, 3 dof, 1%


def test_random_pauli_string_rules():
    with pytest.raises(ContractViolation):
        random_pauli_string(0, np.random.default_rng(0))
    a = random_pauli_string(6, np.random.default_rng(4))
    assert a == random_pauli_string(6, np.random.default_rng(4))
    assert len(a) == 6 and set(a) <= set("IXYZ")


def test_predicates():
    assert is_hermitian(Z) and not is_hermitian(np.array([[0, 1], [0, 0]]))
    assert all(is_unitary(p) for p in PAULIS)
    assert not is_unitary(2 * I2)
