import numpy as np
import pytest

from hybridtn.errors import ContractViolation
from hybridtn.numkit import H, I2, X, Z, haar_random_unitary, kron
from hybridtn.statesim import (
    ALPHA_IMAG,
    ALPHA_REAL,
    HadamardTestSpec,
    JointOutcomeDistribution,
    Statevector,
    apply_local,
    basis_state,
    bitstrings,
    expectation_observable,
    hadamard_test_distribution,
    marginal_probabilities,
    prepare,
    sample,
)

from conftest import random_hermitian, random_state


def sv(v):
    return Statevector(np.asarray(v, dtype=complex))


def test_prepare_identity_and_hadamard():
    assert np.array_equal(prepare(np.eye(4), 2).amps, basis_state("00").amps)
    s = prepare(kron(H, I2), 2)
    assert np.allclose(s.amps, np.array([1, 0, 1, 0]) / np.sqrt(2))


def test_prepare_haar_norm():
    s = prepare(haar_random_unitary(3, np.random.default_rng(19)), 3)
    assert abs(s.norm() - 1) <= 1e-10


def test_prepare_rejects_non_unitary():
    with pytest.raises(ContractViolation):
        prepare(2 * np.eye(2), 1)


def test_apply_local_site_zero_is_leftmost():
    out = apply_local(basis_state("00"), 0, X)
    assert np.array_equal(out.amps, basis_state("10").amps)


def test_apply_local_identity_and_kron_equivalence():
    rng = np.random.default_rng(2)
    s = sv(random_state(2, rng))
    assert np.allclose(apply_local(s, 1, I2).amps, s.amps)
    two = apply_local(apply_local(s, 0, Z), 1, Z)
    assert np.allclose(two.amps, kron(Z, Z) @ s.amps, atol=1e-12)


@pytest.mark.parametrize("site", [0, 1, 2, 3])
def test_apply_local_matches_dense_and_preserves_norm(site):
    rng = np.random.default_rng(100 + site)
    s = sv(random_state(4, rng))
    g = haar_random_unitary(1, rng)
    full = np.eye(1)
    for q in range(4):
        full = np.kron(full, g if q == site else I2)
    out = apply_local(s, site, g)
    assert np.allclose(out.amps, full @ s.amps, atol=1e-12)
    assert abs(out.norm() - 1) <= 1e-10


def test_apply_local_errors():
    with pytest.raises(ContractViolation):
        apply_local(basis_state("00"), 2, X)
    with pytest.raises(ContractViolation):
        apply_local(basis_state("00"), 0, 2 * X)
    out = apply_local(basis_state("00"), 0, 2 * X, unitary=False)
    assert not out.normalized and np.isclose(out.norm(), 2)


def test_hadamard_identical_branches():
    s = sv(random_state(2, np.random.default_rng(0)))
    dist = hadamard_test_distribution(HadamardTestSpec(s, s, ALPHA_REAL))
    assert np.isclose(dist.weighted_mean(), 1)
    assert np.isclose(dist.probs[1].sum(), 0)


def test_hadamard_orthogonal_branches():
    dist = hadamard_test_distribution(HadamardTestSpec(basis_state("0"), basis_state("1")))
    assert abs(dist.weighted_mean()) < 1e-15


def test_hadamard_random_branches_real_and_imag():
    rng = np.random.default_rng(23)
    a, b = sv(random_state(3, rng)), sv(random_state(3, rng))
    ip = np.vdot(a.amps, b.amps)
    re = hadamard_test_distribution(HadamardTestSpec(a, b, ALPHA_REAL)).weighted_mean()
    im = hadamard_test_distribution(HadamardTestSpec(a, b, ALPHA_IMAG)).weighted_mean()
    assert abs(re - ip.real) <= 1e-10 and abs(im - ip.imag) <= 1e-10


@pytest.mark.parametrize("measured", [(0, 1, 2), (2,), (1, 0)])
def test_hadamard_weighted_consistency(measured):
    rng = np.random.default_rng(sum(measured) + 5)
    a, b = sv(random_state(3, rng)), sv(random_state(3, rng))
    f = rng.uniform(-1, 1, 2 ** len(measured))
    # dense F = sum_j f(j)|j><j| on the measured qubits, identity elsewhere
    diag = np.zeros(8)
    for x in range(8):
        bits = format(x, "03b")
        diag[x] = f[int("".join(bits[q] for q in measured), 2)]
    ref = np.vdot(a.amps, diag * b.amps)
    for alpha, part in ((ALPHA_REAL, ref.real), (ALPHA_IMAG, ref.imag)):
        dist = hadamard_test_distribution(HadamardTestSpec(a, b, alpha, measured))
        assert abs(dist.weighted_mean(f) - part) <= 1e-9


def test_hadamard_marginal_is_branch_mixture():
    rng = np.random.default_rng(6)
    a, b = sv(random_state(3, rng)), sv(random_state(3, rng))
    dist = hadamard_test_distribution(HadamardTestSpec(a, b, ALPHA_IMAG, (0, 2)))
    mix = (marginal_probabilities(a.probabilities(), 3, (0, 2))
           + marginal_probabilities(b.probabilities(), 3, (0, 2))) / 2
    assert np.allclose(dist.system_marginal(), mix, atol=1e-9)


def test_hadamard_spec_rejects_bad_input():
    with pytest.raises(ContractViolation):
        HadamardTestSpec(basis_state("0"), basis_state("00"))
    with pytest.raises(ContractViolation):
        HadamardTestSpec(basis_state("0"), basis_state("1"), alpha=1.0)
    with pytest.raises(ContractViolation):
        HadamardTestSpec(basis_state("00"), basis_state("11"), measured=(0, 0))


def test_entries_labels():
    dist = hadamard_test_distribution(HadamardTestSpec(basis_state("01"), basis_state("01"), measured=(1,)))
    assert dist.entries == {(1, "0"): 0.0, (1, "1"): 1.0, (-1, "0"): 0.0, (-1, "1"): 0.0}


def test_sample_point_mass():
    dist = JointOutcomeDistribution(np.array([[0.0, 1.0], [0.0, 0.0]]), (0,))
    b, j = sample(dist, 50, np.random.default_rng(0))
    assert np.all(b == 1) and np.all(j == 1)


def test_sample_uniform_frequencies():
    dist = JointOutcomeDistribution(np.full((2, 2), 0.25), (0,))
    shots = 100_000
    b, j = sample(dist, shots, np.random.default_rng(1))
    sigma = np.sqrt(0.25 * 0.75 / shots)
    for bb in (1, -1):
        for jj in (0, 1):
            freq = np.mean((b == bb) & (j == jj))
            assert abs(freq - 0.25) <= 4 * sigma


def test_sample_deterministic_and_errors():
    dist = JointOutcomeDistribution(np.full((2, 4), 0.125), (0, 1))
    r1 = sample(dist, 100, np.random.default_rng(9))
    r2 = sample(dist, 100, np.random.default_rng(9))
    assert all(np.array_equal(x, y) for x, y in zip(r1, r2))
    with pytest.raises(ContractViolation):
        sample(dist, 0, np.random.default_rng(0))
    with pytest.raises(ContractViolation):
        sample(JointOutcomeDistribution(np.zeros((2, 2)), (0,)), 1, np.random.default_rng(0))
    assert bitstrings([0, 3], 2) == ["00", "11"]


def test_sample_unbiased_against_exact():
    rng = np.random.default_rng(77)
    a, b = sv(random_state(2, rng)), sv(random_state(2, rng))
    dist = hadamard_test_distribution(HadamardTestSpec(a, b, ALPHA_REAL, (0, 1)))
    f = np.array([1.0, -0.5, 0.25, 0.8])
    exact = dist.weighted_mean(f)
    means, ses = [], []
    for r in range(200):
        bb, jj = sample(dist, 10_000, np.random.default_rng([77, r]))
        v = bb * f[jj]
        means.append(v.mean())
        ses.append(v.std(ddof=1) / np.sqrt(v.size))
    pooled = np.sqrt(np.mean(np.square(ses)) / len(means))
    assert abs(np.mean(means) - exact) < 4 * pooled


def test_expectation_observable_examples():
    assert expectation_observable(basis_state("0"), "Z") == 1
    plus = sv(np.array([1, 1]) / np.sqrt(2))
    assert np.isclose(expectation_observable(plus, "X"), 1)
    assert np.isclose(expectation_observable(plus, X), 1)


def test_expectation_observable_random_hermitian():
    rng = np.random.default_rng(29)
    o = random_hermitian(8, rng)
    v = random_state(3, rng)
    assert abs(expectation_observable(sv(v), o) - np.vdot(v, o @ v).real) <= 1e-10


def test_expectation_observable_pauli_string_matches_dense():
    rng = np.random.default_rng(12)
    v = random_state(3, rng)
    from hybridtn.numkit import pauli_string_matrix
    for label in ("XYZ", "YYI", "IZX"):
        dense = np.vdot(v, pauli_string_matrix(label) @ v).real
        assert abs(expectation_observable(sv(v), label) - dense) <= 1e-12


def test_expectation_observable_rejects_non_hermitian():
    with pytest.raises(ContractViolation):
        expectation_observable(basis_state("0"), np.array([[0, 1], [0, 0]]))
