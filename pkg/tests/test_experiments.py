import numpy as np
import pytest

from hybridtn.errors import CapacityError, ContractViolation
from hybridtn.experiments import (
    COST_SCAN_COLUMNS,
    NORM_STUDY_COLUMNS,
    cost_instance,
    cost_scan,
    norm_study,
    norm_study_samples,
    random_contracted_matrix,
    write_csv,
)
from hybridtn.numkit import pauli_decompose, svd


def test_random_contracted_matrix_bounds():
    # rows come from different unitaries, so only |entries| <= 1 is guaranteed
    for s in range(50):
        m = random_contracted_matrix(1 + s % 4, np.random.default_rng(s))
        assert np.max(np.abs(m)) <= 1 + 1e-10
        assert np.linalg.norm(m, 2) <= 2 + 1e-10
        assert pauli_decompose(m).gamma >= np.linalg.norm(m, 2) - 1e-10


def test_norm_study_samples_match_numkit():
    norms, gammas = norm_study_samples(3, 100, seed=4)
    from hybridtn.experiments import _rng
    for s in (0, 17, 99):
        m = random_contracted_matrix(3, _rng(4, 3, s))
        assert np.isclose(norms[s], svd(m).opnorm, atol=1e-12)
        assert np.isclose(gammas[s], pauli_decompose(m).gamma, atol=1e-12)


def test_norm_study_invariants_and_determinism():
    a = norm_study([1, 2, 3], 200, seed=3)
    b = norm_study([1, 2, 3], 200, seed=3)
    assert a == b
    assert [r.row() for r in a] == [r.row() for r in b]
    for r in a:
        assert r.mean_ratio >= 1 - 1e-9 and r.min_ratio >= 1 - 1e-9
        assert r.sd_ratio >= 0 and len(r.row()) == len(NORM_STUDY_COLUMNS)


def test_norm_study_preconditions():
    with pytest.raises(ContractViolation):
        norm_study([1], 99)
    with pytest.raises(CapacityError):
        norm_study([9], 100)


def test_cost_instance_constant_family():
    r1, r2, mats = cost_instance(3, 2, seed=1)
    assert r1.shape == (8, 8) and len(mats) == 3
    assert all(np.array_equal(m, mats[0]) for m in mats)
    _, _, mats2 = cost_instance(1, 2, seed=1)
    assert np.array_equal(mats2[0], mats[0])
    with pytest.raises(ContractViolation):
        cost_instance(1, 1, 0, family="nope")


def test_cost_scan_small():
    res = cost_scan([1, 2], 1, [200, 2000], repeats=10, seed=2, family="haar")
    for e in ("svd", "montecarlo"):
        assert np.all(res.rmse[e] >= 0)
        assert res.slope_vs_shots(e).shape == (2,)
    assert np.all(np.array(res.gamma_product) >= np.array(res.opnorm_product) - 1e-12)
    rows = list(res.rows())
    assert len(rows) == 2 * 2 * 2 and all(len(r) == len(COST_SCAN_COLUMNS) for r in rows)


def test_cost_scan_unit_singulars_give_constant_magnitude():
    # a k=1 instance with N unitary has all rescaled singular values equal to 1
    from hybridtn.htncore import EstimationConfig, contract_svd
    from hybridtn.numkit import haar_random_unitary
    rng = np.random.default_rng(0)
    n = 0.6 * haar_random_unitary(1, rng)
    f = svd(n)
    assert np.allclose(f.singulars / f.opnorm, 1)
    est = contract_svd(np.eye(2), haar_random_unitary(1, rng), [n],
                       EstimationConfig(mode="shots", shots=1000, split="stratified"))
    # stratified values are +-0.6 so each half has stderr <= 0.6/sqrt(500)
    assert est.stderr <= np.hypot(0.6, 0.6) / np.sqrt(499) + 1e-12


def test_cost_scan_rmse_decreases_with_shots():
    res = cost_scan([1, 2], 2, [100, 1000, 10_000], repeats=30, seed=0)
    for e in ("svd", "montecarlo"):
        for row in res.rmse[e]:
            assert np.sum(np.diff(row) > 0) <= 1


def test_cost_scan_preconditions():
    with pytest.raises(CapacityError):
        cost_scan([3], 7, [10], 2)
    with pytest.raises(ContractViolation):
        cost_scan([1], 1, [10], 1)


def test_write_csv_bytes(tmp_path):
    rows = [r.row() for r in norm_study([1], 100, seed=0)]
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(p1, NORM_STUDY_COLUMNS, rows)
    write_csv(p2, NORM_STUDY_COLUMNS, [r.row() for r in norm_study([1], 100, seed=0)])
    assert p1.read_bytes() == p2.read_bytes()
    assert p1.read_text().splitlines()[0] == ",".join(NORM_STUDY_COLUMNS)
