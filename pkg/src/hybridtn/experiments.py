"""Numerical studies: Pauli one-norm vs operator norm of random contracted
matrices, and the sampling-cost scan comparing SVD and Monte-Carlo contraction.

All randomness is drawn from ``SeedSequence(seed, spawn_key=...)`` substreams
keyed by the loop indices, so results are bit-identical for a given seed
regardless of evaluation order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError, ContractViolation
from .htncore import EstimationConfig, build_N, contract_montecarlo, contract_svd
from .htncore.random import random_htn_state, random_pauli_observables
from .numkit import haar_random_unitary, pauli_string_matrix, random_pauli_string

NORM_STUDY_MAX_N = 8
COST_SCAN_MAX_QUBITS = 20

NORM_STUDY_COLUMNS = ("n", "samples", "mean_ratio", "sd_ratio", "mean_gamma", "sd_gamma",
                      "mean_opnorm", "sd_opnorm")
COST_SCAN_COLUMNS = ("k", "engine", "shots", "rmse", "stderr")

ENGINES = {"svd": contract_svd, "montecarlo": contract_montecarlo}


def _rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _fmt(x) -> str:
    return x if isinstance(x, str) else (str(x) if isinstance(x, (int, np.integer)) else f"{x:.10g}")


@dataclass(frozen=True)
class NormStudyResult:
    n: int
    samples: int
    mean_ratio: float
    sd_ratio: float
    mean_gamma: float
    sd_gamma: float
    mean_opnorm: float
    sd_opnorm: float
    min_ratio: float = field(default=float("nan"), compare=False)

    def row(self) -> list[str]:
        return [_fmt(getattr(self, c)) for c in NORM_STUDY_COLUMNS]


def random_contracted_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    """N^{i'i} = <0| U^{i'(1)dag} O_rand U^{i(2)} |0> for four Haar U and a random Pauli string."""
    u = [haar_random_unitary(n, rng) for _ in range(4)]
    o = pauli_string_matrix(random_pauli_string(n, rng))
    bra = np.stack([u[0][:, 0], u[1][:, 0]])
    ket = np.stack([u[2][:, 0], u[3][:, 0]], axis=1)
    return bra.conj() @ o @ ket


def norm_study_samples(n: int, samples: int, seed: int):
    """Per-sample (opnorm, gamma) arrays for one register size."""
    mats = np.array([random_contracted_matrix(n, _rng(seed, n, s)) for s in range(samples)])
    return kernels.opnorm_gamma_2x2(mats)


def norm_study(n_range, samples: int, seed: int = 0) -> list[NormStudyResult]:
    if samples < 100:
        raise ContractViolation("norm_study needs at least 100 samples")
    n_range = list(n_range)
    bad = [n for n in n_range if not 1 <= n <= NORM_STUDY_MAX_N]
    if bad:
        raise CapacityError(f"n must lie in 1..{NORM_STUDY_MAX_N}, got {bad}")
    out = []
    for n in n_range:
        norms, gamma = norm_study_samples(n, samples, seed)
        ratio = gamma / norms
        out.append(NormStudyResult(
            n=n, samples=samples,
            mean_ratio=float(ratio.mean()), sd_ratio=float(ratio.std(ddof=1)),
            mean_gamma=float(gamma.mean()), sd_gamma=float(gamma.std(ddof=1)),
            mean_opnorm=float(norms.mean()), sd_opnorm=float(norms.std(ddof=1)),
            min_ratio=float(ratio.min()),
        ))
    return out


@dataclass
class CostScanResult:
    """RMSE of both contraction engines against the exact value.

    Arrays are indexed ``[k index, shots index]`` and keyed by engine name.
    """

    n: int
    k_values: list
    shots_grid: list
    repeats: int
    exact: list
    opnorm_product: list
    gamma_product: list
    rmse: dict
    stderr: dict
    bias: dict
    pooled_stderr: dict

    def slope_vs_shots(self, engine: str) -> np.ndarray:
        """Least-squares slope of log RMSE against log shots, one per k."""
        x = np.log(self.shots_grid)
        return np.array([np.polyfit(x, np.log(r), 1)[0] for r in self.rmse[engine]])

    def slope_vs_k(self, engine: str) -> np.ndarray:
        """Slope of log RMSE against k at each shot budget."""
        if len(self.k_values) < 2:
            return np.full(len(self.shots_grid), np.nan)
        return np.array([np.polyfit(self.k_values, np.log(col), 1)[0] for col in self.rmse[engine].T])

    def efficiency_ratio(self) -> np.ndarray:
        return self.rmse["montecarlo"] / self.rmse["svd"]

    def rows(self):
        for e in ENGINES:
            for a, k in enumerate(self.k_values):
                for b, s in enumerate(self.shots_grid):
                    yield [_fmt(k), e, _fmt(s), _fmt(self.rmse[e][a, b]), _fmt(self.stderr[e][a, b])]


FAMILIES = ("constant", "haar")


def cost_instance(k: int, n: int, seed: int, family: str = "constant"):
    """Seeded transition-amplitude instance: two Haar roots and k contracted matrices.

    ``constant``: every N_m is the same matrix, drawn once per seed with
    :func:`random_contracted_matrix`, so gamma and the operator norm are equal
    across subsystems. ``haar``: each N_m is built exactly from its own Haar
    leaves and a random Pauli observable.
    """
    rng = _rng(seed, k)
    if family == "constant":
        n_const = random_contracted_matrix(n, _rng(seed, 0))
        return haar_random_unitary(k, rng), haar_random_unitary(k, rng), [n_const] * k
    if family != "haar":
        raise ContractViolation(f"family must be one of {FAMILIES}")
    s1 = random_htn_state(k, n, rng)
    s2 = random_htn_state(k, n, rng)
    obs = random_pauli_observables(k, n, rng)
    exact = EstimationConfig()
    mats = [build_N(a, b, o, exact).entries for a, b, o in zip(s1.leaves, s2.leaves, obs)]
    return s1.root, s2.root, mats


def cost_scan(k_range, n: int, shots_grid, repeats: int, seed: int = 0,
              split: str = "stratified", family: str = "constant") -> CostScanResult:
    k_values = [int(k) for k in k_range]
    shots_grid = [int(s) for s in shots_grid]
    if any(k < 1 for k in k_values) or n < 1:
        raise ContractViolation("k and n must be >= 1")
    if max(k_values) * n > COST_SCAN_MAX_QUBITS:
        raise CapacityError(f"k*n exceeds the oracle cap of {COST_SCAN_MAX_QUBITS} qubits")
    if repeats < 2:
        raise ContractViolation("cost_scan needs repeats >= 2")

    shape = (len(k_values), len(shots_grid))
    rmse = {e: np.zeros(shape) for e in ENGINES}
    stderr = {e: np.zeros(shape) for e in ENGINES}
    bias = {e: np.zeros(shape, dtype=complex) for e in ENGINES}
    pooled = {e: np.zeros(shape) for e in ENGINES}
    exact_vals, op_prod, gamma_prod = [], [], []

    for a, k in enumerate(k_values):
        root1, root2, mats = cost_instance(k, n, seed, family)
        exact = contract_svd(root1, root2, mats, EstimationConfig()).value
        exact_vals.append(exact)
        norms, gammas = kernels.opnorm_gamma_2x2(np.array(mats))
        op_prod.append(float(np.prod(norms)))
        gamma_prod.append(float(np.prod(gammas)))
        for ei, (name, engine) in enumerate(ENGINES.items()):
            for b, shots in enumerate(shots_grid):
                base = EstimationConfig(mode="shots", shots=shots, seed=seed, split=split,
                                        engine=name, stream=(k, ei, b))
                ests = [engine(root1, root2, mats, base.child(r)) for r in range(repeats)]
                vals = np.array([e.value for e in ests])
                ses = np.array([e.stderr for e in ests])
                rmse[name][a, b] = np.sqrt(np.mean(np.abs(vals - exact) ** 2))
                stderr[name][a, b] = ses.mean()
                bias[name][a, b] = vals.mean() - exact
                pooled[name][a, b] = np.sqrt(np.mean(ses**2) / repeats)

    return CostScanResult(n, k_values, shots_grid, repeats, exact_vals, op_prod, gamma_prod,
                          rmse, stderr, bias, pooled)


def write_csv(path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
