"""End-to-end estimators: normalization, transition amplitude, overlap, expectation.

Shot budgeting: ``cfg.shots`` is the total for one call. It is divided evenly
over the k matrix constructions, the root contraction, and each normalization
that actually needs measuring. ``construction_shots`` / ``contraction_shots``
override the per-construction and contraction shares.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractViolation, DegenerateNormalizationError
from .construct import build_M, build_MA, build_N
from .contract import contract_hermitian, contract_montecarlo, contract_svd
from .estimation import EstimationConfig, ShotEstimate
from .model import ContractedMatrix, HTNState, SubsystemObservable

_NON_HERMITIAN_ENGINES = {"svd": contract_svd, "montecarlo": contract_montecarlo}


@dataclass(frozen=True)
class AmplitudeResult:
    estimate: ShotEstimate
    norm1: float
    norm2: float
    matrices: tuple


@dataclass(frozen=True)
class ExpectationResult:
    estimate: ShotEstimate
    norm: float
    matrices: tuple


def _observables(obs, k: int, n: int):
    if obs is None or (isinstance(obs, str) and obs == "identity"):
        return [None] * k
    obs = list(obs)
    if len(obs) != k:
        raise ContractViolation(f"expected {k} subsystem observables, got {len(obs)}")
    out = []
    for o in obs:
        if isinstance(o, str):
            o = None if o == "identity" else SubsystemObservable.from_paulis(o)
        if o is not None and o.qubits != n:
            raise ContractViolation(f"observable on {o.qubits} qubits, subsystems have {n}")
        out.append(o)
    return out


def _budgets(cfg: EstimationConfig, parts: int):
    per = 0 if cfg.exact else cfg.shots // parts
    construction = cfg.construction_shots if cfg.construction_shots is not None else per
    contraction = cfg.contraction_shots if cfg.contraction_shots is not None else per
    return construction, contraction, per


def normalization_squared(state: HTNState, cfg: EstimationConfig) -> ShotEstimate:
    """Estimate of <psi_HT|psi_HT>."""
    if state.orthogonal_leaves:
        return ShotEstimate(1.0, 0.0, 0, None)
    construction, contraction, _ = _budgets(cfg, state.k + 1)
    mats = [build_MA(leaf, cfg.child(0, m, shots=construction)) for m, leaf in enumerate(state.leaves)]
    est = contract_hermitian(state.root, mats, cfg.child(1, shots=contraction))
    if est.value.real <= 0:
        raise DegenerateNormalizationError(
            f"A^2 estimate {est.value.real:.6g} <= 0; increase the shot budget"
        )
    return est


def normalization(state: HTNState, cfg: EstimationConfig) -> float:
    """A = sqrt(<psi_HT|psi_HT>); exactly 1 when every leaf is init-state mapped."""
    return float(np.sqrt(normalization_squared(state, cfg).value.real))


def amplitude_details(s1: HTNState, s2: HTNState, obs, cfg: EstimationConfig) -> AmplitudeResult:
    if (s1.k, s1.n) != (s2.k, s2.n):
        raise ContractViolation(f"states differ in shape: (k, n) = {(s1.k, s1.n)} vs {(s2.k, s2.n)}")
    engine = _NON_HERMITIAN_ENGINES.get(cfg.engine)
    if engine is None:
        raise ContractViolation(
            f"engine {cfg.engine!r} cannot contract non-Hermitian matrices; use svd or montecarlo"
        )
    observables = _observables(obs, s1.k, s1.n)
    needs_norm = [not s.orthogonal_leaves for s in (s1, s2)]
    construction, contraction, per = _budgets(cfg, s1.k + 1 + sum(needs_norm))

    mats = tuple(
        build_N(l1, l2, o, cfg.child(0, m, shots=construction))
        for m, (l1, l2, o) in enumerate(zip(s1.leaves, s2.leaves, observables))
    )
    raw = engine(s1.root, s2.root, mats, cfg.child(1, shots=contraction))
    a1 = normalization(s1, cfg.child(2, shots=per))
    a2 = normalization(s2, cfg.child(3, shots=per))
    est = raw.scaled(1 / (a1 * a2))
    if not cfg.exact:
        est = ShotEstimate(est.value, est.stderr, cfg.shots, cfg.seed)
    return AmplitudeResult(est, a1, a2, mats)


def transition_amplitude(s1: HTNState, s2: HTNState, obs, cfg: EstimationConfig) -> ShotEstimate:
    """T = <psi_HT^(1)| O |psi_HT^(2)> / (A^(1) A^(2)).

    ``obs`` is a length-k sequence of :class:`SubsystemObservable`, Pauli
    strings, or ``None`` (identity); ``None`` as a whole means O = I.
    """
    return amplitude_details(s1, s2, obs, cfg).estimate


def overlap(s1: HTNState, s2: HTNState, cfg: EstimationConfig) -> ShotEstimate:
    return transition_amplitude(s1, s2, None, cfg)


def expectation_details(state: HTNState, obs, cfg: EstimationConfig) -> ExpectationResult:
    observables = [
        SubsystemObservable.identity(state.n) if o is None else o
        for o in _observables(obs, state.k, state.n)
    ]
    construction, contraction, per = _budgets(cfg, state.k + 1 + (not state.orthogonal_leaves))
    mats = tuple(
        build_M(leaf, o, cfg.child(0, m, shots=construction))
        for m, (leaf, o) in enumerate(zip(state.leaves, observables))
    )
    raw = contract_hermitian(state.root, mats, cfg.child(1, shots=contraction))
    a2 = normalization_squared(state, cfg.child(2, shots=per)).value.real
    est = raw.scaled(1 / a2)
    if not cfg.exact:
        est = ShotEstimate(est.value, est.stderr, cfg.shots, cfg.seed)
    return ExpectationResult(est, float(np.sqrt(a2)), mats)


def expectation(state: HTNState, obs, cfg: EstimationConfig) -> ShotEstimate:
    """<O> = <psi_HT| O |psi_HT> / A^2 via Hermitian contraction."""
    return expectation_details(state, obs, cfg).estimate
