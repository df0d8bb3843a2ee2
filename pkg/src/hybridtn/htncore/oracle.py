"""Brute-force reference: build |psi_HT> explicitly on all k*n qubits."""

from __future__ import annotations

import numpy as np

from ..errors import CapacityError
from ..statesim import Statevector
from .model import HTNState, SubsystemObservable

#: Largest k*n register the oracle will materialize.
ORACLE_MAX_QUBITS = 20


def _tensor(state: HTNState) -> np.ndarray:
    k, n = state.k, state.n
    if k * n > ORACLE_MAX_QUBITS:
        raise CapacityError(f"oracle needs {k * n} qubits (cap {ORACLE_MAX_QUBITS})")
    t = state.root[:, 0].reshape([2] * k)
    for m, leaf in enumerate(state.leaves):
        # columns are |phi^0>, |phi^1>
        cols = np.stack([leaf.state(i).amps for i in (0, 1)], axis=1)
        t = np.moveaxis(np.tensordot(cols, t, axes=([1], [m])), 0, m)
    return t


def oracle_dense(state: HTNState) -> Statevector:
    """sum_i psi_i |phi^{i_1}> x ... x |phi^{i_k}> (unnormalized)."""
    return Statevector(_tensor(state).reshape(-1), normalized=False)


def _apply_observables(t: np.ndarray, obs) -> np.ndarray:
    if obs is None or (isinstance(obs, str) and obs == "identity"):
        return t
    for m, o in enumerate(obs):
        if isinstance(o, str):
            o = None if o == "identity" else SubsystemObservable.from_paulis(o)
        if o is None:
            continue
        t = np.moveaxis(np.tensordot(o.dense(), t, axes=([1], [m])), 0, m)
    return t


def oracle_transition(s1: HTNState, s2: HTNState, obs=None) -> complex:
    """<psi_HT^(1)| O |psi_HT^(2)> / (|psi_HT^(1)| |psi_HT^(2)|) by dense algebra."""
    t1, t2 = _tensor(s1), _tensor(s2)
    bra = t1.reshape(-1)
    ket = _apply_observables(t2, obs).reshape(-1)
    return complex(np.vdot(bra, ket) / (np.linalg.norm(bra) * np.linalg.norm(t2)))


def oracle_expectation(state: HTNState, obs) -> float:
    t = _tensor(state)
    v = t.reshape(-1)
    return float(np.vdot(v, _apply_observables(t, obs).reshape(-1)).real / np.vdot(v, v).real)


def oracle_norm(state: HTNState) -> float:
    return float(np.linalg.norm(_tensor(state)))
