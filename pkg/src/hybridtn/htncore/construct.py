"""Construction of the 2x2 contracted matrices from leaf-level measurements.

In shot mode the construction budget ``cfg.shots`` is split evenly across the
measurement settings of one matrix (4 for M, 2 for M_A, 8 for N); setting
``s`` draws from substream ``cfg.stream + (s,)``.
"""

from __future__ import annotations

import numpy as np

from ..errors import ContractViolation
from .estimation import EstimationConfig, direct_measurement, hadamard_complex
from .model import ContractedMatrix, IndexedUnitary, InitStateMapped, Role, SubsystemObservable

_SQRT_HALF = 1 / np.sqrt(2)


def _settings(cfg: EstimationConfig, count: int):
    per = cfg.shots // count if not cfg.exact else 0
    return [cfg.child(s, shots=per) for s in range(count)]


def _check_dims(leaf, obs):
    if obs is not None and obs.qubits != leaf.qubits:
        raise ContractViolation(
            f"observable acts on {obs.qubits} qubits, leaf has {leaf.qubits}"
        )


def build_M(leaf, obs: SubsystemObservable, cfg: EstimationConfig) -> ContractedMatrix:
    """M^{i'i} = <phi^{i'}| O |phi^i> for one leaf."""
    if obs is None:
        raise ContractViolation("build_M needs an observable (use build_MA for the overlap)")
    _check_dims(leaf, obs)
    values = obs.outcome_values()
    every = tuple(range(leaf.qubits))

    if isinstance(leaf, InitStateMapped):
        cfgs = _settings(cfg, 4)
        inputs = [(1, 0), (0, 1), (_SQRT_HALF, _SQRT_HALF), (_SQRT_HALF, 1j * _SQRT_HALF)]
        e00, e11, e_plus, e_plusy = (
            direct_measurement(obs.rotate(leaf.input_state(a0, a1)), values, every, c)[0]
            for (a0, a1), c in zip(inputs, cfgs)
        )
        m01 = (1j - 1) / 2 * (e00 + e11) + e_plus - 1j * e_plusy
    elif isinstance(leaf, IndexedUnitary):
        cfgs = _settings(cfg, 4)
        phi0 = obs.rotate(leaf.state(0))
        phi1 = obs.rotate(leaf.state(1))
        e00 = direct_measurement(phi0, values, every, cfgs[0])[0]
        e11 = direct_measurement(phi1, values, every, cfgs[1])[0]
        m01 = hadamard_complex(phi0, phi1, values, every, cfgs[2], cfgs[3])[0]
    else:
        raise ContractViolation(f"unsupported leaf type {type(leaf).__name__}")

    entries = np.array([[e00, m01], [np.conj(m01), e11]], dtype=complex)
    return ContractedMatrix(entries, Role.HERMITIAN_M)


def build_MA(leaf, cfg: EstimationConfig) -> ContractedMatrix:
    """M_A^{i'i} = <phi^{i'}|phi^i>; identity without measurement for orthogonal leaves."""
    if isinstance(leaf, InitStateMapped):
        return ContractedMatrix(np.eye(2), Role.OVERLAP_MA)
    cfgs = _settings(cfg, 2)
    m01 = hadamard_complex(leaf.state(0), leaf.state(1), None, (), cfgs[0], cfgs[1])[0]
    return ContractedMatrix(np.array([[1, m01], [np.conj(m01), 1]]), Role.OVERLAP_MA)


def build_N(leaf1, leaf2, obs, cfg: EstimationConfig) -> ContractedMatrix:
    """N^{i'i} = <phi^{i'(1)}| O |phi^{i(2)}>, all four entries measured.

    ``obs=None`` (or an identity observable) gives the overlap matrix and skips
    the system measurement.
    """
    if leaf1.qubits != leaf2.qubits:
        raise ContractViolation("leaves of the two states have different qubit counts")
    _check_dims(leaf1, obs)
    if obs is None or obs.is_identity:
        weights, measured = None, ()
        states1 = [leaf1.state(i) for i in (0, 1)]
        states2 = [leaf2.state(i) for i in (0, 1)]
    else:
        weights, measured = obs.outcome_values(), tuple(range(leaf1.qubits))
        states1 = [obs.rotate(leaf1.state(i)) for i in (0, 1)]
        states2 = [obs.rotate(leaf2.state(i)) for i in (0, 1)]

    cfgs = _settings(cfg, 8)
    entries = np.empty((2, 2), dtype=complex)
    for ip in (0, 1):
        for i in (0, 1):
            s = 2 * (2 * ip + i)
            entries[ip, i] = hadamard_complex(
                states1[ip], states2[i], weights, measured, cfgs[s], cfgs[s + 1]
            )[0]
    return ContractedMatrix(entries, Role.NONHERMITIAN_N)
