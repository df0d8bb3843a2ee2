"""Statevector simulation of the circuits used by the estimators.

Qubit 0 is the leftmost character of an outcome string and the most
significant bit of a basis index. The Hadamard-test ancilla is never stored:
its joint distribution with the system register is written down directly from
the two branch states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import CapacityError, ContractViolation
from .numkit import PAULI_LABELS, as_matrix, is_hermitian, is_unitary, num_qubits

#: Largest register a Statevector may span.
MAX_STATE_QUBITS = 20

ALPHA_REAL = 0.0
ALPHA_IMAG = np.pi / 2


@dataclass(frozen=True)
class Statevector:
    amps: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex).reshape(-1)
        d = a.shape[0]
        if d < 2 or d & (d - 1):
            raise ContractViolation(f"statevector length {d} is not 2^q with q >= 1")
        if d > 2**MAX_STATE_QUBITS:
            raise CapacityError(f"statevector exceeds {MAX_STATE_QUBITS} qubits")
        if self.normalized and abs(np.vdot(a, a).real - 1) > 1e-9:
            raise ContractViolation("statevector flagged normalized has norm != 1")
        a.flags.writeable = False
        object.__setattr__(self, "amps", a)

    @property
    def qubits(self) -> int:
        return self.amps.shape[0].bit_length() - 1

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amps, self.amps).real))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def basis_state(bits: str | int, qubits: int | None = None) -> Statevector:
    if isinstance(bits, str):
        qubits, index = len(bits), int(bits, 2)
    else:
        index = bits
    amps = np.zeros(2**qubits, dtype=complex)
    amps[index] = 1
    return Statevector(amps)


def prepare(unitary: np.ndarray, qubits: int) -> Statevector:
    """``unitary |0...0>`` on ``qubits`` qubits."""
    u = as_matrix(unitary, "unitary")
    if num_qubits(u) != qubits:
        raise ContractViolation(f"unitary acts on {num_qubits(u)} qubits, expected {qubits}")
    if not is_unitary(u, 1e-9):
        raise ContractViolation("prepare requires a unitary matrix")
    return Statevector(u[:, 0].copy())


def apply_local(state: Statevector, site: int, gate: np.ndarray, unitary: bool = True) -> Statevector:
    """Apply a 2x2 ``gate`` to qubit ``site``; pass ``unitary=False`` for oracle use."""
    if not 0 <= site < state.qubits:
        raise ContractViolation(f"site {site} out of range for {state.qubits} qubits")
    g = as_matrix(gate, "gate")
    if g.shape != (2, 2):
        raise ContractViolation("apply_local takes a 2x2 gate")
    if unitary and not is_unitary(g, 1e-9):
        raise ContractViolation("gate is not unitary; pass unitary=False to allow it")
    out = kernels.apply_1q(state.amps, site, state.qubits, g)
    return Statevector(out, normalized=state.normalized and unitary)


def apply_product(state: Statevector, gates) -> Statevector:
    """Apply one 2x2 unitary per qubit (``None`` skips a qubit)."""
    out = state
    for site, g in enumerate(gates):
        if g is not None:
            out = apply_local(out, site, g)
    return out


def marginal_probabilities(probs: np.ndarray, nqubits: int, measured) -> np.ndarray:
    """Marginalize a 2^n probability vector onto ``measured`` (in the given order)."""
    measured = tuple(measured)
    if not measured:
        return np.array([probs.sum()])
    t = probs.reshape([2] * nqubits)
    rest = tuple(q for q in range(nqubits) if q not in measured)
    if rest:
        t = t.sum(axis=rest)
    kept = sorted(measured)
    t = np.transpose(t, [kept.index(q) for q in measured])
    return t.reshape(-1)


@dataclass(frozen=True)
class HadamardTestSpec:
    branch0: Statevector
    branch1: Statevector
    alpha: float = ALPHA_REAL
    measured: tuple = ()

    def __post_init__(self):
        if self.branch0.qubits != self.branch1.qubits:
            raise ContractViolation("Hadamard-test branches live on different registers")
        measured = tuple(int(q) for q in self.measured)
        n = self.branch0.qubits
        if len(set(measured)) != len(measured) or any(not 0 <= q < n for q in measured):
            raise ContractViolation(f"measured subset {measured} invalid for {n} qubits")
        if not (np.isclose(self.alpha, ALPHA_REAL) or np.isclose(self.alpha, ALPHA_IMAG)):
            raise ContractViolation("alpha must be 0 or pi/2")
        object.__setattr__(self, "measured", measured)


@dataclass(frozen=True)
class JointOutcomeDistribution:
    """p(b, j) for ancilla outcome b and measured-system outcome j.

    ``probs[0]`` holds b = +1, ``probs[1]`` holds b = -1; columns are indexed by
    the measured bits read left to right in ``measured`` order.
    """

    probs: np.ndarray
    measured: tuple = field(default=())

    @property
    def entries(self) -> dict:
        width = len(self.measured)
        out = {}
        for row, b in enumerate((1, -1)):
            for j, p in enumerate(self.probs[row]):
                out[(b, format(j, f"0{width}b") if width else "")] = float(p)
        return out

    def ancilla_bias(self) -> np.ndarray:
        """sum_b b * p(b, j) for every system outcome j."""
        return self.probs[0] - self.probs[1]

    def weighted_mean(self, weights=None) -> float:
        """sum_j f(j) sum_b b p(b, j); ``weights=None`` means f == 1."""
        bias = self.ancilla_bias()
        return float(bias.sum() if weights is None else np.dot(weights, bias))

    def system_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)


def hadamard_test_distribution(spec: HadamardTestSpec) -> JointOutcomeDistribution:
    a = spec.branch0.amps
    c = np.exp(-1j * spec.alpha) * spec.branch1.amps
    n = spec.branch0.qubits
    plus = marginal_probabilities(np.abs(a + c) ** 2 / 4, n, spec.measured)
    minus = marginal_probabilities(np.abs(a - c) ** 2 / 4, n, spec.measured)
    return JointOutcomeDistribution(np.vstack([plus, minus]), spec.measured)


def sample(dist: JointOutcomeDistribution, shots: int, rng: np.random.Generator):
    """Draw ``shots`` i.i.d. outcomes; returns ``(b, j)`` arrays (b in {+1, -1})."""
    if shots < 1:
        raise ContractViolation("shots must be >= 1")
    flat = np.clip(np.asarray(dist.probs, dtype=float).reshape(-1), 0, None)
    total = flat.sum()
    if flat.size == 0 or total <= 0:
        raise ContractViolation("cannot sample from an empty distribution")
    width = dist.probs.shape[1]
    draws = rng.choice(flat.size, size=shots, p=flat / total)
    return np.where(draws < width, 1, -1), draws % width


def bitstrings(outcomes, width: int) -> list[str]:
    return [format(int(j), f"0{width}b") if width else "" for j in outcomes]


def pauli_masks(labels) -> tuple[int, int]:
    """(xmask, zmask) of a Pauli string; qubit q maps to bit (n - 1 - q)."""
    n = len(labels)
    xmask = zmask = 0
    for q, c in enumerate(labels):
        if c not in PAULI_LABELS:
            raise ContractViolation(f"unknown Pauli label {c!r}")
        bit = 1 << (n - 1 - q)
        if c in "XY":
            xmask |= bit
        if c in "ZY":
            zmask |= bit
    return xmask, zmask


def expectation_observable(state: Statevector, op) -> float:
    """<state|O|state> for a Pauli string (e.g. ``"XZ"``) or a Hermitian matrix."""
    if isinstance(op, str) or (isinstance(op, (list, tuple)) and all(isinstance(c, str) for c in op)):
        if len(op) != state.qubits:
            raise ContractViolation("Pauli string length does not match register")
        xm, zm = pauli_masks(op)
        val = kernels.pauli_overlaps(state.amps, state.amps, [xm], [zm])[0]
        return float(val.real)
    o = as_matrix(op, "observable")
    if o.shape[0] != state.amps.shape[0]:
        raise ContractViolation("observable dimension does not match register")
    if not is_hermitian(o, 1e-9):
        raise ContractViolation("observable must be Hermitian")
    return float(np.vdot(state.amps, o @ state.amps).real)
