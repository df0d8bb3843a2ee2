"""Data model of a two-layer quantum-quantum tree tensor network.

A state is a k-qubit root preparation ``U_M`` plus k leaf maps. Leaf ``m``
turns the classical index bit ``i_m`` into an n-qubit state ``|phi^{i_m}>``,
either through a pair of indexed unitaries or through one unitary applied to
``|i_m>|0...0>``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ContractViolation
from ..numkit import (
    PAULI_BY_LABEL,
    SpectralDecomposition,
    as_matrix,
    eig_hermitian,
    is_hermitian,
    is_unitary,
    kron_all,
    num_qubits,
    opnorm,
    unitarity_error,
)
from ..statesim import Statevector, apply_product, prepare

UNITARY_TOL = 1e-9


def _checked_unitary(m, name: str) -> np.ndarray:
    u = as_matrix(m, name)
    if not is_unitary(u, UNITARY_TOL):
        raise ContractViolation(f"{name} is not unitary (max deviation {unitarity_error(u):.3e})")
    u.flags.writeable = False
    return u


@dataclass(frozen=True)
class IndexedUnitary:
    """Leaf with ``|phi^i> = U^i |0...0>``."""

    u0: np.ndarray
    u1: np.ndarray

    def __post_init__(self):
        u0 = _checked_unitary(self.u0, "u0")
        u1 = _checked_unitary(self.u1, "u1")
        if u0.shape != u1.shape:
            raise ContractViolation("u0 and u1 act on different registers")
        object.__setattr__(self, "u0", u0)
        object.__setattr__(self, "u1", u1)

    @property
    def qubits(self) -> int:
        return num_qubits(self.u0)

    def state(self, i: int) -> Statevector:
        return prepare(self.u1 if i else self.u0, self.qubits)


@dataclass(frozen=True)
class InitStateMapped:
    """Leaf with ``|phi^i> = U |i>|0...0>``; the two leaf states are orthogonal."""

    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "u", _checked_unitary(self.u, "u"))

    @property
    def qubits(self) -> int:
        return num_qubits(self.u)

    def input_state(self, amp0: complex, amp1: complex) -> Statevector:
        """``U (amp0|0> + amp1|1>)|0...0>``, used for the |+> and |+y> settings."""
        d = self.u.shape[0]
        v = np.zeros(d, dtype=complex)
        v[0], v[d // 2] = amp0, amp1
        return Statevector(self.u @ v)

    def state(self, i: int) -> Statevector:
        return self.input_state(1 - i, i)


SubsystemMap = Union[IndexedUnitary, InitStateMapped]


@dataclass(frozen=True)
class HTNState:
    root: np.ndarray
    leaves: tuple

    def __post_init__(self):
        root = _checked_unitary(self.root, "root")
        leaves = tuple(self.leaves)
        if num_qubits(root) != len(leaves):
            raise ContractViolation(
                f"root acts on {num_qubits(root)} qubits but {len(leaves)} leaves were given"
            )
        if len({leaf.qubits for leaf in leaves}) != 1:
            raise ContractViolation("all leaves must have the same qubit count")
        object.__setattr__(self, "root", root)
        object.__setattr__(self, "leaves", leaves)

    @property
    def k(self) -> int:
        return len(self.leaves)

    @property
    def n(self) -> int:
        return self.leaves[0].qubits

    @property
    def orthogonal_leaves(self) -> bool:
        return all(isinstance(leaf, InitStateMapped) for leaf in self.leaves)


class SubsystemObservable:
    """Hermitian observable on one n-qubit subsystem.

    Either a product of single-qubit factors (measured qubit-by-qubit in each
    factor's eigenbasis) or a general 2^n x 2^n matrix (measured in its own
    eigenbasis).
    """

    def __init__(self, factors=None, matrix=None):
        if (factors is None) == (matrix is None):
            raise ContractViolation("give exactly one of factors or matrix")
        if factors is not None:
            self.factors = tuple(as_matrix(f, "factor") for f in factors)
            if not self.factors or any(f.shape != (2, 2) for f in self.factors):
                raise ContractViolation("observable factors must be 2x2")
            if not all(is_hermitian(f, 1e-9) for f in self.factors):
                raise ContractViolation("observable factors must be Hermitian")
            self.matrix = None
            self._decomps = tuple(eig_hermitian(f) for f in self.factors)
            self.qubits = len(self.factors)
        else:
            self.matrix = as_matrix(matrix, "observable")
            if not is_hermitian(self.matrix, 1e-9):
                raise ContractViolation("observable must be Hermitian")
            self.factors = None
            self._decomps = (eig_hermitian(self.matrix),)
            self.qubits = num_qubits(self.matrix)

    @classmethod
    def from_paulis(cls, labels: str) -> "SubsystemObservable":
        try:
            return cls(factors=[PAULI_BY_LABEL[c] for c in labels])
        except KeyError as exc:
            raise ContractViolation(f"unknown Pauli label in {labels!r}") from exc

    @classmethod
    def identity(cls, n: int) -> "SubsystemObservable":
        return cls.from_paulis("I" * n)

    @property
    def is_identity(self) -> bool:
        mats = self.factors if self.factors is not None else (self.matrix,)
        return all(np.allclose(m, np.eye(m.shape[0]), atol=1e-12) for m in mats)

    @property
    def decompositions(self) -> tuple[SpectralDecomposition, ...]:
        return self._decomps

    def dense(self) -> np.ndarray:
        return kron_all(self.factors) if self.factors is not None else self.matrix

    def opnorm(self) -> float:
        if self.factors is not None:
            return float(np.prod([opnorm(f) for f in self.factors]))
        return opnorm(self.matrix)

    def outcome_values(self) -> np.ndarray:
        """Measured value for each computational outcome after :meth:`rotate`."""
        return kron_all(np.diag(d.eigenvalues) for d in self._decomps).diagonal().real.copy()

    def rotate(self, state: Statevector) -> Statevector:
        if self.factors is not None:
            return apply_product(state, [d.rotation for d in self._decomps])
        return Statevector(self._decomps[0].rotation @ state.amps)

    def __repr__(self):
        kind = "factors" if self.factors is not None else "matrix"
        return f"SubsystemObservable({kind}, qubits={self.qubits})"


class Role(enum.Enum):
    HERMITIAN_M = "hermitian-M"
    OVERLAP_MA = "overlap-MA"
    NONHERMITIAN_N = "nonhermitian-N"


@dataclass(frozen=True)
class ContractedMatrix:
    entries: np.ndarray
    role: Role

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        if e.shape != (2, 2):
            raise ContractViolation("contracted matrices are 2x2")
        if self.role in (Role.HERMITIAN_M, Role.OVERLAP_MA) and not is_hermitian(e, 1e-8):
            raise ContractViolation(f"{self.role.value} matrix is not Hermitian")
        if self.role is Role.OVERLAP_MA and not np.allclose(e.diagonal(), 1, atol=1e-8):
            raise ContractViolation("overlap matrix must have unit diagonal")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def hermitian(self) -> bool:
        return self.role is not Role.NONHERMITIAN_N or is_hermitian(self.entries, 1e-12)
