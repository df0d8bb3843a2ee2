"""Dense complex linear algebra for small qubit operators.

Matrices are plain ``complex128`` numpy arrays; :func:`as_matrix` is the single
validation gate (square, power-of-two dimension, finite entries). The factor
types below follow the ``M = U^dagger D U`` convention used throughout the
package, i.e. the *rotation* is the unitary that maps the operator's
eigenbasis onto the computational basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ContractViolation

#: Largest operator register (in qubits) numkit will materialize densely.
MAX_MATRIX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

PAULI_LABELS = ("I", "X", "Y", "Z")
PAULIS = (I2, X, Y, Z)
PAULI_BY_LABEL = dict(zip(PAULI_LABELS, PAULIS))


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a validated square complex matrix of dimension 2^q."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolation(f"{name} must be square, got shape {a.shape}")
    d = a.shape[0]
    if d < 1 or d & (d - 1):
        raise ContractViolation(f"{name} dimension {d} is not a power of two")
    if not np.all(np.isfinite(a)):
        raise ContractViolation(f"{name} has non-finite entries")
    return a


def num_qubits(m: np.ndarray) -> int:
    return int(m.shape[0]).bit_length() - 1


def unitarity_error(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(m: np.ndarray, tol: float = 1e-9) -> bool:
    return unitarity_error(m) <= tol


def is_hermitian(m: np.ndarray, tol: float = 1e-9) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if num_qubits(a) + num_qubits(b) > MAX_MATRIX_QUBITS:
        raise CapacityError(
            f"kron result would span {num_qubits(a) + num_qubits(b)} qubits "
            f"(cap {MAX_MATRIX_QUBITS})"
        )
    return np.kron(a, b)


def kron_all(mats) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m) if out.shape[0] == 1 else kron(out, m)
    return out


@dataclass(frozen=True)
class SpectralDecomposition:
    """``M = rotation^dagger @ diag(eigenvalues) @ rotation``, eigenvalues descending."""

    rotation: np.ndarray
    eigenvalues: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.rotation
        return u.conj().T @ np.diag(self.eigenvalues) @ u


@dataclass(frozen=True)
class SVDFactors:
    """``M = left^dagger @ diag(singulars) @ right`` with ``singulars[0] == opnorm``."""

    left: np.ndarray
    right: np.ndarray
    singulars: np.ndarray
    opnorm: float

    def reconstruct(self) -> np.ndarray:
        return self.left.conj().T @ np.diag(self.singulars) @ self.right


@dataclass(frozen=True)
class PauliDecomposition:
    """Coefficients of a 2x2 matrix in the (I, X, Y, Z) basis plus sampling data.

    ``probs`` and ``phases`` are the importance-sampling distribution
    ``|h_k| / gamma`` and the unit phases ``h_k / |h_k|`` (zero where h_k = 0).
    """

    coeffs: np.ndarray
    gamma: float
    probs: np.ndarray
    phases: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return sum(c * p for c, p in zip(self.coeffs, PAULIS))


def eig_hermitian(m: np.ndarray, tol: float = 1e-9) -> SpectralDecomposition:
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise ContractViolation("eig_hermitian requires a Hermitian matrix")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    # eigh is ascending; stable sort on -w keeps eigh's order among ties
    order = np.argsort(-w, kind="stable")
    return SpectralDecomposition(rotation=v[:, order].conj().T, eigenvalues=w[order])


def svd(m: np.ndarray) -> SVDFactors:
    m = as_matrix(m)
    d = m.shape[0]
    if not np.any(m):
        eye = np.eye(d, dtype=complex)
        return SVDFactors(eye, eye.copy(), np.zeros(d), 0.0)
    u, s, vh = np.linalg.svd(m)
    return SVDFactors(left=u.conj().T, right=vh, singulars=s, opnorm=float(s[0]))


def opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(m, dtype=complex), 2))


def pauli_decompose(n: np.ndarray) -> PauliDecomposition:
    n = as_matrix(n)
    if n.shape != (2, 2):
        raise ContractViolation(f"pauli_decompose needs a 2x2 matrix, got {n.shape}")
    coeffs = np.array([np.trace(p @ n) / 2 for p in PAULIS])
    mags = np.abs(coeffs)
    gamma = float(mags.sum())
    probs = mags / gamma if gamma > 0 else np.zeros(4)
    phases = np.where(mags > 0, np.angle(coeffs), 0.0)
    return PauliDecomposition(coeffs=coeffs, gamma=gamma, probs=probs, phases=phases)


def haar_random_unitary(q: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary on ``q`` qubits.

    QR of an i.i.d. complex Gaussian matrix, with Q's columns rephased by the
    phases of R's diagonal so the result does not depend on LAPACK's sign
    convention.
    """
    if q < 1:
        raise ContractViolation("haar_random_unitary needs q >= 1")
    if q > MAX_MATRIX_QUBITS:
        raise CapacityError(f"q={q} exceeds cap {MAX_MATRIX_QUBITS}")
    d = 2**q
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    qm, r = np.linalg.qr(z)
    diag = np.diag(r)
    return qm * (diag / np.abs(diag))


def random_pauli_string(q: int, rng: np.random.Generator) -> list[str]:
    if q < 1:
        raise ContractViolation("random_pauli_string needs q >= 1")
    return [PAULI_LABELS[i] for i in rng.integers(0, 4, size=q)]


def pauli_string_matrix(labels) -> np.ndarray:
    return kron_all(PAULI_BY_LABEL[c] for c in labels)
