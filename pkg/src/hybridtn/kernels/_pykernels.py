"""Pure numpy implementations of the hot kernels.

Signatures and results match ``_ckernels.pyx`` exactly; this module is what
runs when the compiled extension is unavailable or disabled.
"""

import numpy as np

_CHUNK = 4096


def apply_1q(amps, site, nqubits, gate):
    a = np.asarray(amps, dtype=complex).reshape(2**site, 2, 2 ** (nqubits - site - 1))
    return np.einsum("ab,ibj->iaj", np.asarray(gate, dtype=complex), a).reshape(-1)


def _parity_table(dim):
    idx = np.arange(dim, dtype=np.int64)
    par = np.zeros(dim, dtype=np.int64)
    while np.any(idx):
        par ^= idx & 1
        idx >>= 1
    return par


def pauli_overlaps(psi1, psi2, xmasks, zmasks):
    """<psi1| P |psi2> for each Pauli string encoded by (xmask, zmask) bit pairs.

    Bit ``q`` of a mask refers to basis-index bit ``q`` (so the leftmost qubit
    is the most significant bit). Y on a qubit sets both bits.
    """
    psi1 = np.asarray(psi1, dtype=complex)
    psi2 = np.asarray(psi2, dtype=complex)
    xmasks = np.asarray(xmasks, dtype=np.int64)
    zmasks = np.asarray(zmasks, dtype=np.int64)
    dim = psi1.shape[0]
    idx = np.arange(dim, dtype=np.int64)
    parity = _parity_table(dim)
    ny = _parity_popcount(xmasks & zmasks)
    out = np.empty(xmasks.shape[0], dtype=complex)
    for lo in range(0, xmasks.shape[0], _CHUNK):
        xm = xmasks[lo:lo + _CHUNK, None]
        zm = zmasks[lo:lo + _CHUNK, None]
        sign = 1 - 2 * parity[idx[None, :] & zm]
        bra = psi1.conj()[idx[None, :] ^ xm]
        out[lo:lo + _CHUNK] = np.sum(bra * sign * psi2[None, :], axis=1)
    return out * (1j ** (ny % 4))


def _parity_popcount(v):
    v = np.array(v, dtype=np.int64)
    count = np.zeros_like(v)
    while np.any(v):
        count += v & 1
        v >>= 1
    return count


def opnorm_gamma_2x2(mats):
    """Operator norm and Pauli one-norm for a stack of 2x2 complex matrices."""
    m = np.asarray(mats, dtype=complex).reshape(-1, 2, 2)
    norms = np.linalg.svd(m, compute_uv=False)[:, 0]
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    gamma = (np.abs(a + d) + np.abs(b + c) + np.abs(b - c) + np.abs(a - d)) / 2
    return norms, gamma
