"""Root-level contraction of k contracted 2x2 matrices.

``contract_hermitian`` handles Hermitian matrices by measuring in their
eigenbases. ``contract_svd`` and ``contract_montecarlo`` both estimate
``<psi1| N_1 x ... x N_k |psi2>`` for arbitrary 2x2 matrices: the first by
pushing the SVD unitaries into the two Hadamard-test branches and weighting
outcomes by rescaled singular values, the second by importance-sampling
Pauli strings from each matrix's Pauli decomposition.
"""

from __future__ import annotations

import itertools

import numpy as np

from .. import kernels
from ..errors import CapacityError, ContractViolation
from ..numkit import eig_hermitian, is_hermitian, kron_all, pauli_decompose, svd
from ..statesim import (
    ALPHA_IMAG,
    ALPHA_REAL,
    HadamardTestSpec,
    apply_product,
    hadamard_test_distribution,
    prepare,
    sample,
)
from .estimation import EstimationConfig, ShotEstimate, exact_estimate, mean_and_stderr
from .model import ContractedMatrix, Role

#: Largest k for which contract_montecarlo will enumerate all 4^k Pauli strings.
MC_EXACT_CAP = 8


def _entries(mats):
    return [m.entries if isinstance(m, ContractedMatrix) else np.asarray(m, dtype=complex)
            for m in mats]


def _check_root(root, k):
    if np.asarray(root).shape != (2**k, 2**k):
        raise ContractViolation(f"root must be {2**k}x{2**k} for k={k} matrices")


def _diag_weights(vectors) -> np.ndarray:
    return kron_all(np.diag(v) for v in vectors).diagonal().real.copy()


def contract_hermitian(root, mats, cfg: EstimationConfig) -> ShotEstimate:
    """<psi| M_1 x ... x M_k |psi> with psi = root|0...0>."""
    k = len(mats)
    _check_root(root, k)
    for m in mats:
        if isinstance(m, ContractedMatrix) and m.role is Role.NONHERMITIAN_N and not m.hermitian:
            raise ContractViolation("contract_hermitian got a non-Hermitian N matrix")
    ents = _entries(mats)
    if not all(is_hermitian(e, 1e-8) for e in ents):
        raise ContractViolation("contract_hermitian needs Hermitian matrices")
    decomps = [eig_hermitian(e, 1e-8) for e in ents]
    psi = apply_product(prepare(root, k), [d.rotation for d in decomps])
    values = _diag_weights([d.eigenvalues for d in decomps])
    probs = psi.probabilities()
    if cfg.exact:
        return exact_estimate(float(np.dot(probs, values)))
    rng = cfg.rng()
    draws = rng.choice(probs.size, size=cfg.shots, p=probs / probs.sum())
    mean, se = mean_and_stderr(values[draws])
    return ShotEstimate(mean.real, se, cfg.shots, cfg.seed)


def _split_shots(cfg: EstimationConfig, rng):
    """Number of real-part shots; the remainder goes to the imaginary part."""
    if cfg.split == "stratified":
        if cfg.shots < 2:
            raise ContractViolation("stratified split needs at least 2 shots")
        return cfg.shots // 2
    return int(rng.binomial(cfg.shots, 0.5))


def contract_svd(root1, root2, mats, cfg: EstimationConfig) -> ShotEstimate:
    k = len(mats)
    _check_root(root1, k)
    _check_root(root2, k)
    factors = [svd(e) for e in _entries(mats)]
    if any(f.opnorm == 0 for f in factors):
        return ShotEstimate(0.0, 0.0, 0 if cfg.exact else cfg.shots, None if cfg.exact else cfg.seed)

    scale = float(np.prod([f.opnorm for f in factors]))
    weights = _diag_weights([f.singulars / f.opnorm for f in factors])
    phi0 = apply_product(prepare(root1, k), [f.left for f in factors])
    phi1 = apply_product(prepare(root2, k), [f.right for f in factors])
    every = tuple(range(k))
    dist_re = hadamard_test_distribution(HadamardTestSpec(phi0, phi1, ALPHA_REAL, every))
    dist_im = hadamard_test_distribution(HadamardTestSpec(phi0, phi1, ALPHA_IMAG, every))

    if cfg.exact:
        return exact_estimate(scale * complex(dist_re.weighted_mean(weights),
                                              dist_im.weighted_mean(weights)))

    rng = cfg.rng()
    n_re = _split_shots(cfg, rng)
    n_im = cfg.shots - n_re
    parts = []
    for dist, n in ((dist_re, n_re), (dist_im, n_im)):
        if n == 0:
            parts.append(np.empty(0))
            continue
        b, j = sample(dist, n, rng)
        parts.append(scale * weights[j] * b)

    if cfg.split == "stratified":
        re, se_re = mean_and_stderr(parts[0])
        im, se_im = mean_and_stderr(parts[1])
        return ShotEstimate(complex(re.real, im.real), np.hypot(se_re, se_im), cfg.shots, cfg.seed)
    mu = np.concatenate([2 * parts[0], 2j * parts[1]])
    mean, se = mean_and_stderr(mu)
    return ShotEstimate(mean, se, cfg.shots, cfg.seed)


def _string_masks(indices: np.ndarray):
    """(xmask, zmask) for rows of Pauli indices (0=I, 1=X, 2=Y, 3=Z), qubit 0 = MSB."""
    k = indices.shape[1]
    bits = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    xbit = (indices == 1) | (indices == 2)
    zbit = (indices == 2) | (indices == 3)
    return (xbit * bits).sum(axis=1), (zbit * bits).sum(axis=1)


def contract_montecarlo(root1, root2, mats, cfg: EstimationConfig) -> ShotEstimate:
    k = len(mats)
    _check_root(root1, k)
    _check_root(root2, k)
    decomps = [pauli_decompose(e) for e in _entries(mats)]
    if any(d.gamma == 0 for d in decomps):
        return ShotEstimate(0.0, 0.0, 0 if cfg.exact else cfg.shots, None if cfg.exact else cfg.seed)

    gamma = float(np.prod([d.gamma for d in decomps]))
    psi1 = prepare(root1, k).amps
    psi2 = prepare(root2, k).amps
    probs = np.array([d.probs for d in decomps])
    phases = np.array([d.phases for d in decomps])

    if cfg.exact:
        if k > MC_EXACT_CAP:
            raise CapacityError(f"exact Monte-Carlo enumeration capped at k={MC_EXACT_CAP}")
        strings = np.array(list(itertools.product(range(4), repeat=k)), dtype=np.int64)
        p = np.prod(probs[np.arange(k), strings], axis=1)
        keep = p > 0
        strings, p = strings[keep], p[keep]
        phase = np.exp(1j * phases[np.arange(k), strings].sum(axis=1))
        z = kernels.pauli_overlaps(psi1, psi2, *_string_masks(strings))
        # ancilla bias at alpha=0 is Re z, at alpha=pi/2 it is Im z
        return exact_estimate(gamma * np.sum(p * phase * (z.real + 1j * z.imag)))

    rng = cfg.rng()
    strings = np.stack(
        [rng.choice(4, size=cfg.shots, p=probs[m]) for m in range(k)], axis=1
    )
    codes = strings @ (4 ** np.arange(k - 1, -1, -1))
    uniq, first, inverse = np.unique(codes, return_index=True, return_inverse=True)
    z = kernels.pauli_overlaps(psi1, psi2, *_string_masks(strings[first]))[inverse]
    phase = np.exp(1j * phases[np.arange(k), strings].sum(axis=1))

    n_re = _split_shots(cfg, rng)
    is_re = np.zeros(cfg.shots, dtype=bool)
    if cfg.split == "stratified":
        is_re[:n_re] = True
    else:
        is_re[rng.permutation(cfg.shots)[:n_re]] = True
    bias = np.where(is_re, z.real, z.imag)
    b = np.where(rng.random(cfg.shots) < (1 + bias) / 2, 1, -1)
    vals = gamma * phase * b

    if cfg.split == "stratified":
        re, se_re = mean_and_stderr(vals[is_re])
        im, se_im = mean_and_stderr(vals[~is_re])
        return ShotEstimate(re + 1j * im, np.hypot(se_re, se_im), cfg.shots, cfg.seed)
    mu = np.where(is_re, 2 * vals, 2j * vals)
    mean, se = mean_and_stderr(mu)
    return ShotEstimate(mean, se, cfg.shots, cfg.seed)
