import numpy as np
import pytest

from hybridtn import kernels


def power_iteration_opnorm(m, iters=500, seed=0):
    """Largest singular value via power iteration on M^dagger M (independent of SVD)."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(m.shape[1]) + 1j * rng.standard_normal(m.shape[1])
    v /= np.linalg.norm(v)
    for _ in range(iters):
        w = m.conj().T @ (m @ v)
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        v = w / nrm
    return float(np.linalg.norm(m @ v))


def sampled_opnorm(m, count=10_000, seed=0):
    """max ||Mv|| over random unit vectors; a lower bound that converges from below."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((count, m.shape[1])) + 1j * rng.standard_normal((count, m.shape[1]))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return float(np.max(np.linalg.norm(v @ m.T, axis=1)))


def random_complex(shape, rng):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(d, rng):
    a = random_complex((d, d), rng)
    return (a + a.conj().T) / 2


def random_state(q, rng):
    v = random_complex(2**q, rng)
    return v / np.linalg.norm(v)


@pytest.fixture(params=sorted(kernels.backends()))
def backend(request):
    return kernels.backends()[request.param]
