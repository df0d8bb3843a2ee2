"""Hot kernels with a compiled fast path.

The Cython extension ``_ckernels`` is used when it imported cleanly; otherwise
(or when ``HYBRIDTN_PURE_PYTHON=1``) the numpy versions in ``_pykernels`` are
bound instead. ``BACKEND`` records which one is live.
"""

import os

from . import _pykernels

_compiled = None
if os.environ.get("HYBRIDTN_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

_impl = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"

apply_1q = _impl.apply_1q
pauli_overlaps = _impl.pauli_overlaps
opnorm_gamma_2x2 = _impl.opnorm_gamma_2x2


def backends():
    """Available kernel modules by name, for tests and benchmarks."""
    found = {"python": _pykernels}
    if _compiled is not None:
        found["cython"] = _compiled
    return found
