"""Kernel selector: compiled extension when available, pure Python otherwise.

``pleatlab.kernel.IMPLEMENTATION`` reports which backend was picked
("cython" or "python").  Set the environment variable
``PLEATLAB_PURE_PYTHON=1`` before import to force the fallback, e.g. for
benchmarking one against the other.
"""

import os

if os.environ.get("PLEATLAB_PURE_PYTHON"):
    from pleatlab import _kernel_py as _impl
else:
    try:
        from pleatlab import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from pleatlab import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

mat_mul = _impl.mat_mul
mat_inv = _impl.mat_inv
mat_conj = _impl.mat_conj
mat_det = _impl.mat_det
mat_trace = _impl.mat_trace
normalize_unimodular = _impl.normalize_unimodular
apply_mobius = _impl.apply_mobius
eval_word = _impl.eval_word
