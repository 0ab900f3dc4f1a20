"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``JETPOISSON_PURE=1`` to force the pure-Python kernel (used by the
benchmark and by tests that compare the two backends).
"""

import os

if os.environ.get("JETPOISSON_PURE"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

BACKEND = kernel.BACKEND

rat_norm = kernel.rat_norm
rat_add = kernel.rat_add
rat_mul = kernel.rat_mul
key_mul = kernel.key_mul
poly_add = kernel.poly_add
poly_sub = kernel.poly_sub
poly_neg = kernel.poly_neg
poly_mul = kernel.poly_mul
poly_scale = kernel.poly_scale
poly_iadd_mul = kernel.poly_iadd_mul
