"""Kernel selection: the compiled ``_ckernels`` extension when it imports, else ``_kernels_py``.

Set ``MSSBOUND_PURE_PYTHON=1`` to force the fallback.
"""
import os

BACKEND = "python"

if os.environ.get("MSSBOUND_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import affine_mul_acc, sign_variations, signed_pairing, subset_mul  # noqa: F401

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import affine_mul_acc, sign_variations, signed_pairing, subset_mul  # noqa: F401
