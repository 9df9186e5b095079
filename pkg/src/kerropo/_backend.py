"""Kernel backend selection: compiled extension if importable, numpy otherwise.

Set KERROPO_PURE_PYTHON=1 to force the numpy fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("KERROPO_PURE_PYTHON"):
    from . import _fallback as kernels

    COMPILED = False
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from . import _fallback as kernels

        COMPILED = False

cn_evolve = kernels.cn_evolve
wigner_clenshaw = kernels.wigner_clenshaw


def backend_name() -> str:
    return "compiled" if COMPILED else "numpy"
