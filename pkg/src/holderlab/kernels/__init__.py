"""Hot pair-supremum kernels with a numba fast path.

The seminorm estimators reduce to two loops: a weighted supremum over point
pairs and a weighted supremum over stencil combinations.  Both are compiled
with numba when it is available.  Set ``HOLDERLAB_BACKEND=numpy`` to force
the pure-numpy implementation, or ``HOLDERLAB_BACKEND=numba`` to fail hard
when numba cannot be imported; the default ("auto") tries numba first.

Both backends take the first maximizing index, so witnesses agree; values
may differ in the last few ulps because numpy vectorizes the reductions.
"""

import os

_choice = os.environ.get("HOLDERLAB_BACKEND", "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"HOLDERLAB_BACKEND must be auto|numba|numpy, got {_choice!r}")

HAS_NUMBA = False
if _choice in ("auto", "numba"):
    try:
        from ._numba import sup_pairs, sup_combos  # noqa: F401
        HAS_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise

if not HAS_NUMBA:
    from ._numpy import sup_pairs, sup_combos  # noqa: F401


def backend_name() -> str:
    return "numba" if HAS_NUMBA else "numpy"
