"""Select the compiled tableau kernels when available.

Set ``EEF_PURE_PYTHON=1`` to force the reference implementation.
"""

import os

BACKEND = "python"

if os.environ.get("EEF_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import complement_basic_row, complement_column, pivot, ratio_test
else:
    try:
        from ._ckernels import complement_basic_row, complement_column, pivot, ratio_test

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import complement_basic_row, complement_column, pivot, ratio_test

__all__ = ["BACKEND", "complement_basic_row", "complement_column", "pivot", "ratio_test"]
