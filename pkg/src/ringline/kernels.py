"""Backend selection for the sweep kernels.

The compiled extension (:mod:`ringline._kernels_cy`) is preferred when it was
built; otherwise the numpy fallback (:mod:`ringline._kernels_py`) is used.
Set ``RINGLINE_KERNELS=py`` or ``RINGLINE_KERNELS=cy`` to force a backend.
"""
from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("RINGLINE_KERNELS", "auto").lower()

if _forced == "py":
    _impl = _kernels_py
elif _forced == "cy":
    from . import _kernels_cy as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

eval_words_e = _impl.eval_words_e
eval_words_eword = _impl.eval_words_eword
eval_poly_words = _impl.eval_poly_words
batch_invertible = _impl.batch_invertible
right_unimodular = _impl.right_unimodular
identity_words_upto = _impl.identity_words_upto


def backend_name() -> str:
    """Name of the active kernel backend, ``"cy"`` or ``"py"``."""
    return _impl.BACKEND
