"""Backend selection for the pixel kernels.

The compiled core (``_ckernels``) is used when it imports; otherwise the numpy
fallback. Set ``FPDETECT_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    if os.environ.get("FPDETECT_PURE_PYTHON", "") not in ("", "0"):
        return None
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


compiled = _load_compiled()
backend: ModuleType = compiled if compiled is not None else _pykernels
BACKEND = backend.NAME


def available_backends() -> dict[str, ModuleType]:
    found = {"numpy": _pykernels}
    if compiled is not None:
        found["cython"] = compiled
    return found


def _u8(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.uint8)


def _i32(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int32)


def box_mean3(img, *, impl: ModuleType | None = None) -> np.ndarray:
    return (impl or backend).box_mean3(_u8(img))


def candidate_mask(binary, *, impl: ModuleType | None = None) -> np.ndarray:
    return (impl or backend).candidate_mask(_u8(binary))


def masked_sobel(img, mask, *, impl: ModuleType | None = None) -> tuple[np.ndarray, np.ndarray]:
    return (impl or backend).masked_sobel(_u8(img), _u8(mask))


def block_sums(gx, gy, w: int, *, impl: ModuleType | None = None) -> tuple[np.ndarray, np.ndarray]:
    return (impl or backend).block_sums(_i32(gx), _i32(gy), int(w))


def histogram(img, *, impl: ModuleType | None = None) -> np.ndarray:
    return (impl or backend).histogram(_u8(img))
