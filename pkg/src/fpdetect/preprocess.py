"""Frame smoothing (the fast path) and the classical enhancement alternatives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from . import kernels
from .errors import ZeroVarianceError
from .imageio import GrayImage


@dataclass(frozen=True)
class LowPass:
    pass


@dataclass(frozen=True)
class HistogramEqualize:
    pass


@dataclass(frozen=True)
class Normalize:
    target_mean: float = 100.0
    target_variance: float = 1000.0

    def __post_init__(self) -> None:
        if not self.target_variance > 0:
            raise ValueError("target_variance must be positive")


PreprocessMode = Union[LowPass, HistogramEqualize, Normalize]


def low_pass_filter(img: GrayImage) -> GrayImage:
    """3x3 box mean with edge replication, integer rounding half up."""
    return GrayImage(kernels.box_mean3(img.pixels))


def histogram_equalize(img: GrayImage) -> GrayImage:
    """Remap intensities through the normalised cumulative histogram.

    ``out = round(255 * (cdf(v) - cdf_min) / (N - cdf_min))``, where
    ``cdf_min`` is the cumulative count at the lowest occupied level. A
    constant image is returned unchanged.
    """
    hist = np.bincount(img.pixels.ravel(), minlength=256).astype(np.int64)
    cdf = np.cumsum(hist)
    n = int(cdf[-1])
    cdf_min = int(cdf[np.flatnonzero(hist)[0]])
    denom = n - cdf_min
    if denom == 0:
        return img
    num = 255 * (cdf - cdf_min)
    # round half up in integers: floor((2 num + denom) / (2 denom))
    lut = np.clip((2 * num + denom) // (2 * denom), 0, 255).astype(np.uint8)
    return GrayImage(lut[img.pixels])


def normalize(img: GrayImage, target_mean: float, target_variance: float) -> GrayImage:
    """Mean/variance normalisation, clamped to 0..255."""
    if not target_variance > 0:
        raise ValueError("target_variance must be positive")
    v = img.pixels.astype(np.float64)
    mean = float(v.mean())
    var = float(v.var())
    if var == 0:
        raise ZeroVarianceError("cannot normalise a constant image")
    dev = np.sqrt(target_variance * (v - mean) ** 2 / var)
    out = np.where(v > mean, target_mean + dev, target_mean - dev)
    return GrayImage(np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8))


def apply(img: GrayImage, mode: PreprocessMode) -> GrayImage:
    if isinstance(mode, LowPass):
        return low_pass_filter(img)
    if isinstance(mode, HistogramEqualize):
        return histogram_equalize(img)
    if isinstance(mode, Normalize):
        return normalize(img, mode.target_mean, mode.target_variance)
    raise TypeError(f"unknown preprocess mode {mode!r}")


def parse_mode(name: Literal["lowpass", "equalize", "normalize"] | str) -> PreprocessMode:
    table = {"lowpass": LowPass(), "equalize": HistogramEqualize(), "normalize": Normalize()}
    try:
        return table[name]
    except KeyError:
        raise ValueError(f"unknown preprocess mode {name!r}; choose from {sorted(table)}") from None


