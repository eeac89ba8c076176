"""Grayscale frames: PGM/raw codecs and centered region-of-interest crops."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    ImageShapeError,
    MalformedHeaderError,
    MaxvalError,
    RawLengthError,
    RoiTooSmallError,
    TruncatedPayloadError,
)

MIN_SIDE = 3


def _frozen_u8(pixels) -> np.ndarray:
    arr = np.array(pixels, dtype=np.uint8, copy=True, order="C")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Immutable 8-bit grayscale frame, indexed ``pixels[y, x]``."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ImageShapeError(f"expected a 2-D pixel array, got {arr.ndim}-D")
        if arr.shape[0] < MIN_SIDE or arr.shape[1] < MIN_SIDE:
            raise ImageShapeError(f"image must be at least 3x3, got {arr.shape[1]}x{arr.shape[0]}")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ImageShapeError("pixel values must lie in 0..255")
        object.__setattr__(self, "pixels", _frozen_u8(arr))

    @classmethod
    def from_bytes(cls, data: bytes, width: int, height: int) -> "GrayImage":
        if width * height != len(data):
            raise ImageShapeError(f"{len(data)} bytes cannot fill {width}x{height}")
        return cls(np.frombuffer(data, dtype=np.uint8).reshape(height, width))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def size(self) -> tuple[int, int]:
        return self.width, self.height

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __hash__(self) -> int:
        return hash((self.pixels.shape, self.pixels.tobytes()))

    def __repr__(self) -> str:
        return f"GrayImage({self.width}x{self.height})"


# header tokens are separated by whitespace; '#' starts a comment running to end of line
_TOKEN = re.compile(rb"\s*(?:#[^\n\r]*[\n\r]\s*)*(\S+)")


def _header_fields(data: bytes) -> tuple[list[bytes], int]:
    fields = []
    pos = 0
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise MalformedHeaderError("PGM header ends early")
        fields.append(m.group(1))
        pos = m.end()
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\n", b"\r"):
        raise MalformedHeaderError("missing whitespace after maxval")
    return fields, pos + 1


def load_pgm(data: bytes) -> GrayImage:
    """Decode a binary (P5) portable graymap with maxval <= 255."""
    fields, offset = _header_fields(bytes(data))
    if fields[0] != b"P5":
        raise MalformedHeaderError(f"not a binary PGM (magic {fields[0][:8]!r})")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError as exc:
        raise MalformedHeaderError("non-numeric PGM header field") from exc
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"bad dimensions {width}x{height}")
    if not 0 < maxval <= 255:
        raise MaxvalError(f"maxval {maxval} not in 1..255")
    payload = data[offset:]
    need = width * height
    if len(payload) < need:
        raise TruncatedPayloadError(f"expected {need} payload bytes, got {len(payload)}")
    return GrayImage.from_bytes(bytes(payload[:need]), width, height)


def save_pgm(img: GrayImage) -> bytes:
    """Canonical P5 encoding: single spaces, maxval 255, no comments."""
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.tobytes()


def load_raw(data: bytes, width: int, height: int) -> GrayImage:
    """Wrap a headerless row-major 8-bit buffer."""
    if len(data) != width * height:
        raise RawLengthError(f"raw buffer has {len(data)} bytes, expected {width}x{height}={width * height}")
    return GrayImage.from_bytes(bytes(data), width, height)


def save_raw(img: GrayImage) -> bytes:
    return img.tobytes()


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def roi_dims(width: int, height: int, area_fraction: float) -> tuple[int, int]:
    """Dimensions of the centered crop keeping ``area_fraction`` of the area."""
    if not 0 < area_fraction <= 1:
        raise ValueError(f"area_fraction must be in (0, 1], got {area_fraction}")
    if area_fraction == 1:
        return width, height
    scale = math.sqrt(area_fraction)
    return _round_half_up(width * scale), _round_half_up(height * scale)


def center_roi(img: GrayImage, area_fraction: float) -> GrayImage:
    """Centered crop whose area is approximately ``area_fraction`` of the frame.

    Each side is scaled by ``sqrt(area_fraction)``; offsets are floored.
    """
    w, h = roi_dims(img.width, img.height, area_fraction)
    if w < MIN_SIDE or h < MIN_SIDE:
        raise RoiTooSmallError(f"crop of {img.width}x{img.height} at {area_fraction} is {w}x{h}")
    if (w, h) == img.size:
        return img
    x0 = (img.width - w) // 2
    y0 = (img.height - h) // 2
    return GrayImage(img.pixels[y0 : y0 + h, x0 : x0 + w])
