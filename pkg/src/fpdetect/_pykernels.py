"""Vectorised numpy kernels, used when the compiled core is unavailable.

Both backends expose the same four functions with identical integer results:

box_mean3(img) -> uint8
    3x3 box mean, edge replication, rounding half up.
candidate_mask(binary) -> uint8
    1 where a foreground interior pixel has crossing number 1, 3 or 4.
masked_sobel(img, mask) -> (int32 gx, int32 gy)
    Sobel responses at masked interior pixels, zero elsewhere.
block_sums(gx, gy, w) -> (int64 sxx, int64 sxy)
    Per non-overlapping w x w block: sum(gx^2 - gy^2), sum(2 gx gy).
histogram(img) -> int64[256]
    Intensity counts.
"""

import numpy as np

NAME = "numpy"


def box_mean3(img):
    a = np.pad(np.asarray(img, dtype=np.int32), 1, mode="edge")
    h, w = a.shape[0] - 2, a.shape[1] - 2
    acc = np.zeros((h, w), dtype=np.int32)
    for dy in range(3):
        for dx in range(3):
            acc += a[dy : dy + h, dx : dx + w]
    return ((acc + 4) // 9).astype(np.uint8)


def candidate_mask(binary):
    b = np.asarray(binary, dtype=np.int8)
    h, w = b.shape
    out = np.zeros((h, w), dtype=np.uint8)
    if h < 3 or w < 3:
        return out
    c = b[1:-1, 1:-1]
    # P1..P8: E, NE, N, NW, W, SW, S, SE
    ring = [
        b[1:-1, 2:], b[:-2, 2:], b[:-2, 1:-1], b[:-2, :-2],
        b[1:-1, :-2], b[2:, :-2], b[2:, 1:-1], b[2:, 2:],
    ]
    transitions = np.zeros(c.shape, dtype=np.int8)
    for i in range(8):
        transitions += ring[i] != ring[(i + 1) % 8]
    cn = transitions // 2
    out[1:-1, 1:-1] = (c == 1) & ((cn == 1) | (cn == 3) | (cn == 4))
    return out


def masked_sobel(img, mask):
    a = np.asarray(img, dtype=np.int32)
    m = np.asarray(mask, dtype=bool)
    h, w = a.shape
    gx = np.zeros((h, w), dtype=np.int32)
    gy = np.zeros((h, w), dtype=np.int32)
    if h < 3 or w < 3:
        return gx, gy
    tl, tc, tr = a[:-2, :-2], a[:-2, 1:-1], a[:-2, 2:]
    ml, mr = a[1:-1, :-2], a[1:-1, 2:]
    bl, bc, br = a[2:, :-2], a[2:, 1:-1], a[2:, 2:]
    sx = (tr + 2 * mr + br) - (tl + 2 * ml + bl)
    sy = (bl + 2 * bc + br) - (tl + 2 * tc + tr)
    inner = m[1:-1, 1:-1]
    gx[1:-1, 1:-1] = np.where(inner, sx, 0)
    gy[1:-1, 1:-1] = np.where(inner, sy, 0)
    return gx, gy


def block_sums(gx, gy, w):
    gx = np.asarray(gx, dtype=np.int64)
    gy = np.asarray(gy, dtype=np.int64)
    by, bx = gx.shape[0] // w, gx.shape[1] // w
    gx = gx[: by * w, : bx * w]
    gy = gy[: by * w, : bx * w]
    sxx = (gx * gx - gy * gy).reshape(by, w, bx, w).sum(axis=(1, 3))
    sxy = (2 * gx * gy).reshape(by, w, bx, w).sum(axis=(1, 3))
    return sxx, sxy


def histogram(img):
    return np.bincount(np.asarray(img, dtype=np.uint8).ravel(), minlength=256).astype(np.int64)
