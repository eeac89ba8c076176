"""Slow, independent reference computations used as test oracles.

Nothing here imports the code under test.
"""

from fractions import Fraction
from itertools import product

import numpy as np

RING = ((0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0), (1, 1))


def cn_bruteforce(p):
    """0.5 * sum_{i=1..8} |P_i - P_{i+1}| with P_9 = P_1, in exact arithmetic."""
    total = Fraction(0)
    for i in range(8):
        total += abs(p[i] - p[(i + 1) % 8])
    total *= Fraction(1, 2)
    assert total.denominator == 1
    return int(total)


def all_rings():
    return [tuple(bits) for bits in product((0, 1), repeat=8)]


def otsu_bruteforce(pixels):
    """Exhaustive maximiser of w0 * w1 * (mu0 - mu1)^2, smallest t on ties."""
    flat = [int(v) for v in np.asarray(pixels).ravel()]
    n = len(flat)
    best_t, best = None, Fraction(-1)
    for t in range(255):
        low = [v for v in flat if v <= t]
        high = [v for v in flat if v > t]
        if not low or not high:
            var = Fraction(0)
        else:
            w0 = Fraction(len(low), n)
            w1 = Fraction(len(high), n)
            mu0 = Fraction(sum(low), len(low))
            mu1 = Fraction(sum(high), len(high))
            var = w0 * w1 * (mu0 - mu1) ** 2
        if var > best:
            best_t, best = t, var
    return best_t


def otsu_bruteforce_hist(pixels):
    """Same maximiser computed from the histogram, for larger images."""
    hist = np.bincount(np.asarray(pixels).ravel(), minlength=256)
    n = int(hist.sum())
    best_t, best = None, Fraction(-1)
    for t in range(255):
        c0 = int(hist[: t + 1].sum())
        c1 = n - c0
        if c0 == 0 or c1 == 0:
            var = Fraction(0)
        else:
            mu0 = Fraction(int((np.arange(t + 1) * hist[: t + 1]).sum()), c0)
            mu1 = Fraction(int((np.arange(t + 1, 256) * hist[t + 1 :]).sum()), c1)
            var = Fraction(c0, n) * Fraction(c1, n) * (mu0 - mu1) ** 2
        if var > best:
            best_t, best = t, var
    return best_t


def sobel_naive(img):
    """Correlate every interior pixel with the two Sobel kernels by explicit loops."""
    kx = [[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]]
    ky = [[-1, -2, -1], [0, 0, 0], [1, 2, 1]]
    a = np.asarray(img, dtype=np.int64)
    h, w = a.shape
    gx = np.zeros((h, w), dtype=np.int64)
    gy = np.zeros((h, w), dtype=np.int64)
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            sx = sy = 0
            for j in range(3):
                for i in range(3):
                    v = int(a[y + j - 1, x + i - 1])
                    sx += kx[j][i] * v
                    sy += ky[j][i] * v
            gx[y, x] = sx
            gy[y, x] = sy
    return gx, gy


def box_naive(img):
    a = np.asarray(img, dtype=np.int64)
    h, w = a.shape
    out = np.zeros((h, w), dtype=np.int64)
    for y in range(h):
        for x in range(w):
            s = 0
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    s += int(a[min(max(y + dy, 0), h - 1), min(max(x + dx, 0), w - 1)])
            out[y, x] = (Fraction(s, 9) + Fraction(1, 2)).__floor__()
    return out


def cn_mask_naive(binary):
    b = np.asarray(binary)
    h, w = b.shape
    out = np.zeros((h, w), dtype=np.int64)
    for y in range(1, h - 1):
        for x in range(1, w - 1):
            if b[y, x] == 1:
                p = [int(b[y + dy, x + dx]) for dy, dx in RING]
                if cn_bruteforce(p) in (1, 3, 4):
                    out[y, x] = 1
    return out


def block_sums_naive(gx, gy, w):
    h, wd = gx.shape
    rows, cols = h // w, wd // w
    sxx = np.zeros((rows, cols), dtype=object)
    sxy = np.zeros((rows, cols), dtype=object)
    for by in range(rows):
        for bx in range(cols):
            a = b = 0
            for y in range(by * w, by * w + w):
                for x in range(bx * w, bx * w + w):
                    gxv, gyv = int(gx[y, x]), int(gy[y, x])
                    a += gxv * gxv - gyv * gyv
                    b += 2 * gxv * gyv
            sxx[by, bx], sxy[by, bx] = a, b
    return sxx, sxy
