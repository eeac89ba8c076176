# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pixel kernels; see ``_pykernels`` for the contracts."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t, uint8_t

cnp.import_array()

NAME = "cython"


def box_mean3(const uint8_t[:, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t y, x, ym, yp
    cdef int acc
    out_arr = np.empty((h, w), dtype=np.uint8)
    cdef uint8_t[:, ::1] out = out_arr
    # vertical 3-sums with edge replication, then a horizontal pass
    col_arr = np.empty(w + 2, dtype=np.int32)
    cdef int32_t[::1] col = col_arr
    with nogil:
        for y in range(h):
            ym = y - 1 if y > 0 else 0
            yp = y + 1 if y < h - 1 else h - 1
            for x in range(w):
                col[x + 1] = img[ym, x] + img[y, x] + img[yp, x]
            col[0] = col[1]
            col[w + 1] = col[w]
            acc = col[0] + col[1] + col[2]
            for x in range(w):
                out[y, x] = <uint8_t>((acc + 4) // 9)
                if x + 1 < w:
                    acc = acc - col[x] + col[x + 3]
    return out_arr


def histogram(const uint8_t[:, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t y, x
    hist_arr = np.zeros(256, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    with nogil:
        for y in range(h):
            for x in range(w):
                hist[img[y, x]] += 1
    return hist_arr


cdef uint8_t _GATE[256]


cdef void _build_gate():
    cdef int code, i, t, cn, a, b
    for code in range(256):
        t = 0
        for i in range(8):
            a = (code >> i) & 1
            b = (code >> ((i + 1) & 7)) & 1
            t += a != b
        cn = t >> 1
        _GATE[code] = 1 if (cn == 1 or cn == 3 or cn == 4) else 0


_build_gate()


def candidate_mask(const uint8_t[:, ::1] binary):
    cdef Py_ssize_t h = binary.shape[0], w = binary.shape[1]
    cdef Py_ssize_t y, x
    cdef int code
    out_arr = np.zeros((h, w), dtype=np.uint8)
    cdef uint8_t[:, ::1] out = out_arr
    with nogil:
        for y in range(1, h - 1):
            for x in range(1, w - 1):
                # bit i-1 holds P_i: E, NE, N, NW, W, SW, S, SE
                code = (binary[y, x + 1]
                        | (binary[y - 1, x + 1] << 1)
                        | (binary[y - 1, x] << 2)
                        | (binary[y - 1, x - 1] << 3)
                        | (binary[y, x - 1] << 4)
                        | (binary[y + 1, x - 1] << 5)
                        | (binary[y + 1, x] << 6)
                        | (binary[y + 1, x + 1] << 7))
                out[y, x] = _GATE[code] & binary[y, x]
    return out_arr


def masked_sobel(const uint8_t[:, ::1] img, const uint8_t[:, ::1] mask):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t y, x
    cdef int tl, tc, tr, ml, mr, bl, bc, br
    gx_arr = np.zeros((h, w), dtype=np.int32)
    gy_arr = np.zeros((h, w), dtype=np.int32)
    cdef int32_t[:, ::1] gx = gx_arr
    cdef int32_t[:, ::1] gy = gy_arr
    with nogil:
        for y in range(1, h - 1):
            for x in range(1, w - 1):
                if mask[y, x] == 0:
                    continue
                tl = img[y - 1, x - 1]
                tc = img[y - 1, x]
                tr = img[y - 1, x + 1]
                ml = img[y, x - 1]
                mr = img[y, x + 1]
                bl = img[y + 1, x - 1]
                bc = img[y + 1, x]
                br = img[y + 1, x + 1]
                gx[y, x] = (tr + 2 * mr + br) - (tl + 2 * ml + bl)
                gy[y, x] = (bl + 2 * bc + br) - (tl + 2 * tc + tr)
    return gx_arr, gy_arr


def block_sums(const int32_t[:, ::1] gx, const int32_t[:, ::1] gy, Py_ssize_t w):
    cdef Py_ssize_t by = gx.shape[0] // w, bx = gx.shape[1] // w
    cdef Py_ssize_t y, x
    cdef int64_t a, b
    sxx_arr = np.zeros((by, bx), dtype=np.int64)
    sxy_arr = np.zeros((by, bx), dtype=np.int64)
    cdef int64_t[:, ::1] sxx = sxx_arr
    cdef int64_t[:, ::1] sxy = sxy_arr
    with nogil:
        for y in range(by * w):
            for x in range(bx * w):
                a = gx[y, x]
                b = gy[y, x]
                if a == 0 and b == 0:
                    continue
                sxx[y // w, x // w] += a * a - b * b
                sxy[y // w, x // w] += 2 * a * b
    return sxx_arr, sxy_arr
