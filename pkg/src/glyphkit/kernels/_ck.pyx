# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled raster kernels; semantics documented in kernels.pyk."""

import numpy as np


def label_ink(ink_in):
    ink_arr = np.ascontiguousarray(ink_in, dtype=np.uint8)
    cdef const unsigned char[:, ::1] ink = ink_arr
    cdef Py_ssize_t h = ink.shape[0]
    cdef Py_ssize_t w = ink.shape[1]
    labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef int[:, ::1] labels = labels_arr
    stack_arr = np.empty(h * w, dtype=np.intp)
    cdef Py_ssize_t[::1] stack = stack_arr
    cdef Py_ssize_t r0, c0, r, c, rr, cc, top
    cdef int count = 0
    cdef int dr, dc
    for r0 in range(h):
        for c0 in range(w):
            if ink[r0, c0] != 0 and labels[r0, c0] == 0:
                count += 1
                labels[r0, c0] = count
                top = 0
                stack[top] = r0 * w + c0
                top += 1
                while top > 0:
                    top -= 1
                    r = stack[top] // w
                    c = stack[top] % w
                    for dr in range(-1, 2):
                        for dc in range(-1, 2):
                            if dr == 0 and dc == 0:
                                continue
                            rr = r + dr
                            cc = c + dc
                            if 0 <= rr < h and 0 <= cc < w and ink[rr, cc] != 0 and labels[rr, cc] == 0:
                                labels[rr, cc] = count
                                stack[top] = rr * w + cc
                                top += 1
    return labels_arr, count


def resample_nearest(mask_in, Py_ssize_t out_h, Py_ssize_t out_w):
    mask_arr = np.ascontiguousarray(mask_in, dtype=np.uint8)
    cdef const unsigned char[:, ::1] mask = mask_arr
    cdef Py_ssize_t src_h = mask.shape[0]
    cdef Py_ssize_t src_w = mask.shape[1]
    out_arr = np.empty((out_h, out_w), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, sr, sc
    for i in range(out_h):
        sr = <Py_ssize_t>((i + 0.5) * src_h / out_h)
        if sr > src_h - 1:
            sr = src_h - 1
        for j in range(out_w):
            sc = <Py_ssize_t>((j + 0.5) * src_w / out_w)
            if sc > src_w - 1:
                sc = src_w - 1
            out[i, j] = mask[sr, sc]
    return out_arr


def zone_means(glyph_in):
    glyph_arr = np.ascontiguousarray(glyph_in, dtype=np.uint8)
    if glyph_arr.shape != (32, 32):
        raise ValueError(f"expected a 32x32 glyph, got {glyph_arr.shape}")
    cdef const unsigned char[:, ::1] glyph = glyph_arr
    out_arr = np.empty(64, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t zi, zj, r, c
    cdef int s
    for zi in range(8):
        for zj in range(8):
            s = 0
            for r in range(4):
                for c in range(4):
                    if glyph[zi * 4 + r, zj * 4 + c] != 0:
                        s += 1
            out[zi * 8 + zj] = s / 16.0
    return out_arr


def sqdist_matrix(a_in, b_in):
    a_arr = np.ascontiguousarray(a_in, dtype=np.float64)
    b_arr = np.ascontiguousarray(b_in, dtype=np.float64)
    cdef const double[:, ::1] a = a_arr
    cdef const double[:, ::1] b = b_arr
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t k = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    if b.shape[1] != d:
        raise ValueError("dimension mismatch")
    out_arr = np.empty((m, k), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef double acc, diff
    for i in range(m):
        for j in range(k):
            acc = 0.0
            for t in range(d):
                diff = a[i, t] - b[j, t]
                acc += diff * diff
            out[i, j] = acc
    return out_arr
