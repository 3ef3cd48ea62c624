# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled LSTM recurrence kernels; drop-in twin of ``kernels_py``."""

from libc.math cimport exp, tanh

import numpy as np

BACKEND = "cython"


cdef inline double _sigmoid(double x) nogil:
    if x >= 0.0:
        return 1.0 / (1.0 + exp(-x))
    cdef double ex = exp(x)
    return ex / (1.0 + ex)


def recurrent_forward(double[:, ::1] zpre, double[:, ::1] wh):
    cdef Py_ssize_t n = zpre.shape[0]
    cdef Py_ssize_t four_h = zpre.shape[1]
    cdef Py_ssize_t h_dim = four_h // 4
    h_seq_arr = np.empty((n, h_dim))
    c_seq_arr = np.empty((n, h_dim))
    gates_arr = np.empty((n, four_h))
    cdef double[:, ::1] h_seq = h_seq_arr
    cdef double[:, ::1] c_seq = c_seq_arr
    cdef double[:, ::1] gates = gates_arr
    h_arr = np.zeros(h_dim)
    c_arr = np.zeros(h_dim)
    z_arr = np.empty(four_h)
    cdef double[::1] h = h_arr
    cdef double[::1] c = c_arr
    cdef double[::1] z = z_arr
    cdef Py_ssize_t t, j, k
    cdef double acc, gi, gf, gg, go

    with nogil:
        for t in range(n):
            for j in range(four_h):
                acc = zpre[t, j]
                for k in range(h_dim):
                    acc += wh[j, k] * h[k]
                z[j] = acc
            for j in range(h_dim):
                gi = _sigmoid(z[j])
                gf = _sigmoid(z[h_dim + j])
                gg = tanh(z[2 * h_dim + j])
                go = _sigmoid(z[3 * h_dim + j])
                c[j] = gf * c[j] + gi * gg
                h[j] = go * tanh(c[j])
                gates[t, j] = gi
                gates[t, h_dim + j] = gf
                gates[t, 2 * h_dim + j] = gg
                gates[t, 3 * h_dim + j] = go
                h_seq[t, j] = h[j]
                c_seq[t, j] = c[j]
    return h_seq_arr, c_seq_arr, gates_arr


def recurrent_backward(
    double[:, ::1] wh,
    double[:, ::1] h_seq,
    double[:, ::1] c_seq,
    double[:, ::1] gates,
    double[:, ::1] dh_seq,
):
    cdef Py_ssize_t n = h_seq.shape[0]
    cdef Py_ssize_t h_dim = h_seq.shape[1]
    cdef Py_ssize_t four_h = 4 * h_dim
    dz_arr = np.empty((n, four_h))
    cdef double[:, ::1] dz = dz_arr
    dh_next_arr = np.zeros(h_dim)
    dc_next_arr = np.zeros(h_dim)
    cdef double[::1] dh_next = dh_next_arr
    cdef double[::1] dc_next = dc_next_arr
    cdef Py_ssize_t t, j, k
    cdef double gi, gf, gg, go, tc, dh, dc, c_prev, acc

    with nogil:
        for t in range(n - 1, -1, -1):
            for j in range(h_dim):
                gi = gates[t, j]
                gf = gates[t, h_dim + j]
                gg = gates[t, 2 * h_dim + j]
                go = gates[t, 3 * h_dim + j]
                tc = tanh(c_seq[t, j])
                dh = dh_seq[t, j] + dh_next[j]
                dc = dh * go * (1.0 - tc * tc) + dc_next[j]
                c_prev = c_seq[t - 1, j] if t > 0 else 0.0
                dz[t, j] = dc * gg * gi * (1.0 - gi)
                dz[t, h_dim + j] = dc * c_prev * gf * (1.0 - gf)
                dz[t, 2 * h_dim + j] = dc * gi * (1.0 - gg * gg)
                dz[t, 3 * h_dim + j] = dh * tc * go * (1.0 - go)
                dc_next[j] = dc * gf
            for j in range(h_dim):
                acc = 0.0
                for k in range(four_h):
                    acc += wh[k, j] * dz[t, k]
                dh_next[j] = acc
    return dz_arr
