# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tally kernels: single-pass, GIL-free twins of `_kernels_py`.

Both backends consume the same pre-drawn arrays and return exact integer
counts, so their outputs are bit-identical.
"""

import numpy as np

from libc.stdint cimport int64_t, uint8_t, uint16_t, uint32_t

BACKEND_NAME = "compiled"


def ghz_line_tally(codes, lines, sat):
    """Per-line (events, violations) for assignment codes and chosen lines."""
    cdef const uint8_t[::1] c = np.ascontiguousarray(codes, dtype=np.uint8)
    cdef const uint8_t[::1] l = np.ascontiguousarray(lines, dtype=np.uint8)
    cdef const uint8_t[:, ::1] s = np.ascontiguousarray(sat, dtype=np.uint8)
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t n_lines = s.shape[1]
    events_arr = np.zeros(n_lines, dtype=np.int64)
    viol_arr = np.zeros(n_lines, dtype=np.int64)
    cdef int64_t[::1] events = events_arr
    cdef int64_t[::1] viol = viol_arr
    cdef Py_ssize_t i
    cdef uint8_t line
    with nogil:
        for i in range(n):
            line = l[i]
            events[line] += 1
            if s[c[i], line] == 0:
                viol[line] += 1
    return events_arr, viol_arr


def masked_choice_tally(ok_masks, choices, n_settings):
    """Per-setting (events, violations); a round violates when its chosen
    setting's bit is clear in the round's OK mask."""
    cdef const uint32_t[::1] m = np.ascontiguousarray(ok_masks, dtype=np.uint32)
    cdef const uint8_t[::1] c = np.ascontiguousarray(choices, dtype=np.uint8)
    cdef Py_ssize_t n = m.shape[0]
    events_arr = np.zeros(n_settings, dtype=np.int64)
    viol_arr = np.zeros(n_settings, dtype=np.int64)
    cdef int64_t[::1] events = events_arr
    cdef int64_t[::1] viol = viol_arr
    cdef Py_ssize_t i
    cdef uint8_t choice
    with nogil:
        for i in range(n):
            choice = c[i]
            events[choice] += 1
            if ((m[i] >> choice) & 1) == 0:
                viol[choice] += 1
    return events_arr, viol_arr


def equal_count(a, b):
    """Number of positions where the two +-1 arrays agree."""
    cdef const signed char[::1] x = np.ascontiguousarray(a, dtype=np.int8)
    cdef const signed char[::1] y = np.ascontiguousarray(b, dtype=np.int8)
    cdef Py_ssize_t n = x.shape[0]
    cdef int64_t total = 0
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            total += x[i] == y[i]
    return int(total)


def code_histogram(codes, size):
    """Exact histogram of small non-negative integer codes."""
    cdef const uint16_t[::1] c = np.ascontiguousarray(codes, dtype=np.uint16)
    hist_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] hist = hist_arr
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            hist[c[i]] += 1
    return hist_arr
