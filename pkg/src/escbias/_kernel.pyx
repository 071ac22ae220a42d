# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernel: one C loop per elementary draw.

Consumes PCG64 doubles through the numpy bit-generator C interface in the
exact order the numpy fallback uses, so both produce bit-identical output.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.stdint cimport int64_t
from numpy.random cimport bitgen_t

ALLOCATED = 0
SEQUENTIAL = 1
RATED = 2


def sample_window_means(kinds, counts, offsets, lengths, scores, Py_ssize_t n_samples, bit_generator):
    """Draw ``n_samples`` window-mean scores for one flattened year program."""
    cdef int64_t[::1] kinds_v = np.ascontiguousarray(kinds, dtype=np.int64)
    cdef int64_t[::1] counts_v = np.ascontiguousarray(counts, dtype=np.int64)
    cdef int64_t[::1] offsets_v = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef int64_t[::1] lengths_v = np.ascontiguousarray(lengths, dtype=np.int64)
    cdef int64_t[::1] scores_v = np.ascontiguousarray(scores, dtype=np.int64)

    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, "BitGenerator"):
        raise ValueError("invalid bit generator capsule")
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")

    out = np.empty(n_samples, dtype=np.float64)
    cdef double[::1] out_v = out
    cdef Py_ssize_t n_years = kinds_v.shape[0]
    cdef Py_ssize_t i, y, j
    cdef int64_t kind, c, off, ln, total, position
    cdef double u
    cdef double denom = <double> n_years

    with bit_generator.lock, nogil:
        for i in range(n_samples):
            total = 0
            for y in range(n_years):
                kind = kinds_v[y]
                c = counts_v[y]
                off = offsets_v[y]
                ln = lengths_v[y]
                if kind == 0:  # allocated
                    u = rng.next_double(rng.state)
                    position = <int64_t> (u * c)
                    if position < ln:
                        total += scores_v[off + position]
                elif kind == 1:  # sequential
                    for j in range(ln):
                        u = rng.next_double(rng.state)
                        if <int64_t> (u * c) == 0:
                            total += scores_v[off + j]
                else:
                    for j in range(c):  # rated: counts holds the juror count
                        u = rng.next_double(rng.state)
                        total += scores_v[off + <int64_t> (u * ln)]
            out_v[i] = total / denom
    return out
