# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-scan kernel.

Same contract as ``_scan_py.scan_mpcs``: cardinality-major lexicographic
scan for exact eigenvector supports with superset pruning. Kept in lockstep
with the pure-Python reference; the test suite runs both on the same inputs.
"""

import numpy as np

cimport cython
from libc.stdint cimport uint64_t

BACKEND = "compiled"


@cython.boundscheck(False)
@cython.wraparound(False)
cdef int _exact_support(double[:, ::1] B, int n, int m,
                        int* combo, int k,
                        double* work, int* pivots,
                        double rank_tol, double zero_tol) nogil:
    """1 if the k-subset ``combo`` is the exact support of a vector in the
    column space of B, else 0. ``work`` holds up to m echelon rows of
    length m; ``pivots`` their pivot columns."""
    cdef int nrows = 0
    cdef int v, j, r, pc, ci
    cdef double f, best, val
    cdef double* row
    cdef bint inside

    ci = 0
    for v in range(n):
        if ci < k and combo[ci] == v:
            ci += 1
            continue
        if nrows == m:
            return 0  # complement already spans: kernel is empty
        row = work + nrows * m
        for j in range(m):
            row[j] = B[v, j]
        for r in range(nrows):
            f = row[pivots[r]]
            if f != 0.0:
                for j in range(m):
                    row[j] -= f * work[r * m + j]
        pc = 0
        best = 0.0
        for j in range(m):
            val = row[j] if row[j] >= 0 else -row[j]
            if val > best:
                best = val
                pc = j
        if best > rank_tol:
            f = row[pc]
            for j in range(m):
                row[j] /= f
            pivots[nrows] = pc
            nrows += 1
    if nrows == m:
        return 0
    # kernel nonempty; require every subset row outside the complement span
    cdef double resid
    for ci in range(k):
        v = combo[ci]
        row = work + nrows * m  # scratch row past the echelon block
        for j in range(m):
            row[j] = B[v, j]
        for r in range(nrows):
            f = row[pivots[r]]
            if f != 0.0:
                for j in range(m):
                    row[j] -= f * work[r * m + j]
        resid = 0.0
        for j in range(m):
            val = row[j] if row[j] >= 0 else -row[j]
            if val > resid:
                resid = val
        if resid <= zero_tol:
            return 0
    return 1


def scan_mpcs(bases, int n, int size_cap, double rank_tol, double zero_tol):
    """See ``_scan_py.scan_mpcs``; identical semantics and ordering."""
    if n > 63:
        raise ValueError("compiled scan supports n <= 63")
    cdef list cbases = [np.ascontiguousarray(B, dtype=np.float64)
                        for B in bases]
    cdef int nb = len(cbases)
    cdef int max_m = 0
    cdef int i
    for i in range(nb):
        if cbases[i].shape[1] > max_m:
            max_m = cbases[i].shape[1]

    work_arr = np.empty(((max_m + 1) * max_m if max_m else 1,),
                        dtype=np.float64)
    piv_arr = np.empty((max_m if max_m else 1,), dtype=np.intc)
    combo_arr = np.empty((n if n else 1,), dtype=np.intc)
    cdef double[::1] work = work_arr
    cdef int[::1] pivots = piv_arr
    cdef int[::1] combo = combo_arr

    found = np.empty((0,), dtype=np.uint64)
    cdef uint64_t[::1] fview = found
    cdef int nfound = 0
    cdef uint64_t mask, fm
    cdef int k, j, ei, hit, done
    cdef double[:, ::1] B
    results = []
    found_list = []

    for k in range(2, size_cap + 1):
        if nfound:
            found = np.array(found_list, dtype=np.uint64)
            fview = found
        for j in range(k):
            combo[j] = j
        done = 0
        while not done:
            mask = 0
            for j in range(k):
                mask |= (<uint64_t>1) << combo[j]
            hit = 0
            for j in range(nfound):
                fm = fview[j]
                if (mask & fm) == fm:
                    hit = 1
                    break
            if not hit:
                for ei in range(nb):
                    B = cbases[ei]
                    if _exact_support(B, n, B.shape[1], &combo[0], k,
                                      &work[0], &pivots[0],
                                      rank_tol, zero_tol):
                        results.append((int(mask), ei))
                        found_list.append(mask)
                        nfound += 1
                        found = np.array(found_list, dtype=np.uint64)
                        fview = found
                        break
            # next lexicographic k-combination of range(n)
            j = k - 1
            while j >= 0 and combo[j] == n - k + j:
                j -= 1
            if j < 0:
                done = 1
            else:
                combo[j] += 1
                for i in range(j + 1, k):
                    combo[i] = combo[i - 1] + 1
    return results
