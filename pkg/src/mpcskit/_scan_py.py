"""Pure-Python subset-scan kernel.

Reference implementation of the exhaustive minimal-perfect-critical-set
scan; the compiled extension in ``_scan.pyx`` implements the same contract.
Selected automatically at import time by :mod:`mpcskit.backend` when the
extension is unavailable.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

BACKEND = "python"


def _rank_and_rowspace(M: np.ndarray, rank_tol: float):
    """Row-echelon data: (rank, echelon rows with unit pivots, pivot cols)."""
    rows = []
    pivots = []
    for r in M:
        w = r.astype(float, copy=True)
        for er, pc in zip(rows, pivots):
            f = w[pc]
            if f != 0.0:
                w -= f * er
        pc = int(np.argmax(np.abs(w)))
        if abs(w[pc]) > rank_tol:
            w /= w[pc]
            rows.append(w)
            pivots.append(pc)
            if len(rows) == M.shape[1]:
                break
    return len(rows), rows, pivots


def _residual(row: np.ndarray, rows, pivots) -> float:
    w = row.astype(float, copy=True)
    for er, pc in zip(rows, pivots):
        f = w[pc]
        if f != 0.0:
            w -= f * er
    return float(np.abs(w).max()) if w.size else 0.0


def scan_mpcs(bases, n: int, size_cap: int, rank_tol: float, zero_tol: float):
    """Scan subsets of {0..n-1} by increasing cardinality for exact
    eigenvector supports.

    ``bases`` is a list of n x m orthonormal eigenspace bases, one per
    distinct eigenvalue. Returns ``[(mask, eig_index), ...]`` for every
    subset that is the exact support of some eigenvector and contains no
    previously found support (so the result is exactly the family of
    minimal supports up to ``size_cap``). Deterministic: cardinality-major,
    lexicographic within a cardinality.
    """
    found_masks = []
    results = []
    vertex_bit = [1 << v for v in range(n)]
    for k in range(2, size_cap + 1):
        for combo in combinations(range(n), k):
            mask = 0
            for v in combo:
                mask |= vertex_bit[v]
            if any(mask & fm == fm for fm in found_masks):
                continue
            comp = [v for v in range(n) if not (mask >> v) & 1]
            for ei, B in enumerate(bases):
                m = B.shape[1]
                rank, rows, pivots = _rank_and_rowspace(B[comp], rank_tol)
                if rank == m:
                    continue
                # kernel is nonempty: exact-support test per subset vertex
                if all(
                    _residual(B[v], rows, pivots) > zero_tol for v in combo
                ):
                    results.append((mask, ei))
                    found_masks.append(mask)
                    break
    return results
