"""Complete enumeration of minimal eigenvector supports.

For a fixed eigenvalue, the supports of eigenspace vectors form the spanning
sets of a linear matroid: vertex v is represented by the v-th row of an
orthonormal eigenspace basis B, and the support of B @ c is minimal exactly
when it is a cocircuit of that matroid, i.e. the complement of a
rank-(m-1) flat. Enumerating all hyperplane flats therefore yields every
minimal support with a proof of completeness, without scanning 2^n subsets.

The flat lattice is built breadth-first by rank level; a direct-sum
decomposition (components of the vertex/support-sharing graph after
sparsifying the basis) keeps the lattice small on structured graphs.
"""

from __future__ import annotations

import numpy as np

from .errors import SupportSearchOverflow
from .spectral import DEFAULT_TOL, Spectrum, ToleranceConfig

DEFAULT_FLAT_BUDGET = 500_000


def _rref(M: np.ndarray, tol: float) -> np.ndarray:
    """Reduced row echelon form with partial pivoting; zero rows dropped."""
    A = np.array(M, dtype=float)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(A[r:, c])))
        if abs(A[p, c]) <= tol:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] /= A[r, c]
        for i in range(rows):
            if i != r and A[i, c] != 0.0:
                A[i] -= A[i, c] * A[r]
        r += 1
    return A[:r]


def _sparsify_basis(B: np.ndarray, tol: float) -> np.ndarray:
    """Replace the basis by an RREF-sparsified one spanning the same space.

    Returns an m x n matrix whose rows span the column space of ``B`` and
    whose entries below ``tol`` are clipped to exact zero.
    """
    R = _rref(B.T, tol)
    R[np.abs(R) <= tol] = 0.0
    return R


def _support_components(R: np.ndarray) -> list:
    """Partition vertex indices by shared row support (union-find).

    Vertices appearing in no row (zero columns of ``R``) are dropped: no
    eigenvector is ever nonzero there.
    """
    n = R.shape[1]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    active = [False] * n
    for row in R:
        nz = np.flatnonzero(row)
        for v in nz:
            active[v] = True
        for v in nz[1:]:
            a, b = find(int(nz[0])), find(int(v))
            if a != b:
                parent[b] = a
    groups = {}
    for v in range(n):
        if active[v]:
            groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def _closure(B: np.ndarray, Q: np.ndarray, verts: list, tol: float) -> frozenset:
    """All vertices whose row lies in the span of Q's columns."""
    if Q.shape[1] == 0:
        resid = B[verts]
    else:
        rows = B[verts]
        resid = rows - (rows @ Q) @ Q.T
    norms = np.abs(resid).max(axis=1) if resid.size else np.zeros(0)
    scale = np.abs(B[verts]).max(axis=1)
    return frozenset(
        v for v, r, s in zip(verts, norms, scale) if r <= tol * max(1.0, s)
    )


def _extend(Q: np.ndarray, row: np.ndarray, tol: float):
    """Append the component of ``row`` orthogonal to Q, or None if dependent."""
    w = row - Q @ (Q.T @ row) if Q.shape[1] else row.astype(float, copy=True)
    nrm = np.linalg.norm(w)
    if nrm <= tol:
        return None
    w = w / nrm
    # second pass for numerical orthogonality
    if Q.shape[1]:
        w = w - Q @ (Q.T @ w)
        w /= np.linalg.norm(w)
    return np.column_stack([Q, w])


def minimal_supports(
    B: np.ndarray,
    tol: ToleranceConfig = DEFAULT_TOL,
    budget: int = DEFAULT_FLAT_BUDGET,
) -> list:
    """All minimal supports of nonzero vectors in the column space of ``B``.

    ``B`` is n x m with linearly independent columns. Returns sorted
    0-based vertex tuples; the list is provably complete. Raises
    SupportSearchOverflow when the flat lattice exceeds ``budget`` nodes.
    """
    B = np.asarray(B, dtype=float)
    n = B.shape[0]
    eps = tol.eps_zero
    R = _sparsify_basis(B, eps)
    out = []
    for comp in _support_components(R):
        sub_rows = [r for r in R if np.flatnonzero(r)[0] in set(comp)]
        Bc = np.array([r[comp] for r in sub_rows]).T  # |comp| x m_c
        for sup in _component_cocircuits(Bc, eps, budget):
            out.append(tuple(comp[i] for i in sup))
    return sorted(out, key=lambda s: (len(s), s))


def _component_cocircuits(Bc: np.ndarray, eps: float, budget: int) -> list:
    """Cocircuits of the row matroid of ``Bc`` via hyperplane enumeration."""
    nc, m = Bc.shape
    verts = list(range(nc))
    if m == 1:
        return [tuple(verts)]
    empty_Q = np.zeros((m, 0))
    level = {_closure(Bc, empty_Q, verts, eps): empty_Q}
    seen = 1
    for r in range(m - 1):
        nxt = {}
        for flat, Q in level.items():
            for v in verts:
                if v in flat:
                    continue
                Q2 = _extend(Q, Bc[v], eps)
                if Q2 is None:
                    continue
                cl = _closure(Bc, Q2, verts, eps)
                if cl not in nxt:
                    nxt[cl] = Q2
                    seen += 1
                    if seen > budget:
                        raise SupportSearchOverflow(
                            f"flat lattice exceeded budget {budget}"
                        )
        level = nxt
    return [tuple(v for v in verts if v not in flat) for flat in level]


def _antichain(sets: list) -> list:
    """Drop any set containing a strictly smaller member (by cardinality)."""
    keep = []
    for s in sorted(sets, key=lambda t: (len(t[0]), t[0])):
        fs = set(s[0])
        if not any(set(k[0]) < fs or set(k[0]) == fs for k in keep):
            keep.append(s)
    return keep


def eigenspace_minimal_supports(
    spec: Spectrum,
    tol: ToleranceConfig = DEFAULT_TOL,
    budget: int = DEFAULT_FLAT_BUDGET,
) -> list:
    """Minimal eigenvector supports across all eigenvalues.

    Returns ``[(vertex_tuple_0based, eig_index), ...]`` sorted by size then
    lexicographically; the family is a complete antichain: every minimal
    support of any eigenvector appears, and no member contains another.
    """
    tagged = []
    for i, B in enumerate(spec.bases):
        for sup in minimal_supports(np.asarray(B), tol, budget):
            tagged.append((sup, i))
    return _antichain(tagged)
