"""Symmetric eigendecomposition of integer Laplacians with an explicit
tolerance policy, plus the rank/kernel primitives the critical-set tests
are built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConvergenceFailure, NotAnEigenvalue


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds.

    eps_group: absolute eigenvalue clustering gap, scaled by
        max(1, spectral radius estimate).
    eps_zero: entrywise zero test for vectors.
    eps_rank: relative singular-value cutoff; ``None`` means the
        n*eps_machine heuristic with a 1e-10 floor.
    """

    eps_group: float = 1e-8
    eps_zero: float = 1e-9
    eps_rank: Optional[float] = None

    def __post_init__(self):
        if self.eps_group <= 0 or self.eps_zero <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.eps_zero > self.eps_group:
            raise ValueError("eps_zero must not exceed eps_group")

    def rank_cutoff(self, n: int) -> float:
        if self.eps_rank is not None:
            return self.eps_rank
        return max(n * np.finfo(float).eps, 1e-10)


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues in ascending order with pooled eigenspaces.

    ``bases[i]`` is an n x multiplicities[i] matrix whose orthonormal
    columns span the eigenspace of ``eigenvalues[i]``.
    """

    eigenvalues: tuple
    multiplicities: tuple
    bases: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return int(sum(self.multiplicities))

    def index_of(self, lam: float, tol: ToleranceConfig = DEFAULT_TOL) -> int:
        scale = max(1.0, abs(self.eigenvalues[-1]))
        for i, ev in enumerate(self.eigenvalues):
            if abs(ev - lam) <= tol.eps_group * scale:
                return i
        raise NotAnEigenvalue(f"{lam} is not an eigenvalue (within eps_group)")


def spectrum(L: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> Spectrum:
    """Full eigendecomposition with single-linkage eigenvalue clustering."""
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    try:
        evals, evecs = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(str(exc)) from exc

    scale = max(1.0, float(abs(evals[-1])) if n else 1.0)
    gap = tol.eps_group * scale
    groups = []
    start = 0
    for i in range(1, n):
        if evals[i] - evals[i - 1] > gap:
            groups.append((start, i))
            start = i
    groups.append((start, n))

    distinct, mult, bases = [], [], []
    for a, b in groups:
        lam = float(np.mean(evals[a:b]))
        block = np.ascontiguousarray(evecs[:, a:b])
        resid = np.abs(L @ block - lam * block).max() if n else 0.0
        if resid > tol.eps_group * max(1.0, scale) * 10:
            raise ConvergenceFailure(
                f"eigenpair residual {resid:.3e} exceeds bound at lambda={lam}"
            )
        distinct.append(lam)
        mult.append(b - a)
        bases.append(block)
    return Spectrum(
        eigenvalues=tuple(distinct),
        multiplicities=tuple(mult),
        bases=tuple(bases),
    )


def numeric_rank(M: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of singular values above the relative cutoff."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    cutoff = tol.rank_cutoff(max(M.shape))
    return int(np.sum(s > cutoff * s[0]))


def constrained_kernel(
    L: np.ndarray,
    lam: float,
    s: tuple,
    tol: ToleranceConfig = DEFAULT_TOL,
    spec: Optional[Spectrum] = None,
) -> np.ndarray:
    """Orthonormal basis of {x in R^|s| : (L - lam*I)[:, s] x = 0}.

    A vector supported inside ``s`` satisfying L y = lam y is exactly a
    kernel vector of that column submatrix; the returned columns are the
    ``s``-restrictions of such eigenvectors. Raises NotAnEigenvalue when
    ``lam`` is not in the spectrum within eps_group.
    """
    L = np.asarray(L, dtype=float)
    n = L.shape[0]
    if spec is None:
        spec = spectrum(L, tol)
    i = spec.index_of(lam, tol)
    lam = spec.eigenvalues[i]

    cols = [v - 1 for v in s]
    M = L[:, cols] - lam * np.eye(n)[:, cols]
    u, sv, vt = np.linalg.svd(M)
    cutoff = tol.rank_cutoff(n) * (sv[0] if sv.size and sv[0] > 0 else 1.0)
    rank = int(np.sum(sv > cutoff))
    kernel = vt[rank:].T  # |s| x (|s| - rank), orthonormal columns
    return np.ascontiguousarray(kernel)


def embed_support(n: int, s: tuple, x: np.ndarray) -> np.ndarray:
    """Scatter a coefficient vector on ``s`` into a full length-n vector."""
    y = np.zeros(n)
    for i, v in enumerate(s):
        y[v - 1] = x[i]
    return y
