"""Tree-specific machinery: graph simplification, twin-pair recognition,
rule-based vertex classification (the candidate generator for tree MPCS),
the unit-boundary recognizer with its quotient-graph witness, and the
pendant leader bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional

import numpy as np

from .criticality import (
    CriticalCertificate,
    MpcsFamily,
    is_critical,
    is_perfect_critical,
    minimalize_cs,
)
from .errors import (
    DisconnectedGraph,
    NotATree,
    NotATreeLaplacian,
    PreconditionUnmet,
)
from .graph import (
    Graph,
    components,
    from_edge_list,
    induced_subgraph,
    is_connected,
    is_tree,
    laplacian,
    pendant_set,
)
from .spectral import DEFAULT_TOL, ToleranceConfig, spectrum

_DFS_BRANCH_CAP = 4096


# ---------------------------------------------------------------------------
# simplification


@dataclass(frozen=True)
class SimplifiedGraph:
    """Result of deleting outside vertices that see all of S or none of S.

    ``eigenvalue_shift`` counts see-all deletions: each lowers the
    eigenvalue carried by an S-supported eigenvector by one when moving
    from the parent graph to the simplified one.
    """

    parent: Graph
    s: tuple
    retained: tuple
    removed_full: tuple
    removed_none: tuple
    eigenvalue_shift: int

    def retained_neighbors(self, v: int) -> tuple:
        rset = set(self.retained)
        return tuple(w for w in self.parent.neighbors(v) if w in rset)

    @property
    def base(self):
        """The simplified graph relabeled 1..k with its parent label map."""
        return induced_subgraph(self.parent, self.retained)


def simplify(g: Graph, s: Iterable) -> SimplifiedGraph:
    """Single pass over the original adjacency: delete v outside S when
    N(v) covers all of S (shifts the eigenvalue) or misses S entirely."""
    sset = set(s)
    if not sset:
        raise ValueError("s must be nonempty")
    removed_full, removed_none = [], []
    for v in g.vertices():
        if v in sset:
            continue
        hits = sset & set(g.neighbors(v))
        if hits == sset:
            removed_full.append(v)
        elif not hits:
            removed_none.append(v)
    gone = set(removed_full) | set(removed_none)
    retained = tuple(v for v in g.vertices() if v not in gone)
    return SimplifiedGraph(
        parent=g,
        s=tuple(sorted(sset)),
        retained=retained,
        removed_full=tuple(removed_full),
        removed_none=tuple(removed_none),
        eigenvalue_shift=len(removed_full),
    )


# ---------------------------------------------------------------------------
# twin pairs


def _pair_certificate(g: Graph, a: int, b: int,
                      tol: ToleranceConfig) -> CriticalCertificate:
    y = np.zeros(g.n)
    y[a - 1], y[b - 1] = 1.0, -1.0
    L = laplacian(g).astype(float)
    Ly = L @ y
    lam = float(Ly @ y / (y @ y))
    if np.abs(Ly - lam * y).max() > tol.eps_group * max(1.0, lam):
        raise AssertionError("difference vector is not an eigenvector")
    return CriticalCertificate(set=(a, b), lam=lam, witness=y,
                               kind="perfect-critical")


def twin_pairs(g: Graph) -> list:
    """All pairs {a,b} with every other vertex adjacent to both or neither."""
    out = []
    for a in g.vertices():
        na = set(g.neighbors(a))
        for b in range(a + 1, g.n + 1):
            nb = set(g.neighbors(b))
            if na - {b} == nb - {a}:
                out.append((a, b))
    return out


def twin_pair_mpcs(g: Graph, tol: ToleranceConfig = DEFAULT_TOL) -> MpcsFamily:
    """Size-2 MPCS: exactly the twin pairs, certified by difference vectors."""
    if not is_connected(g):
        raise DisconnectedGraph("twin-pair search requires a connected graph")
    pairs = twin_pairs(g)
    certs = tuple(_pair_certificate(g, a, b, tol) for a, b in pairs)
    return MpcsFamily(
        sets=tuple(pairs),
        provenance=tuple("twin-pair" for _ in pairs),
        certificates=certs,
        complete=False,
        search_cap=2,
    )


# ---------------------------------------------------------------------------
# rule-based classification (candidate generator)


@dataclass(frozen=True)
class TraceRow:
    vertex: int
    rule: str
    verdict: str  # in-S | in-Sbar | contradiction
    refs: tuple


@dataclass(frozen=True)
class ClassificationTrace:
    rows: tuple

    def to_csv(self) -> str:
        lines = ["vertex,rule,verdict,refs"]
        for r in self.rows:
            refs = ";".join(str(x) for x in r.refs)
            lines.append(f"{r.vertex},{r.rule},{r.verdict},{refs}")
        return "\n".join(lines) + "\n"


_IN_S, _IN_SBAR = "in-S", "in-Sbar"


def _fixpoint(g: Graph, status: dict, emit: Optional[Callable]) -> Optional[tuple]:
    """Run the classification rules to a fixed point.

    Returns None on success or ``(vertex, rule)`` on contradiction. The
    working hypothesis throughout is an inducing eigenvector at
    eigenvalue 1 (the value forced whenever S contains a pendant).
    """

    def assign(v, val, rule, refs):
        status[v] = val
        if emit is not None:
            emit(TraceRow(v, rule, _IN_S if val == "S" else _IN_SBAR, refs))

    pend = pendant_set(g)
    changed = True
    while changed:
        changed = False
        for p in pend:
            parent = g.neighbors(p)[0]
            rule = ("excluded-pendant-parent" if status[p] == "B"
                    else "pendant-parent")
            if status[parent] is None:
                assign(parent, "B", rule, (p,))
                changed = True
            elif status[parent] == "S":
                return (parent, rule)
        for v in g.vertices():
            if status[v] == "B":
                s_nbrs = [w for w in g.neighbors(v) if status[w] == "S"]
                unknown = [w for w in g.neighbors(v) if status[w] is None]
                s = len(s_nbrs)
                if s >= 3 or (s == 1 and not unknown):
                    return (v, "boundary-count")
                if s == 2 and unknown:
                    for w in unknown:
                        assign(w, "B", "boundary-count", (v,))
                    changed = True
                elif s == 1 and len(unknown) == 1:
                    assign(unknown[0], "S", "boundary-count", (v,))
                    changed = True
                elif s == 0 and len(unknown) == 1:
                    assign(unknown[0], "B", "boundary-count", (v,))
                    changed = True
            elif status[v] == "S" and g.degree(v) >= 2:
                s_nbrs = [w for w in g.neighbors(v) if status[w] == "S"]
                unknown = [w for w in g.neighbors(v) if status[w] is None]
                if not s_nbrs:
                    if not unknown:
                        return (v, "needs-support-neighbor")
                    if len(unknown) == 1:
                        assign(unknown[0], "S", "needs-support-neighbor", (v,))
                        changed = True
    return None


def _probe(g: Graph, status: dict, emit: Optional[Callable]) -> Optional[tuple]:
    """Commit verdicts whose negation propagates to a contradiction."""
    progress = True
    while progress:
        progress = False
        for v in g.vertices():
            if status[v] is not None:
                continue
            for val, other in (("B", "S"), ("S", "B")):
                trial = dict(status)
                trial[v] = val
                conflict = _fixpoint(g, trial, None)
                if conflict is not None:
                    status[v] = other
                    if emit is not None:
                        verdict = _IN_S if other == "S" else _IN_SBAR
                        emit(TraceRow(v, "probe", verdict, (conflict[0],)))
                    conflict2 = _fixpoint(g, status, emit)
                    if conflict2 is not None:
                        return conflict2
                    progress = True
                    break
    return None


def _complete_assignments(g: Graph, status: dict, cap: int) -> List[dict]:
    """Bounded DFS over remaining unknowns, propagation-pruned."""
    out: List[dict] = []
    budget = [cap]

    def rec(st):
        if budget[0] <= 0:
            return
        unknowns = [v for v in g.vertices() if st[v] is None]
        if not unknowns:
            out.append(st)
            return
        v = unknowns[0]
        for val in ("B", "S"):
            budget[0] -= 1
            trial = dict(st)
            trial[v] = val
            if _fixpoint(g, trial, None) is None:
                if _probe(g, trial, None) is None:
                    rec(trial)

    rec(dict(status))
    return out


def propagate_classification(g: Graph):
    """Candidate tree MPCS via rule propagation from every pendant-pair seed.

    For each ordered pendant pair (a, b) the hypotheses a in S, b outside
    S are propagated to a fixed point, then sharpened by probing and a
    capped branch search. Emits the merged trace and the deduplicated
    candidate sets (twin pairs first); candidates are hypotheses only and
    must be verified before being reported as MPCS.
    """
    if not is_tree(g):
        raise NotATree("classification rules apply to trees only")
    rows: List[TraceRow] = []
    candidates: List[tuple] = []

    for a, b in twin_pairs(g):
        rows.append(TraceRow(a, "twin-pair", _IN_S, (b,)))
        cand = (a, b)
        if cand not in candidates:
            candidates.append(cand)

    pend = pendant_set(g)
    for a in pend:
        for b in pend:
            if a == b:
                continue
            status = {v: None for v in g.vertices()}
            status[a], status[b] = "S", "B"
            rows.append(TraceRow(a, "seed", _IN_S, (b,)))
            rows.append(TraceRow(b, "seed", _IN_SBAR, (a,)))
            conflict = _fixpoint(g, status, rows.append)
            if conflict is None:
                conflict = _probe(g, status, rows.append)
            if conflict is not None:
                rows.append(TraceRow(conflict[0], conflict[1],
                                     "contradiction", ()))
                continue
            for st in _complete_assignments(g, status, _DFS_BRANCH_CAP):
                cand = tuple(v for v in g.vertices() if st[v] == "S")
                if cand and cand not in candidates:
                    candidates.append(cand)
    return ClassificationTrace(rows=tuple(rows)), candidates


def tree_mpcs(g: Graph, tol: ToleranceConfig = DEFAULT_TOL):
    """Verified MPCS family for a tree from the rule-based candidates.

    Every candidate is checked with the spectral perfect-critical test and
    shrunk to a minimal critical set (an upward-closed property, so greedy
    removal is exact); survivors are certified MPCS. The family carries
    complete=False: the rules target the eigenvalue-1 structure and twin
    pairs, which is a sound generator but not proven exhaustive.
    Returns (family, trace).
    """
    trace, candidates = propagate_classification(g)
    spec = spectrum(laplacian(g), tol)
    sets, prov, certs = [], [], []
    for cand in candidates:
        cert = is_perfect_critical(g, cand, tol, spec)
        if cert is None:
            if is_critical(g, cand, tol, spec) is None:
                continue
        minimal = minimalize_cs(g, cand, tol, spec)
        cert = is_perfect_critical(g, minimal, tol, spec)
        if cert is None:
            continue
        if any(set(minimal) == set(x) for x in sets):
            continue
        sets.append(minimal)
        prov.append("twin-pair" if len(minimal) == 2 and cand == minimal
                    else "propagation")
        certs.append(cert)
    keep = [i for i, s in enumerate(sets)
            if not any(set(t) < set(s) for t in sets)]
    order = sorted(keep, key=lambda i: (len(sets[i]), sets[i]))
    family = MpcsFamily(
        sets=tuple(sets[i] for i in order),
        provenance=tuple(prov[i] for i in order),
        certificates=tuple(certs[i] for i in order),
        complete=False,
        search_cap=g.n,
    )
    return family, trace


# ---------------------------------------------------------------------------
# unit-boundary recognizer and quotient-graph witness


@dataclass(frozen=True)
class QuotientGraph:
    """Bipartite contraction used to build the alternating-sign witness.

    One u-node per connected component of the simplified graph restricted
    to S, one w-node per retained outside vertex; levels are path
    distances from the root u-node and are even for valid inputs.
    """

    u_nodes: tuple  # tuple of component vertex tuples (parent labels)
    w_nodes: tuple  # retained outside vertices (parent labels)
    edges: tuple  # (u_index, w_index) pairs
    root: int  # index of the root u-node
    levels: tuple  # per u-node distance from root in the quotient


def _unit_boundary_data(g: Graph, s: Iterable):
    if not is_tree(g):
        raise NotATree("recognizer applies to trees only")
    sset = set(s)
    sg = simplify(g, sset)
    rset = set(sg.retained)
    sbar_ret = tuple(v for v in sg.retained if v not in sset)
    gs = [v for v in sorted(sset)]
    # components of the simplified graph restricted to S
    sub = induced_subgraph(g, gs)
    comps = [tuple(sub.parent_labels[i - 1] for i in c)
             for c in components(sub.graph)]
    boundary = {
        v: tuple(w for w in g.neighbors(v) if w in rset and w not in sset)
        for v in sset
    }
    isolated = [v for v in gs if all(w not in sset for w in g.neighbors(v))]
    if not isolated:
        raise PreconditionUnmet("no vertex of S is isolated within S")
    if any(len(boundary[v]) > 1 for v in sset):
        bad = min(v for v in sset if len(boundary[v]) > 1)
        raise PreconditionUnmet(
            f"vertex {bad} has more than one retained outside neighbor"
        )
    return sg, sbar_ret, comps, boundary, isolated


def unit_boundary_check(g: Graph, s: Iterable) -> bool:
    """True iff, after simplification, every vertex of S touches exactly
    one retained outside vertex and the alternating-sign witness
    validates; such S are certified MPCS.

    Preconditions (PreconditionUnmet otherwise): S contains a vertex with
    no S-neighbors, and no vertex of S touches two or more retained
    outside vertices. The degenerate case with no retained outside
    vertices at all reduces to the twin-pair test. When the boundary
    counts pass but the simplified graph splits into pieces that cannot
    be linked through the quotient, no inducing eigenvector exists, so
    the verdict is False rather than a precondition failure.
    """
    sset = set(s)
    sg, sbar_ret, comps, boundary, _ = _unit_boundary_data(g, sset)
    if not sbar_ret:
        return len(sset) == 2 and tuple(sorted(sset)) in twin_pairs(g)
    if not all(len(boundary[v]) == 1 for v in sset):
        return False
    try:
        unit_boundary_witness(g, sset)
    except PreconditionUnmet:
        # the stated preconditions already passed above, so a failure
        # here means the witness construction itself is impossible
        return False
    return True


def unit_boundary_witness(
    g: Graph, s: Iterable, tol: ToleranceConfig = DEFAULT_TOL
):
    """Alternating-sign eigenvector certifying S, plus its quotient graph.

    Signs are constant on each component of the simplified graph
    restricted to S and flip every two levels of the quotient; the result
    is validated against the full Laplacian. Returns
    (CriticalCertificate, QuotientGraph or None).
    """
    sset = set(s)
    sg, sbar_ret, comps, boundary, isolated = _unit_boundary_data(g, sset)
    stuple = tuple(sorted(sset))
    if not sbar_ret:
        if len(sset) != 2 or stuple not in twin_pairs(g):
            raise PreconditionUnmet("degenerate case is not a twin pair")
        a, b = stuple
        return _pair_certificate(g, a, b, tol), None
    if not all(len(boundary[v]) == 1 for v in sset):
        raise PreconditionUnmet("some vertex of S has no retained "
                                "outside neighbor")

    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    w_index = {v: j for j, v in enumerate(sbar_ret)}
    edges = sorted({
        (comp_of[v], w_index[boundary[v][0]]) for v in sset
    })
    root = comp_of[min(isolated)]

    # BFS over the bipartite quotient from the root u-node
    dist_u = {root: 0}
    dist_w = {}
    frontier = [("u", root)]
    while frontier:
        nxt = []
        for kind, x in frontier:
            if kind == "u":
                for (ui, wj) in edges:
                    if ui == x and wj not in dist_w:
                        dist_w[wj] = dist_u[x] + 1
                        nxt.append(("w", wj))
            else:
                for (ui, wj) in edges:
                    if wj == x and ui not in dist_u:
                        dist_u[ui] = dist_w[x] + 1
                        nxt.append(("u", ui))
        frontier = nxt
    if len(dist_u) != len(comps):
        raise PreconditionUnmet("quotient graph is disconnected")
    levels = tuple(dist_u[i] for i in range(len(comps)))
    if any(l % 2 for l in levels):
        raise PreconditionUnmet("odd level in the quotient graph")

    y = np.zeros(g.n)
    for i, c in enumerate(comps):
        sign = -1.0 if (levels[i] // 2) % 2 else 1.0
        for v in c:
            y[v - 1] = sign
    L = laplacian(g).astype(float)
    Ly = L @ y
    lam = float(Ly @ y / (y @ y))
    if np.abs(Ly - lam * y).max() > tol.eps_group * max(1.0, abs(lam)):
        raise PreconditionUnmet("constructed vector failed validation")
    cert = CriticalCertificate(set=stuple, lam=lam, witness=y,
                               kind="perfect-critical")
    quotient = QuotientGraph(
        u_nodes=tuple(comps),
        w_nodes=sbar_ret,
        edges=tuple(edges),
        root=root,
        levels=levels,
    )
    return cert, quotient


# ---------------------------------------------------------------------------
# pendant leader bound and perturbed-kernel test


def pendant_leader_bound(g: Graph) -> tuple:
    """All pendants but the largest-labeled one always control a tree."""
    if not is_tree(g) or g.n < 2:
        raise NotATree("pendant bound applies to trees with >= 2 vertices")
    s0 = pendant_set(g)
    leaders = tuple(v for v in s0 if v != max(s0))
    return len(s0) - 1, leaders


def _validate_tree_laplacian(L: np.ndarray) -> Graph:
    L = np.asarray(L)
    n = L.shape[0]
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise NotATreeLaplacian("matrix is not square")
    if not np.array_equal(L, L.T):
        raise NotATreeLaplacian("matrix is not symmetric")
    off = L - np.diag(np.diag(L))
    if not np.all(np.isin(off, (0, -1))):
        raise NotATreeLaplacian("off-diagonal entries must be 0 or -1")
    if np.any(L.sum(axis=1) != 0):
        raise NotATreeLaplacian("row sums must vanish")
    edges = [(i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
             if L[i, j] == -1]
    g = from_edge_list(edges, n)
    if not is_tree(g):
        raise NotATreeLaplacian("matrix is not the Laplacian of a tree")
    return g


def perturbed_kernel_full_support(
    L_tree: np.ndarray, c: Iterable, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Whether L + diag(c), c entrywise in {-1, 0}, has a kernel vector
    with no zero entry. For tree Laplacians this holds exactly when c is
    identically zero (the all-ones vector)."""
    g = _validate_tree_laplacian(L_tree)
    c = np.asarray(list(c), dtype=float)
    if c.shape != (g.n,) or not np.all(np.isin(c, (0.0, -1.0))):
        raise ValueError("c must be a length-n vector over {-1, 0}")
    B = np.asarray(L_tree, dtype=float) + np.diag(c)
    u, sv, vt = np.linalg.svd(B)
    cutoff = tol.rank_cutoff(g.n) * (sv[0] if sv[0] > 0 else 1.0)
    K = vt[np.sum(sv > cutoff):].T
    if K.shape[1] == 0:
        return False
    return bool(np.all(np.abs(K).max(axis=1) > tol.eps_zero))
