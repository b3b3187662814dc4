"""Minimum leader selection: exact hitting-set optimization over a family
of minimal perfect critical sets, enumeration and counting of all minimum
leader sets, certification via matching bounds, and the N1/N2 metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Tuple

from .criticality import MpcsFamily, is_controllable
from .errors import CandidateNotControllable, CandidateNotTransversal
from .graph import Graph
from .spectral import DEFAULT_TOL, ToleranceConfig

ENUM_CAP = 10 ** 6


@dataclass(frozen=True)
class LeaderReport:
    """Summary of minimum leader selection for one graph.

    N1 = n_l / n and N2 = n_s / C(n, n_l) are exact rationals;
    ``min_sets`` may be truncated (see ``min_sets_total`` for the exact
    count). ``certified`` means lower and upper bounds met at n_l with a
    controllability-verified witness.
    """

    n: int
    n_l: int
    n_s: int
    N1: Fraction
    N2: Fraction
    min_sets: tuple
    min_sets_total: int
    lower_bound: int
    upper_bound: int
    certified: bool


def _greedy_pack(sets: list) -> list:
    """Pairwise-disjoint subfamily, smallest sets first."""
    chosen, used = [], set()
    for s in sorted(sets, key=lambda t: (len(t), t)):
        if not (set(s) & used):
            chosen.append(s)
            used |= set(s)
    return chosen


def max_disjoint_subfamily(sets: Iterable) -> int:
    """Maximum number of pairwise-disjoint members; exact for families of
    up to 20 sets, greedy beyond."""
    sets = [tuple(s) for s in sets]
    if not sets:
        return 0
    if len(sets) > 20:
        return len(_greedy_pack(sets))
    best = 0

    def rec(i, used, count):
        nonlocal best
        if count + (len(sets) - i) <= best:
            return
        if i == len(sets):
            best = max(best, count)
            return
        s = set(sets[i])
        if not (s & used):
            rec(i + 1, used | s, count + 1)
        rec(i + 1, used, count)

    rec(0, set(), 0)
    return best


def _min_transversal_size(sets: list, n: int) -> int:
    """Exact minimum hitting-set size by branch and bound.

    Branches on the elements of an uncovered set (smallest first); bounds
    with the count of pairwise-disjoint uncovered sets.
    """
    # greedy transversal as the starting incumbent
    greedy = set()
    for s in sets:
        if not (set(s) & greedy):
            greedy.add(s[0])
    best = [len(greedy)] if greedy else [0]

    def uncovered(chosen):
        return [s for s in sets if not (set(s) & chosen)]

    def bound(unc):
        used = set()
        k = 0
        for s in sorted(unc, key=len):
            if not (set(s) & used):
                k += 1
                used |= set(s)
        return k

    def rec(chosen):
        unc = uncovered(chosen)
        if not unc:
            best[0] = min(best[0], len(chosen))
            return
        if len(chosen) + bound(unc) >= best[0]:
            return
        pivot = min(unc, key=lambda s: (len(s), s))
        for v in pivot:
            rec(chosen | {v})

    rec(set())
    return best[0]


def _enumerate_transversals(
    sets: list, n: int, size: int, cap: int
) -> Tuple[list, int]:
    """All vertex sets of the given size hitting every member, in
    lexicographic order; returns (stored sets up to cap, exact count)."""
    sets = [tuple(sorted(s)) for s in sets]
    out: list = []
    count = 0

    def rec(start, chosen, remaining):
        nonlocal count
        unc = [s for s in sets if not (set(s) & set(chosen))]
        if len(unc) == 0 and remaining == 0:
            count += 1
            if len(out) < cap:
                out.append(tuple(chosen))
            return
        if remaining == 0:
            return
        if any(s[-1] < start for s in unc):
            return  # some set can no longer be hit
        # disjoint-packing bound restricted to eligible vertices
        used: set = set()
        k = 0
        for s in sorted(unc, key=len):
            elig = set(w for w in s if w >= start)
            if not elig:
                return
            if not (set(s) & used):
                k += 1
                used |= set(s)
        if k > remaining:
            return
        for v in range(start, n + 1):
            if n - v + 1 < remaining:
                break
            chosen.append(v)
            rec(v + 1, chosen, remaining - 1)
            chosen.pop()

    rec(1, [], size)
    return out, count


def min_hitting_sets(
    family, n: int, cap: int = ENUM_CAP
) -> Tuple[int, list, int]:
    """Exact minimum transversal size of an MPCS family plus all minimum
    transversals (lexicographic, truncated at ``cap``) and their exact
    total count.

    An empty family means no obstruction exists, so any single vertex
    leads: returns (1, all singletons, n).
    """
    sets = [tuple(s) for s in (family.sets if isinstance(family, MpcsFamily)
                               else family)]
    if not sets:
        singles = [(v,) for v in range(1, n + 1)]
        return 1, singles[:cap], n
    n_l = _min_transversal_size(sets, n)
    found, total = _enumerate_transversals(sets, n, n_l, cap)
    return n_l, found, total


def metrics(n: int, n_l: int, n_s: int) -> Tuple[Fraction, Fraction]:
    """Exact leader-density and solution-density ratios."""
    if not (1 <= n_l <= n) or n_s < 1:
        raise ValueError("need 1 <= n_l <= n and n_s >= 1")
    return Fraction(n_l, n), Fraction(n_s, comb(n, n_l))


def sci5(x: Fraction) -> Tuple[float, int]:
    """(mantissa, exponent) with 5 significant digits, mantissa in [1, 10)."""
    if x == 0:
        return 0.0, 0
    f = float(x)
    exp = 0
    while f >= 10.0:
        f /= 10.0
        exp += 1
    while f < 1.0:
        f *= 10.0
        exp -= 1
    return round(f, 4), exp


def format_sci5(x: Fraction) -> str:
    m, e = sci5(x)
    return f"{m:.4f}e{e:+03d}"


def certify_min_leaders(
    g: Graph,
    family: MpcsFamily,
    candidate: Iterable,
    tol: ToleranceConfig = DEFAULT_TOL,
    cap: int = ENUM_CAP,
    lower_bound_hint: Optional[int] = None,
) -> LeaderReport:
    """Certify a candidate leader set against an MPCS family.

    The lower bound is the exact minimum transversal size of the family
    (any subfamily of the true MPCS family gives a valid bound, so this
    works even when the family is not proven complete); the upper bound
    is the candidate's size once it passes the controllability test.
    ``lower_bound_hint`` lets callers supply an externally proven bound
    (it is still never allowed to exceed the verified upper bound).
    """
    candidate = tuple(sorted(set(candidate)))
    if not family.hit_by(candidate):
        raise CandidateNotTransversal(
            "candidate misses at least one critical set"
        )
    if not is_controllable(g, candidate, tol):
        raise CandidateNotControllable(
            "candidate does not render the graph controllable"
        )
    upper = len(candidate)
    n_l, found, total = min_hitting_sets(family, g.n, cap)
    lower = max(n_l, max_disjoint_subfamily(family.sets))
    if lower_bound_hint is not None:
        lower = max(lower, lower_bound_hint)
    assert lower <= upper, "lower bound exceeded a verified upper bound"
    certified = lower == upper
    if certified and n_l == upper:
        n_s = total
        sets = tuple(found)
    else:
        # transversal size and count are only meaningful at the certified
        # optimum; report the candidate alone otherwise
        n_s = total if n_l == upper else 1
        sets = tuple(found) if n_l == upper else (candidate,)
    N1, N2 = metrics(g.n, upper, n_s)
    return LeaderReport(
        n=g.n,
        n_l=upper,
        n_s=n_s,
        N1=N1,
        N2=N2,
        min_sets=sets,
        min_sets_total=n_s,
        lower_bound=lower,
        upper_bound=upper,
        certified=certified,
    )
