import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpcskit.criticality import (
    enumerate_mpcs,
    is_controllable,
    kalman_controllable,
)
from mpcskit.errors import PreconditionUnmet
from mpcskit.generators import gen_random_tree
from mpcskit.graph import (
    components,
    from_edge_list,
    induced_subgraph,
    is_connected,
    laplacian,
    pendant_set,
)
from mpcskit.leaders import metrics, sci5
from mpcskit.trees import (
    pendant_leader_bound,
    perturbed_kernel_full_support,
    simplify,
    twin_pairs,
    unit_boundary_check,
)


def _random_connected(rng, n):
    while True:
        edges = [(u, v) for u in range(1, n + 1)
                 for v in range(u + 1, n + 1) if rng.random() < 0.4]
        g = from_edge_list(edges, n)
        if is_connected(g):
            return g


def test_controllability_oracles_agree():
    rng = random.Random(5)
    for _ in range(200):
        g = _random_connected(rng, rng.randint(2, 10))
        k = rng.randint(1, g.n)
        leaders = tuple(rng.sample(range(1, g.n + 1), k))
        assert bool(is_controllable(g, leaders)) == kalman_controllable(
            g, leaders)


def test_no_size_three_mpcs():
    rng = random.Random(17)
    for _ in range(250):
        g = _random_connected(rng, rng.randint(2, 9))
        for s in enumerate_mpcs(g).sets:
            assert len(s) != 3


def test_two_mpcs_iff_twin_pair():
    rng = random.Random(29)
    for _ in range(200):
        g = _random_connected(rng, rng.randint(2, 9))
        pairs = set(twin_pairs(g))
        found = {s for s in enumerate_mpcs(g).sets if len(s) == 2}
        assert found == pairs


def test_tree_mpcs_structural_properties():
    for seed in range(200):
        g = gen_random_tree(4 + seed % 11, seed)
        pend = set(pendant_set(g))
        fam = enumerate_mpcs(g)
        for s, cert in zip(fam.sets, fam.certificates):
            sset = set(s)
            # contains at least two pendant vertices
            assert len(sset & pend) >= 2
            # at eigenvalue 1 the parent of a pendant member lies outside S
            if abs(cert.lam - 1.0) < 1e-9:
                for p in sset & pend:
                    assert g.neighbors(p)[0] not in sset
            # the induced subgraph on a proper S is disconnected
            if len(sset) < g.n:
                sub = induced_subgraph(g, tuple(sorted(sset)))
                assert len(components(sub.graph)) >= 2
            # no outside vertex has exactly one neighbor in S
            for v in g.vertices():
                if v in sset:
                    continue
                k = sum(1 for w in g.neighbors(v) if w in sset)
                assert k != 1
            # retained outside vertices keep at least two S-neighbors
            sg = simplify(g, sset)
            for v in sg.retained:
                if v in sset:
                    continue
                assert len([w for w in g.neighbors(v) if w in sset]) >= 2


def test_perturbed_kernel_biconditional():
    for seed in range(12):
        n = 4 + seed % 7
        g = gen_random_tree(n, 1000 + seed)
        L = laplacian(g)
        for bits in itertools.product((0.0, -1.0), repeat=n):
            expect = all(b == 0.0 for b in bits)
            assert perturbed_kernel_full_support(L, bits) == expect


def test_unit_boundary_matches_brute_force():
    rng = random.Random(41)
    for seed in range(40):
        n = rng.randint(5, 14)
        g = gen_random_tree(n, 2000 + seed)
        mpcs = set(map(frozenset, enumerate_mpcs(g).sets))
        candidates = [frozenset(s) for s in mpcs]
        for _ in range(40):
            k = rng.randint(2, n - 1)
            candidates.append(frozenset(rng.sample(range(1, n + 1), k)))
        for s in candidates:
            try:
                verdict = unit_boundary_check(g, tuple(sorted(s)))
            except PreconditionUnmet:
                continue
            assert verdict == (s in mpcs), (g.edges, sorted(s))


def test_pendant_leader_bound_controls():
    for seed in range(100):
        g = gen_random_tree(2 + seed % 16, 3000 + seed)
        _, leaders = pendant_leader_bound(g)
        assert is_controllable(g, leaders)


@given(n=st.integers(2, 40), n_l=st.integers(1, 40), n_s=st.integers(1, 10**6))
@settings(max_examples=200, deadline=None)
def test_metrics_ranges(n, n_l, n_s):
    if n_l > n:
        with pytest.raises(ValueError):
            metrics(n, n_l, n_s)
        return
    N1, N2 = metrics(n, n_l, n_s)
    assert 0 < N1 <= 1
    assert N2 > 0
    m, e = sci5(N2)
    assert m == 0.0 or 1.0 <= m < 10.0 + 1e-9
    assert abs(float(N2) - m * 10.0 ** e) <= 1e-3 * float(N2)


@given(st.integers(0, 10**6), st.integers(1, 10**6))
@settings(max_examples=200, deadline=None)
def test_sci5_round_trip(p, q):
    x = Fraction(p, q)
    m, e = sci5(x)
    if p == 0:
        assert (m, e) == (0.0, 0)
    else:
        assert abs(m * 10.0 ** e - float(x)) <= 1e-3 * float(x)
