from fractions import Fraction

import pytest

from mpcskit.criticality import enumerate_mpcs, is_controllable
from mpcskit.errors import CandidateNotControllable, CandidateNotTransversal
from mpcskit.generators import gen_cayley, gen_dsfn, gen_fig1, gen_fig5
from mpcskit.leaders import (
    certify_min_leaders,
    format_sci5,
    max_disjoint_subfamily,
    metrics,
    min_hitting_sets,
    sci5,
)


def test_fig1_minimum_leaders():
    fam = enumerate_mpcs(gen_fig1())
    n_l, found, total = min_hitting_sets(fam, 7)
    assert n_l == 3
    assert total == 6
    # oracle: the three leaf twins force two of {1,2,3}; {5,7} needs one more
    expect = {(1, 2, 5), (1, 2, 7), (1, 3, 5), (1, 3, 7), (2, 3, 5),
              (2, 3, 7)}
    assert set(found) == expect
    for s in found:
        assert is_controllable(gen_fig1(), s)


def test_fig5_minimum_leaders():
    fam = enumerate_mpcs(gen_fig5())
    n_l, found, total = min_hitting_sets(fam, 15)
    assert n_l == 2 and total == 15
    big = {1, 3, 4, 9, 10, 12, 14}
    expect = {tuple(sorted((a, b))) for a in (6, 7) for b in big} | {(6, 7)}
    assert set(found) == expect


def test_empty_family_convention():
    from mpcskit.criticality import MpcsFamily

    fam = MpcsFamily(sets=(), provenance=(), certificates=(),
                     complete=True, search_cap=4)
    n_l, found, total = min_hitting_sets(fam, 4)
    assert (n_l, total) == (1, 4)
    assert found == [(1,), (2,), (3,), (4,)]


def test_enumeration_cap():
    fam = enumerate_mpcs(gen_fig5())
    n_l, found, total = min_hitting_sets(fam, 15, cap=3)
    assert len(found) == 3 and total == 15


def test_max_disjoint_subfamily():
    assert max_disjoint_subfamily([]) == 0
    assert max_disjoint_subfamily([(1, 2), (2, 3), (4, 5)]) == 2
    # greedy would pick (1,2) and stop; exact answer is 2
    assert max_disjoint_subfamily([(1, 2), (1, 3), (2, 4)]) == 2


def test_metrics_known_rows():
    assert metrics(4, 2, 3) == (Fraction(1, 2), Fraction(1, 2))
    assert metrics(10, 3, 8) == (Fraction(3, 10), Fraction(1, 15))
    n1, n2 = metrics(22, 6, 64)
    assert n1 == Fraction(3, 11)
    assert format_sci5(n2) == "8.5776e-04"
    _, n2 = metrics(46, 12, 4096)
    assert format_sci5(n2) == "1.0527e-07"


def test_metrics_validation():
    with pytest.raises(ValueError):
        metrics(4, 0, 1)
    with pytest.raises(ValueError):
        metrics(4, 5, 1)
    with pytest.raises(ValueError):
        metrics(4, 2, 0)


def test_sci5():
    assert sci5(Fraction(1, 2)) == (5.0, -1)
    assert sci5(Fraction(0)) == (0.0, 0)
    assert sci5(Fraction(123456, 1)) == (1.2346, 5)


def test_certify_fig1():
    g = gen_fig1()
    fam = enumerate_mpcs(g)
    rep = certify_min_leaders(g, fam, (1, 2, 5))
    assert rep.certified
    assert rep.n_l == 3 and rep.n_s == 6
    assert rep.N1 == Fraction(3, 7)
    assert rep.lower_bound == rep.upper_bound == 3


def test_certify_dsfn2():
    g = gen_dsfn(2)
    fam = enumerate_mpcs(g)
    pairs = [s for s in fam.sets if len(s) == 2]
    candidate = tuple(min(p) for p in pairs)
    rep = certify_min_leaders(g, fam, candidate)
    assert rep.certified and rep.n_l == 3
    assert rep.n_s == 8  # 2^3 ways to pick one vertex per disjoint pair


def test_certify_cayley2():
    g = gen_cayley(2)
    fam = enumerate_mpcs(g)
    rep = certify_min_leaders(g, fam, (5, 7, 9))
    assert rep.certified and rep.n_l == 3 and rep.n_s == 8
    assert rep.N1 == Fraction(3, 10)


def test_certify_rejects_bad_candidates():
    g = gen_fig1()
    fam = enumerate_mpcs(g)
    with pytest.raises(CandidateNotTransversal):
        certify_min_leaders(g, fam, (4, 5))
    # hits the three twins but controllability still fails without {5,7}
    partial = type(fam)(sets=fam.sets[:3], provenance=fam.provenance[:3],
                        certificates=fam.certificates[:3],
                        complete=False, search_cap=7)
    with pytest.raises(CandidateNotControllable):
        certify_min_leaders(g, partial, (1, 2))


def test_minimality_no_smaller_transversal_controls():
    g = gen_fig1()
    from itertools import combinations

    for pair in combinations(range(1, 8), 2):
        assert not is_controllable(g, pair)
