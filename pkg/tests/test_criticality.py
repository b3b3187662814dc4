import numpy as np
import pytest

from mpcskit.criticality import (
    MpcsFamily,
    enumerate_mpcs,
    enumerate_mpcs_exhaustive,
    is_controllable,
    is_critical,
    is_perfect_critical,
    kalman_controllable,
    minimalize_cs,
    uniform_boundary_cs,
)
from mpcskit.errors import DisconnectedGraph
from mpcskit.generators import gen_fig1, gen_fig5, gen_star
from mpcskit.graph import from_edge_list


def test_fig1_cs_but_not_pcs():
    g = gen_fig1()
    cert = is_critical(g, (1, 2, 3, 4))
    assert cert is not None
    assert np.allclose(cert.witness[4:], 0, atol=1e-9)
    assert is_perfect_critical(g, (1, 2, 3, 4)) is None


def test_fig1_pcs_pattern():
    g = gen_fig1()
    cert = is_perfect_critical(g, (1, 2, 3))
    assert cert is not None and cert.kind == "perfect-critical"
    assert abs(cert.lam - 1.0) < 1e-9
    x = cert.witness[:3]
    # any eigenvector supported on the three leaves sums to zero there
    assert abs(x.sum()) < 1e-8
    assert np.allclose(cert.witness[3:], 0, atol=1e-9)


def test_fig1_not_critical():
    assert is_critical(gen_fig1(), (1, 5)) is None


def test_fig1_twin_pcs():
    cert = is_perfect_critical(gen_fig1(), (5, 7))
    assert cert is not None
    w = cert.witness
    assert abs(w[4] + w[6]) < 1e-9 and abs(w[4]) > 0.1


def test_uniform_boundary():
    g = gen_fig1()
    assert uniform_boundary_cs(g, (1, 2, 3))
    assert not uniform_boundary_cs(g, (1, 5))
    assert uniform_boundary_cs(g, (5, 7))


def test_minimalize():
    g = gen_fig1()
    m = minimalize_cs(g, (1, 2, 3, 4))
    assert len(m) == 2 and set(m) <= {1, 2, 3}
    assert is_perfect_critical(g, m) is not None


def test_exhaustive_fig1():
    fam = enumerate_mpcs_exhaustive(gen_fig1())
    assert set(fam.sets) == {(1, 2), (1, 3), (2, 3), (5, 7)}
    assert fam.complete
    assert all(p == "exhaustive" for p in fam.provenance)
    for cert in fam.certificates:
        assert cert.kind == "perfect-critical"


def test_exhaustive_cap_incomplete():
    fam = enumerate_mpcs_exhaustive(gen_fig5(), size_cap=2)
    assert fam.sets == ((6, 7),)
    assert not fam.complete and fam.search_cap == 2


def test_eigenspace_route_fig5():
    fam = enumerate_mpcs(gen_fig5())
    assert fam.complete
    assert set(map(frozenset, fam.sets)) == {
        frozenset({6, 7}),
        frozenset({1, 3, 4, 6, 9, 10, 12, 14}),
        frozenset({1, 3, 4, 7, 9, 10, 12, 14}),
    }


def test_controllability_fig1():
    g = gen_fig1()
    assert is_controllable(g, (1, 2, 5))
    verdict = is_controllable(g, (4,))
    assert not verdict
    assert set(verdict.obstruction.set) in (
        {1, 2}, {1, 3}, {2, 3}, {5, 7})
    assert verdict.obstruction.kind == "perfect-critical"


def test_hit_by_matches_controllability():
    g = gen_fig1()
    fam = enumerate_mpcs(g)
    assert fam.hit_by((1, 2, 5))
    assert not fam.hit_by((4, 6))
    assert bool(is_controllable(g, (4, 6))) is False


def test_kalman_agrees_with_eigenvector_test():
    for g in (gen_fig1(), gen_fig5(), gen_star(5)):
        for leaders in [(1,), (1, 2), (2, 3), (1, g.n)]:
            assert kalman_controllable(g, leaders) == bool(
                is_controllable(g, leaders))


def test_all_vertices_leaders():
    g = gen_fig1()
    assert is_controllable(g, g.vertices())
    assert kalman_controllable(g, g.vertices())


def test_empty_leaders_rejected():
    with pytest.raises(ValueError):
        is_controllable(gen_fig1(), ())
    with pytest.raises(ValueError):
        kalman_controllable(gen_fig1(), ())


def test_disconnected_rejected():
    g = from_edge_list([(1, 2), (3, 4)], 4)
    with pytest.raises(DisconnectedGraph):
        is_critical(g, (1, 2))
    with pytest.raises(DisconnectedGraph):
        is_controllable(g, (1,))


def test_family_antichain_enforced():
    with pytest.raises(ValueError):
        MpcsFamily(
            sets=((1, 2), (1, 2, 3)),
            provenance=("exhaustive", "exhaustive"),
            certificates=(None, None),
            complete=False,
            search_cap=3,
        )
