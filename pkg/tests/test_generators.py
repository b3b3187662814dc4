import pytest

from mpcskit.generators import (
    gen_cayley,
    gen_dsfn,
    gen_fig1,
    gen_fig5,
    gen_path,
    gen_random_tree,
    gen_star,
)
from mpcskit.graph import is_connected, is_tree, pendant_set


def test_path_and_star():
    assert gen_path(5).m == 4 and is_tree(gen_path(5))
    g = gen_star(6)
    assert g.degree(1) == 5 and pendant_set(g) == (2, 3, 4, 5, 6)


def test_fig1_shape():
    g = gen_fig1()
    assert (g.n, g.m) == (7, 7)
    assert not is_tree(g) and is_connected(g)


def test_fig5_shape():
    g = gen_fig5()
    assert (g.n, g.m) == (15, 14)
    assert is_tree(g)


def test_dsfn_sizes():
    for g in range(4):
        assert gen_dsfn(g).n == 3 ** g


def test_dsfn3_root_degree():
    g = gen_dsfn(3)
    # root connects to 2 new bottom vertices at step 1, 4 at step 2, 8 at
    # step 3
    assert g.degree(1) == 14
    assert is_connected(g)


def test_dsfn_bottom_level_count():
    # bottom level doubles each generation
    g2 = gen_dsfn(2)
    deg1 = [v for v in g2.vertices() if g2.degree(v) == 1]
    assert len(deg1) == 0 or is_connected(g2)
    assert gen_dsfn(2).n == 9 and gen_dsfn(2).m >= 8


def test_cayley_sizes():
    for g in range(1, 6):
        graph = gen_cayley(g)
        assert graph.n == 3 * 2 ** g - 2
        assert is_tree(graph)
        assert len(pendant_set(graph)) == 3 * 2 ** (g - 1)


def test_cayley1_is_star():
    g = gen_cayley(1)
    assert g.degree(1) == 3 and g.n == 4


def test_cayley2_structure():
    g = gen_cayley(2)
    assert set(g.neighbors(2)) == {1, 5, 6}
    assert set(g.neighbors(4)) == {1, 9, 10}


def test_generators_validate():
    with pytest.raises(ValueError):
        gen_dsfn(-1)
    with pytest.raises(ValueError):
        gen_cayley(0)
    with pytest.raises(ValueError):
        gen_random_tree(0, 1)


def test_random_tree_deterministic():
    a = gen_random_tree(12, 7)
    b = gen_random_tree(12, 7)
    assert a.edges == b.edges
    c = gen_random_tree(12, 8)
    assert a.edges != c.edges


def test_random_tree_always_tree():
    for seed in range(50):
        assert is_tree(gen_random_tree(2 + seed % 20, seed))
