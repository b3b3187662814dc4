import pytest

from mpcskit.errors import ParseError
from mpcskit.generators import gen_fig1, gen_fig5
from mpcskit.graphio import (
    load,
    parse_dot,
    parse_edge_list,
    write_dot,
    write_edge_list,
)


def test_edge_list_round_trip(tmp_path):
    g = gen_fig5()
    p = tmp_path / "g.txt"
    p.write_text(write_edge_list(g))
    assert load(p).edges == g.edges


def test_edge_list_header_and_comments():
    g = parse_edge_list("# tail vertex is isolated-free\nn 3\n1 2\n2 3\n")
    assert g.n == 3 and g.m == 2
    g2 = parse_edge_list("1 2\n2 3\n")
    assert g2.n == 3


def test_edge_list_errors():
    with pytest.raises(ParseError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(ParseError):
        parse_edge_list("a b\n")
    with pytest.raises(ParseError):
        parse_edge_list("1 1\n")  # self loop surfaces as a parse error


def test_dot_round_trip(tmp_path):
    g = gen_fig1()
    p = tmp_path / "g.dot"
    p.write_text(write_dot(g))
    assert load(p).edges == g.edges
    assert parse_dot(write_dot(g)).n == g.n


def test_dot_errors():
    with pytest.raises(ParseError):
        parse_dot("digraph G { 1 -> 2; }")
    with pytest.raises(ParseError):
        parse_dot("graph G { 1 -- 2 [color=red]; }")


def test_load_format_override(tmp_path):
    p = tmp_path / "weird.txt"
    p.write_text(write_dot(gen_fig1()))
    assert load(p, fmt="dot").n == 7
    with pytest.raises(ParseError):
        load(p)  # treated as edge list by extension


def test_load_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load(tmp_path / "absent.txt")
