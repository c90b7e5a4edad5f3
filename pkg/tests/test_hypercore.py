import json
from fractions import Fraction

import pytest

from hypermod.errors import ArgumentError, ValidationError
from hypermod.hypercore import (
    Hypergraph,
    components,
    contract,
    delete_vertex,
    from_edges,
    induced_by_edges,
    induced_by_vertices,
    is_connected,
    is_vertex_biconnected,
    parallelize,
    parse,
    restrict_edges,
    shrink_partition,
    to_json,
)
from hypermod.partitions import make_partition


def test_parse_json_twin_triples():
    h = parse(json.dumps({"vertices": ["v1", "v2", "v3"], "edges": [["v1", "v2", "v3"], ["v1", "v2", "v3"]]}))
    assert (h.n, h.m) == (3, 2)
    assert h.edge_ids == ("e1", "e2")


def test_parse_single_vertex_no_edges():
    h = parse('{"vertices": ["a"], "edges": []}')
    assert (h.n, h.m) == (1, 0)


def test_parse_lines_triple_tail(tail):
    h = parse("v1 v2 v3\nv3 v4\n", "lines")
    assert h == tail


def test_parse_lines_ignores_comments_and_blank_lines():
    h = parse("# header\n\na b  # first\nb c\n", "lines")
    assert h.edges == (("a", "b"), ("b", "c"))


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"vertices": ["a", "b"], "edges": [["a"]]}, "e1"),
        ({"vertices": ["a", "b"], "edges": [["a", "z"]]}, "z"),
        ({"vertices": ["a", "b"], "edges": [{"id": "x", "vertices": ["a", "b"], "weight": 0}]}, "weight"),
        ({"vertices": ["a", "b"], "edges": [{"id": "x", "vertices": ["a", "b"], "weight": "-1/2"}]}, "weight"),
    ],
)
def test_parse_rejects_invalid(doc, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse(json.dumps(doc))


def test_parse_rejects_bad_json_and_format():
    with pytest.raises(ValidationError):
        parse("{not json")
    with pytest.raises(ValidationError):
        parse("a b", "csv")


def test_json_round_trip_with_weights():
    h = from_edges([("a", "b"), ("b", "c", "d")], weights=[Fraction(1, 3), 2])
    back = parse(to_json(h))
    assert back == h
    assert back.weights == (Fraction(1, 3), Fraction(2))


def test_parallel_edges_keep_ids(twins):
    assert twins.edges[0] == twins.edges[1]
    assert len(set(twins.edge_ids)) == 2


def test_induced_by_vertices(twins, tail):
    sub = induced_by_vertices(twins, ["v1", "v2"])
    assert (sub.n, sub.m) == (2, 0)
    assert induced_by_vertices(twins, twins.vertices) == twins
    sub = induced_by_vertices(tail, ["v3", "v4"])
    assert sub.edge_ids == ("e2",)
    with pytest.raises(ArgumentError):
        induced_by_vertices(tail, [])


def test_induced_by_edges(twins, tail):
    two = induced_by_edges(twins, (2, 0))
    assert (two.n, two.m) == (3, 2)
    assert two.edge_ids == ("e1^1", "e1^2")
    one = induced_by_edges(tail, (0, 1))
    assert one.vertices == ("v3", "v4") and one.m == 1
    big = induced_by_edges(tail, (2, 1))
    assert (big.n, big.m) == (4, 3)
    with pytest.raises(ArgumentError):
        induced_by_edges(tail, (0, 0))


def test_contract(tail, twins):
    c = contract(tail, ["e2"])
    assert c.n == 3 and c.m == 1
    assert c.edges[0] == c.vertices
    assert "v3+v4" in c.vertices
    whole = contract(tail, tail.edge_ids)
    assert (whole.n, whole.m) == (1, 0)
    loop = contract(twins, ["e1"])
    assert (loop.n, loop.m) == (1, 0)
    assert contract(tail, []) is tail


def test_shrink_partition(twins, tail, tri):
    assert shrink_partition(twins, [["v1"], ["v2"], ["v3"]]).edges == twins.edges
    s = shrink_partition(tail, make_partition(tail, [["v1"], ["v2"], ["v3", "v4"]]))
    assert s.n == 3 and s.m == 1 and len(s.edges[0]) == 3
    s = shrink_partition(tri, [["a", "b"], ["c"]])
    assert s.n == 2 and s.m == 2 and s.edges[0] == s.edges[1]
    with pytest.raises(ArgumentError, match="v1"):
        shrink_partition(tail, [["v1", "v4"], ["v2", "v3"]])


def test_delete_vertex(path3, twins, tri):
    d = delete_vertex(path3, "b")
    assert (d.n, d.m) == (2, 0)
    d = delete_vertex(twins, "v1")
    assert d.n == 2 and d.edges == (("v2", "v3"), ("v2", "v3"))
    d = delete_vertex(tri, "a")
    assert d.edge_ids == ("bc",)
    with pytest.raises(ArgumentError):
        delete_vertex(Hypergraph(("a",), (), (), None), "a")


def test_connectivity(tail):
    assert is_connected(tail)
    assert not is_connected(Hypergraph(("a", "b"), (), (), None))
    assert is_connected(Hypergraph(("a",), (), (), None))


def test_vertex_biconnected(path3, twins, single):
    assert not is_vertex_biconnected(path3)
    assert is_vertex_biconnected(twins)
    assert is_vertex_biconnected(single)
    with pytest.raises(ArgumentError):
        is_vertex_biconnected(Hypergraph(("a", "b"), (), (), None))


def test_parallelize(twins, tri):
    big, groups = parallelize(twins, 3)
    assert big.m == 6 and len(groups) == 2
    assert all(len(g) == 3 for g in groups.values())
    same, _ = parallelize(tri, 1)
    assert same.edges == tri.edges
    big, groups = parallelize(tri, 2)
    assert big.m == 6 and len(groups) == 3
    with pytest.raises(ArgumentError):
        parallelize(tri, 0)


def test_components(tail):
    parts = components(restrict_edges(tail, ["e2"]))
    shapes = sorted((c.vertices, c.edge_ids) for c in parts)
    assert shapes == [(("v1",), ()), (("v2",), ()), (("v3", "v4"), ("e2",))]
    assert components(tail) == [tail]
    assert len(components(Hypergraph(("a", "b", "c"), (), (), None))) == 3
