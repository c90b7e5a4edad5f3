import json
from fractions import Fraction

import pytest

from hypermod import fulkerson
from hypermod.errors import ArgumentError, InfeasibleError
from hypermod.hypercore import from_edges
from hypermod.partitions import feasible_partitions

F = Fraction


def test_triangle_blocker(tri):
    half = (F(1, 2),) * 3
    cuts = {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
    assert fulkerson.blocker_vectors(tri) == {half} | {tuple(map(F, c)) for c in cuts}


def test_twin_triples_blocker(twins):
    assert fulkerson.blocker_vectors(twins) == {(F(1, 2), F(1, 2))}


def test_path_excludes_singleton_partition(path3):
    # the all-singletons shrunk graph has cut vertex b, so (1/2, 1/2) splits
    vectors = fulkerson.blocker_vectors(path3)
    assert vectors == {(F(1), F(0)), (F(0), F(1))}
    elements = fulkerson.feasible_elements(path3)
    assert len(elements) == 3
    assert sum(not e.biconnected for e in elements) == 1


def test_split_at_cut_vertex(path3):
    bad = next(e for e in fulkerson.feasible_elements(path3) if not e.biconnected)
    split = fulkerson.split_at_cut_vertex(path3, bad.partition)
    assert split.holds(path3)
    assert split.lambdas == (F(1, 2), F(1, 2))


def test_split_none_when_biconnected(tri):
    for pu in feasible_partitions(tri):
        assert fulkerson.split_at_cut_vertex(tri, pu.partition) is None


def test_splits_hold_on_corpus(corpus_connected):
    for h in corpus_connected[:60]:
        for e in fulkerson.feasible_elements(h):
            if not e.biconnected:
                assert fulkerson.split_at_cut_vertex(h, e.partition).holds(h)


def test_verify_extreme(tri, twins, path3):
    assert fulkerson.verify_extreme(tri, [F(1, 2)] * 3)
    assert not fulkerson.verify_extreme(tri, [1, 1, 1])
    assert fulkerson.verify_extreme(path3, [1, 0])
    assert not fulkerson.verify_extreme(path3, [F(1, 2), F(1, 2)])
    assert fulkerson.verify_extreme(twins, [2, 0], polyhedron="partition")
    assert not fulkerson.verify_extreme(twins, [1, 1], polyhedron="partition")
    with pytest.raises(ArgumentError):
        fulkerson.verify_extreme(tri, [0, 0, 0])
    with pytest.raises(ArgumentError):
        fulkerson.verify_extreme(tri, [1, 1, 1], polyhedron="base")


def test_antichain(corpus_pc):
    assert fulkerson.dominates((1, 1), (1, 0))
    assert not fulkerson.dominates((1, 0), (1, 0))
    assert not fulkerson.is_antichain([(1, 1), (1, 0)])
    for h in corpus_pc[:50]:
        assert fulkerson.is_antichain(fulkerson.blocker_vectors(h))


def test_blocker_report(corpus_connected, twins, tail):
    for h in [twins, tail] + corpus_connected[:30]:
        rep = fulkerson.blocker_matches_extremes(h)
        assert rep.ok, str(rep)


def test_in_partition_polyhedron(twins):
    assert fulkerson.in_partition_polyhedron(twins, [1, 1])
    assert not fulkerson.in_partition_polyhedron(twins, [1, 0])


def test_blocker_json(tri):
    rows = json.loads(fulkerson.blocker_to_json(tri, fulkerson.blocker_omega(tri)))
    assert rows[0]["vector"] == {"ab": "1/2", "bc": "1/2", "ac": "1/2"}


def test_disconnected_rejected():
    with pytest.raises(InfeasibleError):
        fulkerson.blocker_vectors(from_edges([("a", "b"), ("c", "d")]))
