from fractions import Fraction

import pytest

from hypermod.config import override_limits
from hypermod.errors import ArgumentError, CapacityError
from hypermod.hypercore import Hypergraph, from_edges
from hypermod.partitions import (
    all_partitions,
    bell,
    connected_subsets,
    cut_of,
    feasible_partitions,
    is_feasible,
    make_partition,
    rgs_labels,
    split_to_feasible,
)


def _bare(n):
    return Hypergraph(tuple(f"v{i}" for i in range(n)), (), (), None)


@pytest.mark.parametrize("n, minimum, count", [(3, 1, 5), (3, 2, 4), (4, 1, 15), (6, 1, 203)])
def test_partition_counts(n, minimum, count):
    assert sum(1 for _ in all_partitions(_bare(n), minimum)) == count


def test_rgs_order_and_bell():
    seqs = [tuple(a) for a in rgs_labels(4)]
    assert seqs == sorted(seqs) and len(seqs) == bell(4) == 15
    assert [bell(k) for k in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_all_partitions_cap():
    with override_limits(partition_vertices=3):
        with pytest.raises(CapacityError):
            list(all_partitions(_bare(4)))


def test_cut_of(twins, tail):
    singles = make_partition(twins, [["v1"], ["v2"], ["v3"]])
    assert cut_of(twins, singles) == {"e1", "e2"}
    assert cut_of(twins, singles, []) == frozenset()
    p = make_partition(tail, [["v1"], ["v2"], ["v3", "v4"]])
    assert cut_of(tail, p) == {"e1"}


def test_is_feasible(twins, tail):
    assert not is_feasible(twins, make_partition(twins, [["v1", "v2"], ["v3"]]))
    assert is_feasible(twins, make_partition(twins, [["v1"], ["v2"], ["v3"]]))
    assert is_feasible(tail, make_partition(tail, [["v1"], ["v2"], ["v3", "v4"]]))


def test_feasible_partitions(twins, tri, single):
    got = list(feasible_partitions(twins))
    assert len(got) == 1 and got[0].vector == (Fraction(1, 2), Fraction(1, 2))
    assert len(list(feasible_partitions(tri))) == 4
    got = list(feasible_partitions(single))
    assert len(got) == 1 and got[0].vector == (1,)


def test_feasible_partitions_match_filtered_enumeration(tail, tri, path3):
    for h in (tail, tri, path3, from_edges([("a", "b", "c"), ("c", "d"), ("d", "e", "a"), ("b", "e")])):
        by_filter = {p.classes for p in all_partitions(h, 2) if is_feasible(h, p)}
        direct = {pu.partition.classes for pu in feasible_partitions(h)}
        assert direct == by_filter


def test_make_partition_errors(tri):
    with pytest.raises(ArgumentError):
        make_partition(tri, [["a", "b"], ["b", "c"]])
    with pytest.raises(ArgumentError):
        make_partition(tri, [["a"], ["b"]])
    with pytest.raises(ArgumentError):
        make_partition(tri, [["a", "q"], ["b", "c"]])


def test_split_to_feasible_keeps_cut(twins):
    p = make_partition(twins, [["v1", "v2"], ["v3"]])
    q = split_to_feasible(twins, p)
    assert q.size == 3 and q.cut == p.cut


def test_connected_subsets(path3):
    conn = connected_subsets(path3)
    # masks: a=1, b=2, c=4
    assert conn[1] and conn[3] and conn[7]
    assert not conn[5] and not conn[0]
