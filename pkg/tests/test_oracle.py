from fractions import Fraction

import numpy as np
import pytest

from hypermod import oracle
from hypermod.config import override_limits
from hypermod.errors import CapacityError, InfeasibleError, UnboundedError
from hypermod.hypercore import from_edges
from hypermod.matroid import is_hypertree

F = Fraction


def test_enumerate_hypertrees(tri, twins, tail):
    assert len(oracle.enumerate_hypertrees(tri)) == 3
    assert oracle.enumerate_hypertrees(twins).members == ((1, 1),)
    assert len(oracle.enumerate_hypertrees(tail)) == 0


def test_enumerate_multitrees(twins, tail, single):
    assert set(oracle.enumerate_multitrees(twins).members) == {(1, 1), (2, 0), (0, 2)}
    assert oracle.enumerate_multitrees(tail).members == ((2, 1),)
    assert oracle.enumerate_multitrees(single).members == ((1,),)


def test_multitree_cap_sufficiency(corpus_connected):
    for h in corpus_connected[:80]:
        assert oracle.enumerate_multitrees(h, h.n).members == oracle.enumerate_multitrees(h, h.n + 1).members


def test_enumerations_agree_with_production_test(corpus_connected):
    for h in corpus_connected[:40]:
        for m in oracle.enumerate_multitrees(h).members:
            assert is_hypertree(h, m)


def test_enumeration_caps():
    h = from_edges([(f"v{i}", f"v{i + 1}") for i in range(13)])
    with pytest.raises(CapacityError):
        oracle.enumerate_hypertrees(h)
    with override_limits(subset_edges=2):
        with pytest.raises(CapacityError):
            oracle.enumerate_multitrees(from_edges([("a", "b")] * 3))


@pytest.mark.parametrize("method", ["scan", "simplex", "auto"])
def test_lp_min_examples(method):
    assert oracle.lp_min([1, 2], [([1, 1], 1)], method) == (1, (1, 0))
    value, _ = oracle.lp_min([0, 0], [([1, 1], 1)], method)
    assert value == 0


def test_lp_min_triangle_mod1(tri):
    trees = oracle.enumerate_hypertrees(tri)
    for method in ("scan", "simplex", "generate"):
        assert oracle.mod1_lp(trees, method=method) == (F(3, 2), (F(1, 2),) * 3)


def test_lp_min_errors():
    with pytest.raises(InfeasibleError):
        oracle.lp_min([1, 1], [([-1, 0], 1)])
    with pytest.raises(UnboundedError):
        oracle.lp_min([-1, 1], [([1, 1], 1)])


def test_lp_methods_agree_on_random_programs():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        rows = [([int(x) for x in rng.integers(0, 3, n)], int(rng.integers(1, 3))) for _ in range(int(rng.integers(1, 5)))]
        rows = [(a, b) for a, b in rows if any(a)]
        if not rows:
            continue
        c = [int(x) for x in rng.integers(0, 4, n)]
        assert oracle.lp_min(c, rows, "scan")[0] == oracle.lp_min(c, rows, "simplex")[0]


def test_qp_min_norm(tri, twins):
    value, point = oracle.qp_min_norm(oracle.enumerate_hypertrees(tri))
    assert value == pytest.approx(4 / 3, abs=1e-12)
    assert np.allclose(point, 2 / 3)
    value, point = oracle.qp_min_norm(oracle.ExplicitFamily(("a", "b"), ((1, 2),)))
    assert value == 5
    value, point = oracle.qp_min_norm(oracle.enumerate_multitrees(twins))
    assert value == pytest.approx(2, abs=1e-12) and np.allclose(point, 1)


def test_qp_min_norm_weighted():
    fam = oracle.ExplicitFamily(("a", "b"), ((1, 0), (0, 1)))
    # min x^2/1 + (1-x)^2/3 at x = 1/4
    value, point = oracle.qp_min_norm(fam, scale=(1, 3))
    assert value == pytest.approx(0.25, abs=1e-12)
    assert np.allclose(point, [0.25, 0.75])


def test_polyhedron_vertices(twins, single, tri):
    assert set(oracle.polyhedron_vertices(twins)) == {(2, 0), (0, 2)}
    assert oracle.polyhedron_vertices(single) == [(1,)]
    assert set(oracle.polyhedron_vertices(tri)) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}


def test_polyhedron_vertices_are_multitrees(corpus_connected):
    for h in corpus_connected[:60]:
        omega = set(oracle.enumerate_multitrees(h).members)
        for v in oracle.polyhedron_vertices(h):
            assert all(x.denominator == 1 for x in v)
            assert tuple(int(x) for x in v) in omega


def test_covering_vertices_by_scan():
    # cross-check double description against a brute-force basic point scan
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        rows = [[int(x) for x in rng.integers(0, 3, n)] for _ in range(int(rng.integers(1, 5)))]
        rows = [r for r in rows if any(r)]
        if not rows:
            continue
        rhs = [int(x) for x in rng.integers(1, 3, len(rows))]
        dd = set(oracle.covering_vertices(rows, rhs))
        assert dd == _scan_vertices(rows, rhs)


def _scan_vertices(rows, rhs):
    from itertools import combinations

    n = len(rows[0])
    all_rows = rows + [[int(i == j) for j in range(n)] for i in range(n)]
    all_rhs = rhs + [0] * n
    out = set()
    for pick in combinations(range(len(all_rows)), n):
        x = oracle._solve_exact([all_rows[i] for i in pick], [all_rhs[i] for i in pick])
        if x is None:
            continue
        if all(sum(F(a) * v for a, v in zip(r, x)) >= b for r, b in zip(all_rows, all_rhs)):
            out.add(tuple(x))
    return out


def test_rational_rank():
    assert oracle.rational_rank([[1, 1], [2, 2]]) == 1
    assert oracle.rational_rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert oracle.rational_rank([]) == 0
