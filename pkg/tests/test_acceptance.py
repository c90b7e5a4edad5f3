"""Acceptance criteria, one test per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import time
from fractions import Fraction
from itertools import combinations

import numpy as np

from hypermod import datasets, decompose, fulkerson, metrics, modulus, oracle
from hypermod.matroid import greedy_rank, matroid_strength, rank

F = Fraction


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


def test_criterion_01_twin_triples_exact_values():
    with Timer(1.0):
        h = datasets.load("twin_triples")
        omega = oracle.enumerate_multitrees(h)
        assert set(omega.members) == {(1, 1), (2, 0), (0, 2)}
        assert set(oracle.polyhedron_vertices(h)) == {(F(2), F(0)), (F(0), F(2))}
        sigma = (F(1), F(2))
        assert metrics.strength(h, sigma).value == F(3, 2)
        res = modulus.mod1(modulus.hypertree_family(h), weights=sigma)
        assert res.value == 1


def test_criterion_02_lone_triple_strength_vs_matroid_strength():
    with Timer(1.0):
        h = datasets.load("lone_triple")
        assert metrics.strength(h).value == F(1, 2)
        assert matroid_strength(h)[0] == 1


def test_criterion_03_mod1_tree_equals_strength(corpus_pc):
    assert len(corpus_pc) >= 200
    with Timer(60):
        for h in corpus_pc:
            assert h.n <= 7 and h.m <= 8
            assert matroid_strength(h)[0] == metrics.strength(h).value, h


def test_criterion_04_weighted_mod1_omega_equals_weighted_strength(corpus_pc):
    rng = np.random.default_rng(11)
    with Timer(60):
        for h in corpus_pc:
            w = datasets.random_weights(rng, h.m)
            value, rho = oracle.mod1_lp(oracle.enumerate_multitrees(h), w)
            assert value == metrics.strength(h, w).value, (h, w)


def test_criterion_05_blocker_equals_adm_vertices(corpus_pc):
    with Timer(60):
        for h in corpus_pc:
            got = fulkerson.blocker_vectors(h)
            want = set(oracle.adm_vertices(oracle.enumerate_multitrees(h)))
            assert got == want, h


def test_criterion_06_rank_formula_equals_greedy(corpus_pc):
    checked = 0
    with Timer(30):
        for h in corpus_pc:
            if h.m > 6:
                continue
            for k in range(h.m + 1):
                for f in combinations(h.edge_ids, k):
                    assert rank(h, list(f)) == greedy_rank(h, list(f)), (h, f)
                    checked += 1
    assert checked > 0


def test_criterion_07_min_norm_point_matches_reference_qp(corpus_pc):
    worst_obj = worst_dual = 0.0
    used = 0
    with Timer(60):
        for h in corpus_pc:
            trees = oracle.enumerate_hypertrees(h)
            if len(trees) > 200:
                continue
            used += 1
            res = modulus.mod2_mnp(modulus.hypertree_family(h))
            ref, _ = oracle.qp_min_norm(trees)
            worst_obj = max(worst_obj, abs(res.dual_value - ref))
            worst_dual = max(worst_dual, abs(res.value * res.dual_value - 1))
    assert used > 0
    assert worst_obj <= 1e-6
    assert worst_dual <= 1e-6


def test_criterion_08_strength_and_arboricity_from_density(corpus_connected):
    worst = 0.0
    with Timer(60):
        for h in corpus_connected:
            eta = modulus.mod2_mnp(modulus.multitree_family(h)).eta_star
            worst = max(
                worst,
                abs(1 / eta.max() - float(metrics.strength(h).value)),
                abs(1 / eta.min() - float(metrics.arboricity(h).value)),
            )
    assert worst <= 1e-6


def _split_errors(root):
    add = restr = 0.0
    leaves_ok = True
    for node in root.walk():
        if node.kind == "leaf-homogeneous":
            leaves_ok &= node.strength == node.arboricity
        if node.kind != "split" or not node.children:
            continue
        kids = [c for c in node.children if c.eta is not None]
        add = max(add, abs(sum(c.dual_value for c in kids) - node.dual_value))
        pos = {e: i for i, e in enumerate(node.hypergraph.edge_ids)}
        for c in kids:
            mine = node.eta[[pos[e] for e in c.hypergraph.edge_ids]]
            restr = max(restr, float(np.max(np.abs(mine - c.eta))))
    return add, restr, leaves_ok


def test_criterion_09_serial_rule(corpus_connected):
    splits = 0
    with Timer(60):
        for h in corpus_connected:
            root = decompose.hdp(h, "multitree")
            add, restr, leaves_ok = _split_errors(root)
            splits += sum(1 for n in root.walk() if n.children)
            assert add <= 1e-6 and restr <= 1e-6 and leaves_ok, h
        for h in [g for g in corpus_connected if datasets.is_partition_connected(g)][:60]:
            add, restr, leaves_ok = _split_errors(decompose.hdp(h, "tree"))
            assert add <= 1e-6 and restr <= 1e-6 and leaves_ok, h
    assert splits > 0


def test_criterion_10_tree_and_multitree_densities_agree(corpus_pc):
    worst = 0.0
    with Timer(30):
        for h in corpus_pc:
            a = modulus.mod2_mnp(modulus.hypertree_family(h)).eta_star
            b = modulus.mod2_mnp(modulus.multitree_family(h)).eta_star
            worst = max(worst, float(np.max(np.abs(a - b))))
    assert worst <= 1e-6


def test_criterion_11_symmetry_reduction(corpus_pc, corpus_connected):
    small = [h for h in corpus_pc + corpus_connected if h.n <= 4]
    assert small
    with Timer(30):
        for h in small:
            c = modulus.symmetry_check(h)
            assert c.t == h.n
            assert c.modulus_error <= 1e-6, h
            assert c.density_error <= 1e-6, h


def _shape(node):
    return sorted(c.provenance for c in node.children)


def test_criterion_12_three_level_decomposition_pattern():
    with Timer(10):
        h = datasets.load("three_level")
        root = decompose.hdp(h)
    assert _shape(root) == ["component", "component", "isolated", "isolated", "shrunk"]
    comps = [c for c in root.children if c.provenance == "component"]
    a, b = (c.hypergraph for c in comps)
    assert (a.n, a.m) == (b.n, b.m) and sorted(len(e) for e in a.edges) == sorted(len(e) for e in b.edges)
    for c in comps:
        assert c.kind == "split"
        assert all(g.is_leaf for g in c.children)
        assert _shape(c) == ["component", "isolated", "isolated", "shrunk"]
    shrunk = next(c for c in root.children if c.provenance == "shrunk")
    assert shrunk.kind == "leaf-homogeneous"
    assert root.levels == list(datasets.THREE_LEVEL_LEVELS)
    assert root.leaf_levels() == set(datasets.THREE_LEVEL_LEVELS)
    assert root.strength == datasets.THREE_LEVEL_STRENGTH
    assert root.arboricity == datasets.THREE_LEVEL_ARBORICITY


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
