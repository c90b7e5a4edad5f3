"""Identity battery: production routines against brute-force references on one instance."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import decompose, fulkerson, metrics, modulus, oracle
from .datasets import is_partition_connected
from .decompose import CheckLine
from .errors import CapacityError, HypergraphError
from .hypercore import Hypergraph, is_connected
from .matroid import greedy_rank, matroid_strength, rank

TOL = 1e-6


def _rank_identity(h):
    if h.m > 10:
        raise CapacityError("rank check limited to |E| <= 10")
    bad = [
        f for k in range(h.m + 1) for f in combinations(range(h.m), k)
        if rank(h, [h.edge_ids[i] for i in f]) != greedy_rank(h, [h.edge_ids[i] for i in f])
    ]
    return CheckLine("rank by partitions = greedy rank (all edge subsets)", 0, len(bad), not bad)


def _omega_mod1(h):
    s = metrics.strength(h).value
    v, _ = oracle.mod1_lp(oracle.enumerate_multitrees(h))
    return CheckLine("Mod_1(Ω) by LP = S", s, v, v == s)


def _tree_mod1(h):
    s = metrics.strength(h).value
    sm = matroid_strength(h)[0]
    if not is_partition_connected(h):
        return CheckLine("not partition-connected: s(M) >= S", f">= {s}", sm, sm >= s)
    v, _ = oracle.mod1_lp(oracle.enumerate_hypertrees(h))
    return CheckLine("Mod_1(Γ) by LP = s(M) = S", s, (v, sm), v == sm == s)


def _blocker(h):
    rep = fulkerson.blocker_matches_extremes(h)
    return CheckLine("blocker = vertices of Adm(Ω); P vertices in Ω", "no mismatch", str(rep), rep.ok)


def _mod2_vs_qp(h):
    res = modulus.mod2_mnp(modulus.multitree_family(h))
    q, _ = oracle.qp_min_norm(oracle.enumerate_multitrees(h))
    err = max(abs(res.dual_value - q), abs(res.value * res.dual_value - 1))
    return CheckLine("min-norm point = reference QP; Mod_2 * dual = 1", f"<= {TOL}", f"{err:.2e}", err <= TOL)


def _levels(h):
    return [c for c in decompose.strength_arboricity_check(h)]


def _hdp(h):
    root = decompose.hdp(h)
    leaves = [n for n in root.leaves() if n.strength is not None]
    ok = all(n.strength == n.arboricity for n in leaves)
    return CheckLine("decomposition: additivity, restriction, S = D at leaves", "consistent",
                     f"{len(leaves)} homogeneous leaves", ok)


def _tree_vs_omega(h):
    if not is_partition_connected(h):
        return None
    a = modulus.mod2_mnp(modulus.hypertree_family(h)).eta_star
    b = modulus.mod2_mnp(modulus.multitree_family(h)).eta_star
    err = float(np.max(np.abs(a - b)))
    return CheckLine("η*(Γ) = η*(Ω)", f"<= {TOL}", f"{err:.2e}", err <= TOL)


def _symmetry(h):
    if h.n > 4:
        raise CapacityError("symmetry check limited to |V| <= 4")
    c = modulus.symmetry_check(h)
    err = max(c.modulus_error, c.density_error)
    return CheckLine(f"Mod_2(Ω) = Mod_2(Γ(H^{c.t}))/{c.t}", f"<= {TOL}", f"{err:.2e}", err <= TOL)


def _arboricity(h):
    d = metrics.arboricity(h).value
    e = metrics.arboricity_by_edges(h)
    return CheckLine("D by vertex sets = D by edge sets", d, e, d == e)


CHECKS = (
    _rank_identity, _omega_mod1, _tree_mod1, _arboricity, _blocker,
    _mod2_vs_qp, _levels, _hdp, _tree_vs_omega, _symmetry,
)


def verify(h: Hypergraph) -> list:
    """Run every check; capacity limits give SKIP lines, other errors give FAIL lines."""
    if h.n < 2 or not is_connected(h):
        return [CheckLine("connected with at least two vertices", True, False, False)]
    out = []
    for check in CHECKS:
        name = check.__name__.strip("_").replace("_", " ")
        try:
            got = check(h)
        except CapacityError as exc:
            out.append(CheckLine(f"{name} ({exc})", None, None, True, skipped=True))
            continue
        except HypergraphError as exc:
            out.append(CheckLine(name, "no error", f"{type(exc).__name__}: {exc}", False))
            continue
        if got is None:
            continue
        out.extend(got if isinstance(got, list) else [got])
    return out
