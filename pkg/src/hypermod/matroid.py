"""The hypergraphic matroid M(H).

Independent sets are hyperforests: edge multisets A with |A[X]| <= |X| - 1
for every nonempty vertex set X.  Independence is decided by that subset
condition directly (vectorised over a table of all 2^|V| vertex sets), and
multisets with multiplicity at most t are the independent sets of M(H^t).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .config import limits
from .errors import ArgumentError, CapacityError, InfeasibleError
from .hypercore import Hypergraph
from .partitions import all_partitions


def _multiset(h: Hypergraph, a) -> list:
    mult = list(h.vector(a, default=0))
    for k in mult:
        if k < 0 or int(k) != k:
            raise ArgumentError("multiset entries must be nonnegative integers")
    return [int(k) for k in mult]


def _indicator(h: Hypergraph, f) -> list:
    idx = set(h.edge_subset(f))
    return [1 if i in idx else 0 for i in range(h.m)]


def is_hyperforest(h: Hypergraph, a) -> bool:
    """Exhaustive subset test: |A[X]| <= |X| - 1 for all nonempty X ⊆ V."""
    mult = _multiset(h, a)
    if not any(mult):
        return True
    table = h.subset_table
    return bool((table.counts(mult) <= table.limit).all())


def is_independent(h: Hypergraph, f) -> bool:
    return is_hyperforest(h, _indicator(h, f))


def is_hypertree(h: Hypergraph, a) -> bool:
    """Membership in the multi-tree family: |A| = |V| - 1, V[A] = V, A a hyperforest."""
    mult = _multiset(h, a)
    if sum(mult) != h.n - 1:
        return False
    covered = 0
    for i, k in enumerate(mult):
        if k:
            covered |= h.masks[i]
    if covered != (1 << h.n) - 1 and h.n > 1:
        return False
    return is_hyperforest(h, mult)


def greedy_extend(h: Hypergraph, order, cap: int = 1, start=None) -> list:
    """Add edges in ``order`` as often as independence in M(H^cap) allows.

    Returns the multiplicity list.  ``start`` must itself be independent.
    """
    table = h.subset_table
    mult = [0] * h.m if start is None else list(start)
    counts = table.counts(mult)
    for e in order:
        room = cap - mult[e]
        if room <= 0:
            continue
        idx = table.containing[e]
        slack = int((table.limit[idx] - counts[idx]).min())
        k = min(slack, room)
        if k > 0:
            mult[e] += k
            counts[idx] += k
    return mult


def greedy_rank(h: Hypergraph, f=None) -> int:
    """Rank of F as the size of a greedily grown maximal hyperforest inside F."""
    idx = range(h.m) if f is None else h.edge_subset(f)
    return sum(greedy_extend(h, idx))


def rank(h: Hypergraph, f=None) -> int:
    """r(F) = min over partitions P of V of |V| - |P| + |δ_F(P)|, by enumeration."""
    idx = range(h.m) if f is None else h.edge_subset(f)
    masks = [h.masks[i] for i in idx]
    if not masks:
        return 0
    best = h.n
    for p in all_partitions(h):
        classes = [h.mask_of(c) for c in p.classes]
        crossing = sum(1 for e in masks if not any(e & c == e for c in classes))
        best = min(best, h.n - p.size + crossing)
    return best


def greedy_min_basis(h: Hypergraph, cost, multiplicity_cap: int = 1, require_hypertree: bool = True) -> tuple:
    """Minimum-cost maximal independent multiset of M(H^cap).

    Edges are scanned in ascending ``(cost, position)`` order and each is
    added as many times as independence and the cap allow.  With
    ``require_hypertree`` the result must have |V| - 1 elements, otherwise
    :class:`InfeasibleError` is raised.
    """
    if multiplicity_cap < 1:
        raise ArgumentError("multiplicity cap must be at least 1")
    cost = h.vector(cost)
    order = sorted(range(h.m), key=lambda i: (cost[i], i))
    mult = greedy_extend(h, order, multiplicity_cap)
    if require_hypertree and sum(mult) != h.n - 1:
        raise InfeasibleError(
            f"no hypertree at multiplicity cap {multiplicity_cap}: "
            f"maximal hyperforest has {sum(mult)} < {h.n - 1} edges"
        )
    return tuple(mult)


def closure_contains(h: Hypergraph, f, e) -> bool:
    """Is edge e spanned by F, i.e. r(F + e) = r(F)?"""
    idx = set(h.edge_subset(f))
    j = h.edge_subset([e])[0]
    if j in idx:
        raise ArgumentError("e must not belong to F")
    with_e = sum(greedy_extend(h, sorted(idx | {j})))
    return with_e == sum(greedy_extend(h, sorted(idx)))


@dataclass(frozen=True)
class ForestRepresentation:
    pairs: dict  # edge id -> (u, v), u and v distinct vertices of that edge

    def is_forest(self) -> bool:
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        for u, v in self.pairs.values():
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True


def forest_representation(h: Hypergraph, f=None) -> Optional[ForestRepresentation]:
    """Pick two vertices per edge so the pairs form a forest, or None if impossible.

    Plain backtracking with union-find undo; raises CapacityError once the
    node budget ``limits.backtrack_nodes`` is exhausted.
    """
    idx = list(range(h.m)) if f is None else list(h.edge_subset(f))
    if len(idx) > h.n - 1:
        return None
    parent = list(range(h.n))
    chosen = [None] * len(idx)
    budget = [limits.backtrack_nodes]

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(k):
        if k == len(idx):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            raise CapacityError("forest representation search exceeded its node budget")
        verts = [h.index[v] for v in h.edges[idx[k]]]
        for a in range(len(verts)):
            for b in range(a + 1, len(verts)):
                ra, rb = find(verts[a]), find(verts[b])
                if ra == rb:
                    continue
                parent[rb] = ra
                chosen[k] = (verts[a], verts[b])
                if rec(k + 1):
                    return True
                parent[rb] = rb
        return False

    if not rec(0):
        return None
    return ForestRepresentation(
        {h.edge_ids[i]: (h.vertices[a], h.vertices[b]) for i, (a, b) in zip(idx, chosen)}
    )


def _all_ranks(h: Hypergraph) -> list:
    if h.m > limits.subset_edges:
        raise CapacityError(f"|E| = {h.m} exceeds the edge-subset cap {limits.subset_edges}")
    ranks = [0] * (1 << h.m)
    for mask in range(1, 1 << h.m):
        ranks[mask] = sum(greedy_extend(h, [i for i in range(h.m) if mask >> i & 1]))
    return ranks


def _ids(h: Hypergraph, mask: int) -> frozenset:
    return frozenset(h.edge_ids[i] for i in range(h.m) if mask >> i & 1)


def matroid_strength(h: Hypergraph, weights=None):
    """s_σ(M) = min σ(X) / (r(E) - r(E \\ X)) over X with r(E \\ X) < r(E).

    Returns ``(value, X)`` where X is the largest optimal set (ties by mask).
    """
    sigma = h.weight_vector() if weights is None else tuple(Fraction(w) for w in h.vector(weights))
    ranks = _all_ranks(h)
    full = (1 << h.m) - 1
    if ranks[full] < 1:
        raise ArgumentError("matroid strength needs r(E) >= 1")
    best, witness = None, None
    for x in range(1, full + 1):
        drop = ranks[full] - ranks[full & ~x]
        if drop <= 0:
            continue
        value = sum((sigma[i] for i in range(h.m) if x >> i & 1), Fraction(0)) / drop
        key = (bin(x).count("1"), x)
        if best is None or value < best or (value == best and key > witness[0]):
            best, witness = value, (key, x)
    return best, _ids(h, witness[1])


def matroid_arboricity(h: Hypergraph):
    """D(M) = max |X| / r(X) over X with r(X) > 0; returns ``(value, X)``."""
    if h.m < 1:
        raise ArgumentError("matroid arboricity needs at least one edge")
    ranks = _all_ranks(h)
    best, witness = None, None
    for x in range(1, 1 << h.m):
        if ranks[x] == 0:
            continue
        value = Fraction(bin(x).count("1"), ranks[x])
        key = (bin(x).count("1"), x)
        if best is None or value > best or (value == best and key > witness[0]):
            best, witness = value, (key, x)
    return best, _ids(h, witness[1])
