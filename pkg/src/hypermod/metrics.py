"""Strength, fractional arboricity and related hypergraph quantities.

All values are exact ``Fraction`` objects and come with a witness.  Strength
is minimised over set partitions; above nine vertices (Bell(10) > 10^5) the
scan is restricted to feasible partitions, which gives the same minimum
because splitting a disconnected class into its components keeps the cut
and adds classes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .config import limits
from .errors import ArgumentError, CapacityError, DiagnosticError
from .hypercore import Hypergraph, is_connected
from .matroid import greedy_extend, is_hyperforest
from .partitions import Partition, _labels_to_masks, feasible_class_masks, partition_from_masks, rgs_labels

AUTO_ALL_PARTITIONS = 9


@dataclass(frozen=True)
class StrengthReport:
    value: Fraction
    witness_partition: Partition
    all_optima: list = field(default_factory=list)


@dataclass(frozen=True)
class ArboricityReport:
    value: Fraction
    witness_vertex_set: tuple


def density(h: Hypergraph, f=None) -> Fraction:
    """θ_H(F) = |F| / (|V(H[F])| - 1)."""
    idx = range(h.m) if f is None else h.edge_subset(f)
    idx = list(idx)
    if not idx:
        raise ArgumentError("density needs a nonempty edge set")
    span = 0
    for i in idx:
        span |= h.masks[i]
    return Fraction(len(idx), bin(span).count("1") - 1)


def _class_mask_lists(h: Hypergraph, method: str):
    if method == "auto":
        method = "all" if h.n <= AUTO_ALL_PARTITIONS else "feasible"
    if method == "all":
        if h.n > limits.partition_vertices:
            raise CapacityError(
                f"|V| = {h.n} exceeds the partition enumeration cap {limits.partition_vertices}"
            )
        return (_labels_to_masks(a) for a in rgs_labels(h.n))
    if method == "feasible":
        return feasible_class_masks(h)
    raise ArgumentError(f"unknown method {method!r}")


def strength(h: Hypergraph, weights=None, method: str = "auto", keep_all: bool = False) -> StrengthReport:
    """S_σ(H) = min σ(δ(P)) / (|P| - 1) over partitions with |P| >= 2.

    ``method`` is ``"all"`` (every set partition), ``"feasible"`` (feasible
    partitions only) or ``"auto"``.  The witness is the first optimum in
    enumeration order; ``keep_all`` also collects every optimal partition.
    """
    if h.n < 2:
        raise ArgumentError("strength needs at least two vertices")
    sigma = h.weight_vector() if weights is None else tuple(Fraction(w) for w in h.vector(weights))
    best = None
    witness = None
    optima = []
    for masks in _class_mask_lists(h, method):
        k = len(masks)
        if k < 2:
            continue
        cut = Fraction(0)
        for e, w in zip(h.masks, sigma):
            if not any(e & c == e for c in masks):
                cut += w
        value = cut / (k - 1)
        if best is None or value < best:
            best, witness = value, list(masks)
            optima = [list(masks)] if keep_all else []
        elif keep_all and value == best:
            optima.append(list(masks))
    return StrengthReport(
        best,
        partition_from_masks(h, witness),
        [partition_from_masks(h, m) for m in optima],
    )


def arboricity(h: Hypergraph) -> ArboricityReport:
    """D(H) = max |E[X]| / (|X| - 1) over vertex sets with |X| >= 2."""
    if h.m < 1:
        raise ArgumentError("fractional arboricity needs at least one edge")
    table = h.subset_table
    counts = table.counts([1] * h.m).tolist()
    sizes = table.popcount.tolist()
    best_num, best_den, best_key = -1, 1, None
    for x, (c, s) in enumerate(zip(counts, sizes)):
        if s < 2:
            continue
        d = s - 1
        key = (s, x)
        lhs, rhs = c * best_den, best_num * d
        if lhs > rhs or (lhs == rhs and key < best_key):
            best_num, best_den, best_key = c, d, key
    return ArboricityReport(Fraction(best_num, best_den), h.vertices_of(best_key[1]))


def arboricity_by_edges(h: Hypergraph) -> Fraction:
    """max θ_H(F) over nonempty edge subsets F (the edge-side formula for D)."""
    if h.m < 1:
        raise ArgumentError("fractional arboricity needs at least one edge")
    if h.m > limits.subset_edges:
        raise CapacityError(f"|E| = {h.m} exceeds the edge-subset cap {limits.subset_edges}")
    best = Fraction(0)
    span = [0] * (1 << h.m)
    for f in range(1, 1 << h.m):
        low = (f & -f).bit_length() - 1
        span[f] = span[f & (f - 1)] | h.masks[low]
        best = max(best, Fraction(bin(f).count("1"), bin(span[f]).count("1") - 1))
    return best


def is_k_partition_connected(h: Hypergraph, k: int) -> bool:
    """|δ(P)| >= k(|P| - 1) for every partition P."""
    if k < 1:
        raise ArgumentError("k must be positive")
    if h.n < 2:
        return True
    return strength(h).value >= k


def max_disjoint_hypertrees(h: Hypergraph) -> int:
    """floor(S(H)): the largest k for which H is k-partition-connected."""
    if h.n < 2:
        return 0
    return math.floor(strength(h).value)


def hyperforest_cover(h: Hypergraph, k: int | None = None) -> list:
    """Partition E into hyperforests, aiming for ceil(D(H)) of them.

    Greedy peeling is tried first; if it overshoots, Edmonds' matroid
    partitioning is run with exactly ``k`` parts.  Each returned forest is a
    tuple of edge ids.
    """
    if k is None:
        k = math.ceil(arboricity(h).value)
    remaining = list(range(h.m))
    peeled = []
    while remaining:
        mult = greedy_extend(h, remaining)
        forest = [i for i in remaining if mult[i]]
        peeled.append(forest)
        remaining = [i for i in remaining if not mult[i]]
    if len(peeled) > k:
        peeled = _matroid_partition(h, k)
    for forest in peeled:
        if not is_hyperforest(h, [1 if i in forest else 0 for i in range(h.m)]):
            raise DiagnosticError("cover contains a dependent set")
    return [tuple(h.edge_ids[i] for i in forest) for forest in peeled]


def _matroid_partition(h: Hypergraph, k: int) -> list:
    sets = [set() for _ in range(k)]
    home = {}

    def indep(members):
        return is_hyperforest(h, [1 if i in members else 0 for i in range(h.m)])

    for x in range(h.m):
        parent = {x: None}
        queue = deque([x])
        done = False
        while queue and not done:
            y = queue.popleft()
            for j in range(k):
                if home.get(y) == j:
                    continue
                if indep(sets[j] | {y}):
                    cur, target = y, j
                    while True:
                        if cur in home:
                            sets[home[cur]].discard(cur)
                        sets[target].add(cur)
                        home[cur] = target
                        if parent[cur] is None:
                            break
                        cur, target = parent[cur]
                    done = True
                    break
                for z in sorted(sets[j]):
                    if z not in parent and indep((sets[j] - {z}) | {y}):
                        parent[z] = (y, j)
                        queue.append(z)
        if not done:
            raise DiagnosticError(f"edges cannot be split into {k} hyperforests")
    return [sorted(s) for s in sets if s]


def min_hyperforest_cover(h: Hypergraph) -> int:
    """ceil(D(H)), confirmed by constructing a cover of that size."""
    k = math.ceil(arboricity(h).value)
    cover = hyperforest_cover(h, k)
    if len(cover) != k:
        raise DiagnosticError(f"cover has {len(cover)} hyperforests, bound is {k}")
    return k


def strength_by_contractions(h: Hypergraph) -> Fraction:
    """min θ(H/F) over edge sets F whose contraction keeps >= 2 vertices.

    Brute force over all 2^|E| subsets; meant for small cross-checks.
    """
    from .hypercore import contract

    if h.m > limits.subset_edges:
        raise CapacityError(f"|E| = {h.m} exceeds the edge-subset cap {limits.subset_edges}")
    best = None
    for f in range(0, 1 << h.m):
        minor = contract(h, [h.edge_ids[i] for i in range(h.m) if f >> i & 1])
        if minor.n < 2:
            continue
        value = Fraction(minor.m, minor.n - 1)
        if best is None or value < best:
            best = value
    return best


def connected_or_raise(h: Hypergraph) -> None:
    if not is_connected(h):
        raise ArgumentError("hypergraph is not connected")
