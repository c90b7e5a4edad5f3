"""The Fulkerson blocker of the multi-tree family.

The extreme points of Adm(Ω(H)) are the vectors (1/(|P|-1)) 1_δ(P) over
feasible partitions P whose shrunk hypergraph H_P is vertex-biconnected.
This module builds that list from partitions alone and cross-checks it
against brute-force vertex enumeration and exact rank tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ArgumentError, InfeasibleError
from .hypercore import (
    Hypergraph,
    component_masks,
    delete_vertex,
    format_rational,
    is_connected,
    is_vertex_biconnected,
    shrink_partition,
)
from .partitions import Partition, PartitionUsage, all_partitions, feasible_partitions, partition_from_masks, usage


@dataclass(frozen=True)
class BlockerElement:
    usage: PartitionUsage
    shrunk: Hypergraph
    biconnected: bool

    @property
    def vector(self) -> tuple:
        return self.usage.vector

    @property
    def partition(self) -> Partition:
        return self.usage.partition


def _require_connected(h: Hypergraph) -> None:
    if h.n < 2:
        raise ArgumentError("need at least two vertices")
    if not is_connected(h):
        raise InfeasibleError("hypergraph is disconnected, so Ω(H) is empty")


def feasible_elements(h: Hypergraph) -> list:
    """Every feasible partition with |P| >= 2, its shrunk hypergraph and biconnectivity flag."""
    _require_connected(h)
    out = []
    for pu in feasible_partitions(h):
        shrunk = shrink_partition(h, pu.partition)
        out.append(BlockerElement(pu, shrunk, is_vertex_biconnected(shrunk)))
    return out


def blocker_omega(h: Hypergraph) -> list:
    """Ω̂(H): feasible partitions whose shrunk hypergraph is vertex-biconnected."""
    return [b for b in feasible_elements(h) if b.biconnected]


def blocker_vectors(h: Hypergraph) -> set:
    return {b.vector for b in blocker_omega(h)}


def blocker_to_json(h: Hypergraph, elements) -> str:
    rows = [
        {
            "partition": [list(c) for c in b.partition.classes],
            "vector": {e: format_rational(x) for e, x in zip(h.edge_ids, b.vector)},
        }
        for b in elements
    ]
    return json.dumps(rows, indent=2)


def in_partition_polyhedron(h: Hypergraph, x) -> bool:
    """x >= 0 and x(δ(P)) >= |P| - 1 for every partition P with |P| >= 2 (exact)."""
    x = [Fraction(v) for v in h.vector(x)]
    if any(v < 0 for v in x):
        return False
    if h.n < 2:
        return True
    pos = {e: i for i, e in enumerate(h.edge_ids)}
    for p in all_partitions(h, min_classes=2):
        if sum((x[pos[e]] for e in p.cut), Fraction(0)) < p.size - 1:
            return False
    return True


def _tight_rank(x, rows, rhs) -> int:
    from .oracle import rational_rank

    tight = [list(r) for r, b in zip(rows, rhs) if sum(Fraction(a) * v for a, v in zip(r, x)) == b]
    n = len(x)
    tight += [[1 if j == i else 0 for j in range(n)] for i in range(n) if x[i] == 0]
    return rational_rank(tight) if tight else 0


def _omega_rows(h: Hypergraph):
    from .oracle import ExplicitFamily, enumerate_multitrees

    members = ExplicitFamily(h.edge_ids, enumerate_multitrees(h).members).minimal().members
    return [list(m) for m in members], [1] * len(members)


def _partition_rows(h: Hypergraph):
    rows, rhs = [], []
    for p in all_partitions(h, min_classes=2):
        rows.append([1 if e in p.cut else 0 for e in h.edge_ids])
        rhs.append(p.size - 1)
    return rows, rhs


def verify_extreme(h: Hypergraph, w, polyhedron: str = "adm") -> bool:
    """Is w an extreme point of the polyhedron?  Decided by the rank of its tight rows.

    ``polyhedron="adm"`` (default) is Adm(Ω(H)) = {w >= 0 : w.x >= 1 for x in Ω};
    ``"partition"`` is the partition polyhedron x(δ(P)) >= |P| - 1.  Raises
    :class:`ArgumentError` when w is not in the polyhedron.
    """
    _require_connected(h)
    x = [Fraction(v) for v in h.vector(w)]
    if polyhedron == "adm":
        rows, rhs = _omega_rows(h)
    elif polyhedron == "partition":
        rows, rhs = _partition_rows(h)
    else:
        raise ArgumentError(f"unknown polyhedron {polyhedron!r}")
    if any(v < 0 for v in x) or any(
        sum(Fraction(a) * v for a, v in zip(r, x)) < b for r, b in zip(rows, rhs)
    ):
        raise ArgumentError("point does not lie in the polyhedron")
    return _tight_rank(x, rows, rhs) == h.m


def dominates(a, b) -> bool:
    """a >= b entrywise and a != b."""
    return a != b and all(x >= y for x, y in zip(a, b))


def is_antichain(vectors) -> bool:
    vectors = list(vectors)
    return not any(dominates(a, b) for a in vectors for b in vectors)


@dataclass(frozen=True)
class Split:
    """A convex split  w_P = λ1 w_P1 + λ2 w_P2  built from a cut vertex of H_P."""

    partition: Partition
    first: Partition
    second: Partition
    lambdas: tuple

    def holds(self, h: Hypergraph) -> bool:
        lhs = usage(h, self.partition)
        a, b = usage(h, self.first), usage(h, self.second)
        return all(x == self.lambdas[0] * y + self.lambdas[1] * z for x, y, z in zip(lhs, a, b)) \
            and a != b and sum(self.lambdas) == 1


def split_at_cut_vertex(h: Hypergraph, p: Partition) -> Optional[Split]:
    """Write w_P as a convex combination of two other feasible-partition vectors.

    Pick a cut vertex v_j of H_P; let A be the classes in one component of
    H_P - v_j and B the rest.  Then P1 = {V_i : i in A} + {union of B and V_j}
    and P2 = {V_i : i in B} + {union of A and V_j} are feasible, their cuts
    split δ(P), and |P1| + |P2| = |P| + 1.  Returns None if H_P is
    vertex-biconnected.
    """
    shrunk = shrink_partition(h, p)
    if is_vertex_biconnected(shrunk):
        return None
    masks = [h.mask_of(c) for c in p.classes]
    # shrunk vertices follow the classes in lowest-vertex order
    order = sorted(range(len(masks)), key=lambda i: masks[i] & -masks[i])
    name_to_class = {shrunk.vertices[k]: order[k] for k in range(len(order))}
    for v in shrunk.vertices:
        rest = delete_vertex(shrunk, v)
        comps = component_masks(rest.n, rest.masks)
        if len(comps) < 2:
            continue
        j = name_to_class[v]
        a = [name_to_class[u] for u in rest.vertices_of(comps[0])]
        b = [i for i in range(len(masks)) if i != j and i not in a]
        union_b = masks[j]
        for i in b:
            union_b |= masks[i]
        union_a = masks[j]
        for i in a:
            union_a |= masks[i]
        p1 = partition_from_masks(h, [masks[i] for i in a] + [union_b])
        p2 = partition_from_masks(h, [masks[i] for i in b] + [union_a])
        k = Fraction(p.size - 1)
        return Split(p, p1, p2, (Fraction(p1.size - 1) / k, Fraction(p2.size - 1) / k))
    raise ArgumentError("no cut vertex found in a non-biconnected hypergraph")


@dataclass
class BlockerReport:
    blocker: list
    adm_vertices: list
    polyhedron_vertices: list
    omega: list
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        head = f"blocker={len(self.blocker)} adm-vertices={len(self.adm_vertices)} " \
               f"P-vertices={len(self.polyhedron_vertices)} |Ω|={len(self.omega)}"
        return head if self.ok else head + "\n" + "\n".join(self.failures)


def blocker_matches_extremes(h: Hypergraph) -> BlockerReport:
    """Cross-validate the partition description of Ω̂(H) against brute force.

    Checks that (a) each blocker vector is an extreme point of Adm(Ω), and
    the blocker equals the vertex set of Adm(Ω) found by double description;
    (b) each vertex of the partition polyhedron is in Ω; (c) Adm(Φ) = Dom(Ω)
    for the feasible-partition family Φ: every member of Ω is admissible for
    Φ and every vertex of Adm(Φ) belongs to Ω; plus the antichain property
    and the cut-vertex split of every non-biconnected feasible partition.
    """
    from .oracle import ExplicitFamily, adm_vertices, covering_vertices, enumerate_multitrees, polyhedron_vertices

    elements = feasible_elements(h)
    blocker = [b.vector for b in elements if b.biconnected]
    omega = list(enumerate_multitrees(h).members)
    adm = adm_vertices(ExplicitFamily(h.edge_ids, tuple(omega)))
    pverts = polyhedron_vertices(h)
    fails = []
    for b in blocker:
        if not verify_extreme(h, b):
            fails.append(f"blocker vector {b} is not extreme in Adm(Ω)")
    if set(blocker) != set(adm):
        fails.append(f"blocker {sorted(set(blocker))} != Adm(Ω) vertices {sorted(set(adm))}")
    if not is_antichain(blocker):
        fails.append("blocker vectors are not an antichain")
    omega_set = {tuple(Fraction(x) for x in m) for m in omega}
    for v in pverts:
        if any(x.denominator != 1 for x in v):
            fails.append(f"partition polyhedron vertex {v} is not integral")
        if v not in omega_set:
            fails.append(f"partition polyhedron vertex {v} is not a multi-tree")
    phi = [b.vector for b in elements]
    for m in omega:
        if any(sum(a * x for a, x in zip(row, m)) < 1 for row in phi):
            fails.append(f"multi-tree {m} is not admissible for the feasible-partition family")
    for v in covering_vertices(phi, [1] * len(phi)):
        if v not in omega_set:
            fails.append(f"Adm(Φ) vertex {v} is not a multi-tree")
    for b in elements:
        if not b.biconnected:
            s = split_at_cut_vertex(h, b.partition)
            if s is None or not s.holds(h):
                fails.append(f"no convex split for non-biconnected partition {b.partition}")
    return BlockerReport(blocker, adm, pverts, omega, fails)
