"""Hypergraph representation and structural operations.

A :class:`Hypergraph` is an immutable value: a vertex tuple, a tuple of
hyperedges (each a tuple of at least two distinct vertices, listed in vertex
order), a parallel tuple of stable edge identifiers and optional positive
rational weights.  Every operation below returns a new hypergraph; surviving
edges keep their identifiers so that edge vectors can be moved between a
hypergraph and its minors.

Edge vectors are plain tuples aligned with ``h.edge_ids`` (exact ``Fraction``
or ``int`` entries) or numpy arrays in float mode.  ``h.vector`` converts a
mapping keyed by edge id into that layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .config import limits
from .errors import ArgumentError, CapacityError, ValidationError


def to_rational(value) -> Fraction:
    """Parse ``3``, ``"3/2"``, ``Fraction(3, 2)`` or a float into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"not a rational: {value!r}") from None
    raise ValidationError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, eq=False)
class Hypergraph:
    vertices: tuple
    edges: tuple
    edge_ids: tuple
    weights: tuple | None = None

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise ValidationError("duplicate vertex identifiers")
        position = {v: i for i, v in enumerate(verts)}
        ids = tuple(str(e) for e in self.edge_ids)
        if len(ids) != len(self.edges):
            raise ValidationError("edge_ids and edges differ in length")
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate edge identifiers")
        edges = []
        for eid, edge in zip(ids, self.edges):
            members = {str(v) for v in edge}
            unknown = members - position.keys()
            if unknown:
                raise ValidationError(f"edge {eid} names unknown vertex {sorted(unknown)[0]!r}")
            if len(members) < 2:
                raise ValidationError(f"edge {eid} is a loop (fewer than 2 vertices)")
            edges.append(tuple(sorted(members, key=position.__getitem__)))
        weights = None
        if self.weights is not None:
            weights = tuple(to_rational(w) for w in self.weights)
            if len(weights) != len(edges):
                raise ValidationError("weights and edges differ in length")
            for eid, w in zip(ids, weights):
                if w <= 0:
                    raise ValidationError(f"edge {eid} has nonpositive weight {w}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "edge_ids", ids)
        object.__setattr__(self, "weights", weights)

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        body = ", ".join(f"{i}={{{','.join(e)}}}" for i, e in zip(self.edge_ids, self.edges))
        return f"Hypergraph(V={{{','.join(self.vertices)}}}, E=[{body}])"

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.edge_ids == other.edge_ids
            and self.weight_vector() == other.weight_vector()
        )

    def __hash__(self):
        return hash((self.vertices, self.edges, self.edge_ids))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edge_ids)}

    @cached_property
    def masks(self) -> tuple:
        """Edge vertex sets as integer bitmasks over ``self.vertices``."""
        return tuple(self.mask_of(e) for e in self.edges)

    def mask_of(self, vertices: Iterable) -> int:
        mask = 0
        for v in vertices:
            mask |= 1 << self.index[str(v)]
        return mask

    def vertices_of(self, mask: int) -> tuple:
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def weight_vector(self) -> tuple:
        if self.weights is None:
            return (Fraction(1),) * self.m
        return self.weights

    def with_weights(self, weights) -> "Hypergraph":
        return Hypergraph(self.vertices, self.edges, self.edge_ids, None if weights is None else self.vector(weights))

    def vector(self, values, default=None) -> tuple:
        """Align ``values`` (mapping by edge id, or sequence) with ``edge_ids``."""
        if isinstance(values, Mapping):
            extra = set(map(str, values)) - set(self.edge_ids)
            if extra:
                raise ArgumentError(f"unknown edge id {sorted(extra)[0]!r}")
            if default is None:
                missing = [e for e in self.edge_ids if e not in values]
                if missing:
                    raise ArgumentError(f"no value for edge {missing[0]!r}")
            return tuple(values.get(e, default) for e in self.edge_ids)
        values = tuple(values)
        if len(values) != self.m:
            raise ArgumentError(f"vector has {len(values)} entries, hypergraph has {self.m} edges")
        return values

    def as_dict(self, vec) -> dict:
        return dict(zip(self.edge_ids, vec))

    def edge_subset(self, f) -> tuple:
        """Indices of the edges named in ``f`` (ids or a 0/1 vector)."""
        if f is None:
            return ()
        f = list(f)
        if len(f) == self.m and all(isinstance(x, (int, bool)) and x in (0, 1) for x in f) \
                and not all(isinstance(x, str) for x in f):
            return tuple(i for i, x in enumerate(f) if x)
        try:
            return tuple(sorted(self.edge_index[str(e)] for e in f))
        except KeyError as exc:
            raise ArgumentError(f"unknown edge id {exc.args[0]!r}") from None

    # -- subset tables (exhaustive checks over 2^|V| vertex sets) ---------

    @cached_property
    def subset_table(self) -> "SubsetTable":
        return SubsetTable(self)


class SubsetTable:
    """Precomputed containment data over all vertex subsets X of V.

    ``containing[e]`` lists the subsets X (as integer masks) with e ⊆ X and
    ``limit[X]`` is |X| − 1, so a multiset A is a hyperforest exactly when
    ``counts[X] <= limit[X]`` for every X, where ``counts[X] = |A[X]|``.
    """

    def __init__(self, h: Hypergraph):
        if h.n > limits.subset_vertices:
            raise CapacityError(
                f"|V| = {h.n} exceeds the subset cap {limits.subset_vertices}"
            )
        size = 1 << h.n
        subsets = np.arange(size, dtype=np.int64)
        popcount = np.zeros(size, dtype=np.int64)
        for bit in range(h.n):
            popcount += (subsets >> bit) & 1
        self.popcount = popcount
        self.limit = popcount - 1
        self.limit[0] = np.iinfo(np.int64).max // 4
        self.containing = tuple(
            np.flatnonzero((subsets & mask) == mask) for mask in h.masks
        )

    def counts(self, mult) -> np.ndarray:
        counts = np.zeros(len(self.limit), dtype=np.int64)
        for e, k in enumerate(mult):
            if k:
                counts[self.containing[e]] += int(k)
        return counts


# -- parsing and serialisation ------------------------------------------


def parse(text: str, format: str = "json") -> Hypergraph:
    """Build a validated hypergraph from the JSON or line format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    if format == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise ValidationError("JSON hypergraph needs 'vertices' and 'edges'")
        ids, edges, weights = [], [], []
        for k, item in enumerate(data["edges"], start=1):
            if isinstance(item, dict):
                ids.append(str(item.get("id", f"e{k}")))
                edges.append(item["vertices"])
                weights.append(item.get("weight"))
            else:
                ids.append(f"e{k}")
                edges.append(item)
                weights.append(None)
        if all(w is None for w in weights):
            w = None
        else:
            w = [1 if x is None else x for x in weights]
        return Hypergraph(tuple(data["vertices"]), tuple(edges), tuple(ids), w)
    if format == "lines":
        vertices, edges = [], []
        seen = set()
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            names = line.split()
            for v in names:
                if v not in seen:
                    seen.add(v)
                    vertices.append(v)
            edges.append(names)
        for k, names in enumerate(edges, start=1):
            if len(set(names)) < 2:
                raise ValidationError(f"edge e{k} is a loop (fewer than 2 vertices)")
        return Hypergraph(tuple(vertices), tuple(edges), tuple(f"e{k}" for k in range(1, len(edges) + 1)))
    raise ValidationError(f"unknown format {format!r}")


def to_json(h: Hypergraph) -> str:
    edges = []
    for i, (eid, edge) in enumerate(zip(h.edge_ids, h.edges)):
        item = {"id": eid, "vertices": list(edge)}
        if h.weights is not None:
            item["weight"] = format_rational(h.weights[i])
        edges.append(item)
    return json.dumps({"vertices": list(h.vertices), "edges": edges}, indent=2)


def from_edges(edges: Sequence, vertices: Sequence | None = None, weights=None) -> Hypergraph:
    """Convenience constructor: ids e1, e2, ... in the given order."""
    if vertices is None:
        vertices = []
        for edge in edges:
            for v in edge:
                if str(v) not in vertices:
                    vertices.append(str(v))
    ids = tuple(f"e{k}" for k in range(1, len(edges) + 1))
    return Hypergraph(tuple(vertices), tuple(edges), ids, weights)


# -- connectivity helpers on bitmasks -----------------------------------


def component_masks(n: int, edge_masks: Iterable[int], within: int | None = None) -> list:
    """Vertex classes (as masks) of the 'share an edge' relation.

    Only edges contained in ``within`` are used, and only vertices of
    ``within`` are reported; classes come out ordered by lowest vertex.
    """
    if within is None:
        within = (1 << n) - 1
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mask in edge_masks:
        if mask & ~within:
            continue
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        root = find(low)
        while rest:
            b = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            other = find(b)
            if other != root:
                parent[other] = root
    classes = {}
    for v in range(n):
        if within >> v & 1:
            classes.setdefault(find(v), 0)
            classes[find(v)] |= 1 << v
    return sorted(classes.values(), key=lambda c: c & -c)


def merged_name(names: Sequence[str], taken: set) -> str:
    name = names[0] if len(names) == 1 else "+".join(names)
    while len(names) > 1 and name in taken:
        name += "'"
    return name


# -- structural operations ----------------------------------------------


def induced_by_vertices(h: Hypergraph, x: Iterable) -> Hypergraph:
    """The subhypergraph (X, E[X]) of edges entirely inside X."""
    x = {str(v) for v in x}
    if not x:
        raise ArgumentError("vertex subset must be nonempty")
    unknown = x - set(h.vertices)
    if unknown:
        raise ArgumentError(f"unknown vertex {sorted(unknown)[0]!r}")
    keep = [i for i, e in enumerate(h.edges) if set(e) <= x]
    return _subgraph(h, tuple(v for v in h.vertices if v in x), keep)


def _subgraph(h: Hypergraph, vertices: tuple, keep: Sequence[int]) -> Hypergraph:
    weights = None if h.weights is None else tuple(h.weights[i] for i in keep)
    return Hypergraph(
        vertices,
        tuple(h.edges[i] for i in keep),
        tuple(h.edge_ids[i] for i in keep),
        weights,
    )


def restrict_edges(h: Hypergraph, f) -> Hypergraph:
    """(V, F): same vertex set, only the edges in F."""
    return _subgraph(h, h.vertices, h.edge_subset(f))


def induced_by_edges(h: Hypergraph, a) -> Hypergraph:
    """H[A] for an integer multiset A; copies of an edge get ids ``e^1, e^2, ...``."""
    mult = h.vector(a, default=0)
    if any(int(k) != k or k < 0 for k in mult):
        raise ArgumentError("multiset entries must be nonnegative integers")
    if not any(mult):
        raise ArgumentError("multiset is empty")
    used = set()
    edges, ids, weights = [], [], []
    for i, k in enumerate(mult):
        k = int(k)
        for c in range(1, k + 1):
            edges.append(h.edges[i])
            ids.append(h.edge_ids[i] if k == 1 else f"{h.edge_ids[i]}^{c}")
            weights.append(h.weight_vector()[i])
        if k:
            used.update(h.edges[i])
    verts = tuple(v for v in h.vertices if v in used)
    return Hypergraph(verts, tuple(edges), tuple(ids), None if h.weights is None else tuple(weights))


def _rewrite(h: Hypergraph, classes: list, drop: set) -> Hypergraph:
    """Merge each vertex class into one vertex and rewrite the remaining edges."""
    taken = set(h.vertices)
    rep = {}
    new_vertices = []
    for mask in classes:
        names = h.vertices_of(mask)
        name = merged_name(names, taken)
        taken.add(name)
        new_vertices.append(name)
        for v in names:
            rep[v] = name
    edges, keep = [], []
    for i, e in enumerate(h.edges):
        if i in drop:
            continue
        image = []
        for v in e:
            if rep[v] not in image:
                image.append(rep[v])
        if len(image) >= 2:
            edges.append(image)
            keep.append(i)
    weights = None if h.weights is None else tuple(h.weights[i] for i in keep)
    return Hypergraph(
        tuple(new_vertices), tuple(edges), tuple(h.edge_ids[i] for i in keep), weights
    )


def contract(h: Hypergraph, f) -> Hypergraph:
    """H/F: merge the vertices of every edge in F, drop resulting loops.

    Merge classes are the connected components of the contracted edges, so the
    result does not depend on the order in which edges are contracted.  A
    merged vertex is named by joining its members with ``+``.
    """
    idx = set(h.edge_subset(f))
    if not idx:
        return h
    classes = component_masks(h.n, [h.masks[i] for i in idx])
    return _rewrite(h, classes, idx)


def shrink_partition(h: Hypergraph, p) -> Hypergraph:
    """The shrunk hypergraph H_P = H/(E \\ δ(P)) of a feasible partition P.

    ``p`` is a :class:`~hypermod.partitions.Partition` or any iterable of
    vertex classes.  Every class becomes one vertex, including classes with
    no internal edges.
    """
    classes = getattr(p, "classes", p)
    masks = [h.mask_of(c) for c in classes]
    if sum(bin(c).count("1") for c in masks) != h.n or _or_all(masks) != (1 << h.n) - 1:
        raise ArgumentError("classes do not partition the vertex set")
    for c in masks:
        if len(component_masks(h.n, h.masks, within=c)) != 1:
            raise ArgumentError(f"class {{{','.join(h.vertices_of(c))}}} is not connected")
    masks.sort(key=lambda c: c & -c)
    return _rewrite(h, masks, set())


def _or_all(masks):
    out = 0
    for c in masks:
        out |= c
    return out


def delete_vertex(h: Hypergraph, v) -> Hypergraph:
    """H \\ v: drop v from V and from every edge; discard edges left with < 2 vertices."""
    v = str(v)
    if v not in h.index:
        raise ArgumentError(f"unknown vertex {v!r}")
    if h.n < 2:
        raise ArgumentError("cannot delete the only vertex")
    edges, keep = [], []
    for i, e in enumerate(h.edges):
        rest = [u for u in e if u != v]
        if len(rest) >= 2:
            edges.append(rest)
            keep.append(i)
    weights = None if h.weights is None else tuple(h.weights[i] for i in keep)
    return Hypergraph(
        tuple(u for u in h.vertices if u != v),
        tuple(edges),
        tuple(h.edge_ids[i] for i in keep),
        weights,
    )


def is_connected(h: Hypergraph) -> bool:
    if h.n <= 1:
        return True
    return len(component_masks(h.n, h.masks)) == 1


def is_vertex_biconnected(h: Hypergraph) -> bool:
    """True when no single vertex deletion disconnects h (|V| <= 2 counts as biconnected)."""
    if not is_connected(h):
        raise ArgumentError("vertex-biconnectivity is only defined for connected hypergraphs")
    if h.n <= 2:
        return True
    return all(is_connected(delete_vertex(h, v)) for v in h.vertices)


def cut_vertices(h: Hypergraph) -> list:
    return [v for v in h.vertices if h.n > 2 and not is_connected(delete_vertex(h, v))]


def parallelize(h: Hypergraph, t: int):
    """Return (H^t, groups): each edge e replaced by t parallel copies e^1..e^t.

    ``groups`` maps the original edge id to the tuple of its copies' ids.
    """
    if t < 1:
        raise ArgumentError("t must be a positive integer")
    edges, ids, weights = [], [], []
    groups = {}
    for i, eid in enumerate(h.edge_ids):
        copies = tuple(f"{eid}^{c}" for c in range(1, t + 1))
        groups[eid] = copies
        for cid in copies:
            edges.append(h.edges[i])
            ids.append(cid)
            weights.append(h.weight_vector()[i])
    big = Hypergraph(h.vertices, tuple(edges), tuple(ids), None if h.weights is None else tuple(weights))
    return big, groups


def components(h: Hypergraph) -> list:
    """Connected components, isolated vertices included, ordered by lowest vertex."""
    out = []
    for mask in component_masks(h.n, h.masks):
        keep = [i for i, e in enumerate(h.masks) if e & mask == e]
        out.append(_subgraph(h, h.vertices_of(mask), keep))
    return out
