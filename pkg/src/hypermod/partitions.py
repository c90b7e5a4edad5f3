"""Set partitions of the vertex set, cut sets and feasible partitions.

Two enumerators live here.  :func:`all_partitions` walks every set
partition by restricted-growth string, and is capped at
``limits.partition_vertices``.  :func:`feasible_partitions` only builds
partitions whose classes induce connected subhypergraphs; it grows one
connected class at a time from a precomputed table of connected vertex
subsets, which keeps it usable on sparse hypergraphs well past the cap for
arbitrary partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .config import limits
from .errors import ArgumentError, CapacityError
from .hypercore import Hypergraph, component_masks


@dataclass(frozen=True)
class Partition:
    classes: tuple  # tuple of vertex-name tuples, ordered by lowest vertex
    cut: frozenset  # edge ids meeting at least two classes

    @property
    def size(self) -> int:
        return len(self.classes)

    def __len__(self):
        return len(self.classes)

    def __str__(self):
        return "{" + ", ".join("{" + ",".join(c) + "}" for c in self.classes) + "}"


@dataclass(frozen=True)
class PartitionUsage:
    partition: Partition
    vector: tuple  # (1/(|P|-1)) on the cut, 0 elsewhere, aligned with edge ids


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def partition_from_masks(h: Hypergraph, masks) -> Partition:
    masks = sorted(masks, key=lambda c: c & -c)
    cut = frozenset(
        h.edge_ids[i] for i, e in enumerate(h.masks) if not any(e & c == e for c in masks)
    )
    return Partition(tuple(h.vertices_of(c) for c in masks), cut)


def make_partition(h: Hypergraph, classes) -> Partition:
    """Validate ``classes`` as a partition of ``h.vertices`` and compute its cut."""
    masks = []
    seen = 0
    for c in classes:
        c = [str(v) for v in c]
        if not c:
            raise ArgumentError("partition classes must be nonempty")
        try:
            mask = h.mask_of(c)
        except KeyError as exc:
            raise ArgumentError(f"unknown vertex {exc.args[0]!r}") from None
        if mask & seen or bin(mask).count("1") != len(c):
            raise ArgumentError("partition classes overlap")
        seen |= mask
        masks.append(mask)
    if seen != (1 << h.n) - 1:
        raise ArgumentError("partition does not cover the vertex set")
    return partition_from_masks(h, masks)


def rgs_labels(n: int) -> Iterator[list]:
    """Yield every restricted-growth string of length n in lexicographic order.

    The same list object is reused between yields; copy it to keep it.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    top = [0] * n  # top[j] = max(a[0..j])
    j = 1
    if n == 1:
        yield a
        return
    # iterative odometer over positions 1..n-1
    while True:
        yield a
        j = n - 1
        while j > 0 and a[j] == top[j - 1] + 1:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        top[j] = max(top[j - 1], a[j])
        for k in range(j + 1, n):
            a[k] = 0
            top[k] = top[j]


def _labels_to_masks(labels) -> list:
    masks = [0] * (max(labels) + 1)
    for v, c in enumerate(labels):
        masks[c] |= 1 << v
    return masks


def all_partitions(h: Hypergraph, min_classes: int = 1) -> Iterator[Partition]:
    """Every set partition of V with at least ``min_classes`` classes, in RGS order."""
    if not 1 <= min_classes <= max(h.n, 1):
        raise ArgumentError("min_classes must lie in 1..|V|")
    if h.n > limits.partition_vertices:
        raise CapacityError(
            f"|V| = {h.n} exceeds the partition enumeration cap {limits.partition_vertices}"
        )
    for labels in rgs_labels(h.n):
        if max(labels, default=0) + 1 >= min_classes:
            yield partition_from_masks(h, _labels_to_masks(labels))


def cut_of(h: Hypergraph, p: Partition, f=None) -> frozenset:
    """δ_F(P): edges of F (default: all of E) meeting at least two classes."""
    masks = [h.mask_of(c) for c in p.classes]
    idx = range(h.m) if f is None else h.edge_subset(f)
    return frozenset(
        h.edge_ids[i] for i in idx if not any(h.masks[i] & c == h.masks[i] for c in masks)
    )


def is_feasible(h: Hypergraph, p: Partition) -> bool:
    for c in p.classes:
        if len(component_masks(h.n, h.masks, within=h.mask_of(c))) != 1:
            return False
    return True


def usage(h: Hypergraph, p: Partition) -> tuple:
    if p.size < 2:
        raise ArgumentError("usage vector needs at least two classes")
    w = Fraction(1, p.size - 1)
    return tuple(w if e in p.cut else Fraction(0) for e in h.edge_ids)


def connected_subsets(h: Hypergraph) -> np.ndarray:
    """Boolean array over all vertex masks X: is H[X] connected?  (X = 0 is False.)"""
    if h.n > limits.subset_vertices:
        raise CapacityError(f"|V| = {h.n} exceeds the subset cap {limits.subset_vertices}")
    size = 1 << h.n
    sets = np.arange(size, dtype=np.int64)
    reach = sets & -sets
    edges = np.array(h.masks, dtype=np.int64)
    inside = [(sets & e) == e for e in edges]
    for _ in range(max(h.n - 1, 0)):
        before = reach.copy()
        for e, ok in zip(edges, inside):
            hit = ok & ((reach & e) != 0)
            reach = np.where(hit, reach | e, reach)
        if np.array_equal(before, reach):
            break
    out = reach == sets
    out[0] = False
    return out


def _connected_by_low(h: Hypergraph) -> list:
    conn = connected_subsets(h)
    by_low = [[] for _ in range(h.n)]
    for mask in np.flatnonzero(conn).tolist():
        by_low[(mask & -mask).bit_length() - 1].append(mask)
    return by_low


def feasible_class_masks(h: Hypergraph) -> Iterator[list]:
    """Yield feasible partitions of V as lists of class masks (all sizes)."""
    by_low = _connected_by_low(h)
    full = (1 << h.n) - 1
    classes: list = []

    def rec(rest):
        if rest == 0:
            yield classes
            return
        low = (rest & -rest).bit_length() - 1
        for s in by_low[low]:
            if s & ~rest == 0:
                classes.append(s)
                yield from rec(rest & ~s)
                classes.pop()

    if h.n == 0:
        return
    yield from rec(full)


def feasible_partitions(h: Hypergraph) -> Iterator[PartitionUsage]:
    """Usage vectors (1/(|P|−1))·1_δ(P) of all feasible partitions with |P| >= 2."""
    for masks in feasible_class_masks(h):
        if len(masks) >= 2:
            p = partition_from_masks(h, masks)
            yield PartitionUsage(p, usage(h, p))


def split_to_feasible(h: Hypergraph, p: Partition) -> Partition:
    """Split every disconnected class into its components (same cut, more classes)."""
    masks = []
    for c in p.classes:
        masks.extend(component_masks(h.n, h.masks, within=h.mask_of(c)))
    return partition_from_masks(h, masks)
