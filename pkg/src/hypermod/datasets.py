"""Bundled example hypergraphs and a seeded random corpus."""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

import numpy as np

from .errors import ArgumentError
from .hypercore import Hypergraph, is_connected, parse
from .matroid import greedy_extend

NAMES = ("twin_triples", "lone_triple", "triple_tail", "triangle", "path", "pendant_triangle", "three_level")

# Values computed by the exact routines and the solver, kept as regression fixtures.
THREE_LEVEL_LEVELS = (Fraction(3, 2), Fraction(1), Fraction(3, 5))
THREE_LEVEL_STRENGTH = Fraction(2, 3)
THREE_LEVEL_ARBORICITY = Fraction(5, 3)


def load(name: str) -> Hypergraph:
    if name not in NAMES:
        raise ArgumentError(f"no bundled hypergraph named {name!r}; choose from {', '.join(NAMES)}")
    text = resources.files("hypermod.data").joinpath(f"{name}.json").read_text()
    return parse(text)


def is_partition_connected(h: Hypergraph) -> bool:
    return h.n >= 1 and sum(greedy_extend(h, range(h.m))) == h.n - 1


def random_hypergraph(rng: np.random.Generator, n: int, m: int, max_size: int = 4) -> Hypergraph:
    vertices = tuple(f"v{i}" for i in range(1, n + 1))
    edges = []
    for _ in range(m):
        k = int(rng.integers(2, min(max_size, n) + 1))
        pick = sorted(rng.choice(n, size=k, replace=False).tolist())
        edges.append(tuple(vertices[i] for i in pick))
    return Hypergraph(vertices, tuple(edges), tuple(f"e{k}" for k in range(1, m + 1)))


def corpus(
    count: int = 200,
    seed: int = 2024,
    max_vertices: int = 7,
    max_edges: int = 8,
    partition_connected: bool = True,
) -> list:
    """``count`` random connected hypergraphs (2 <= |V| <= max_vertices, |E| <= max_edges).

    With ``partition_connected`` every instance contains a hypertree.
    Deterministic for a given seed.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(2, max_vertices + 1))
        low = n - 1 if partition_connected else max(1, (n + 2) // 3)
        if low > max_edges:
            continue
        m = int(rng.integers(low, max_edges + 1))
        h = random_hypergraph(rng, n, m)
        if not is_connected(h):
            continue
        if partition_connected and not is_partition_connected(h):
            continue
        out.append(h)
    return out


def random_weights(rng: np.random.Generator, m: int, max_num: int = 5, max_den: int = 4) -> tuple:
    return tuple(
        Fraction(int(rng.integers(1, max_num + 1)), int(rng.integers(1, max_den + 1))) for _ in range(m)
    )
