"""Enumeration caps shared by the exhaustive routines.

The caps are read at call time, so the CLI (or a test) can raise or lower
them for one run with :func:`override_limits`.
"""

from contextlib import contextmanager
from dataclasses import dataclass, fields


@dataclass
class Limits:
    # set partitions of V are enumerated up to this many vertices (Bell(12) ~ 4.2e6)
    partition_vertices: int = 12
    # 2^|V| subset tables (hyperforest tests, arboricity) up to this many vertices
    subset_vertices: int = 16
    # 2^|E| edge-subset scans (matroid strength / arboricity)
    subset_edges: int = 20
    # backtracking budget for forest representations
    backtrack_nodes: int = 10**7


limits = Limits()


@contextmanager
def override_limits(**changes):
    old = {f.name: getattr(limits, f.name) for f in fields(limits)}
    for key, value in changes.items():
        if key not in old:
            raise KeyError(key)
        setattr(limits, key, value)
    try:
        yield limits
    finally:
        for key, value in old.items():
            setattr(limits, key, value)
