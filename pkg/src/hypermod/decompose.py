"""Level sets of the optimal dual density and the decomposition processes.

The 2-modulus solve gives a dual density η* on the edges.  Its top level
E_max is a strength-optimal cut: removing it splits H into components and
H/(E - E_max) collects the cut edges (serial rule).  Recursing on every
piece until η* is constant gives the decomposition process; contracting the
bottom level E_min instead gives the shrinking process.

The serial split contracts E - E_max for both the hypertree and the
multi-tree family; the shrinking process contracts E_min.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import AmbiguityError, ArgumentError, ConsistencyError, NonConvergenceError
from .hypercore import (
    Hypergraph,
    _subgraph,
    component_masks,
    contract,
    format_rational,
    is_connected,
)
from .matroid import greedy_extend
from .metrics import arboricity, strength
from .modulus import DEFAULT_TOL, family, mod2_mnp

CLUSTER_TOL = 1e-5
CHECK_TOL = 1e-6
MAX_DENOMINATOR = 10**4


@dataclass(frozen=True)
class Level:
    value: float
    edges: tuple  # edge ids at this level

    @property
    def exact(self) -> Fraction:
        return snap(self.value)


def snap(x: float, max_denominator: int = MAX_DENOMINATOR) -> Fraction:
    return Fraction(x).limit_denominator(max_denominator)


def extract_levels(eta, cluster_tol: float = CLUSTER_TOL, ground=None) -> list:
    """Cluster η values (gaps <= cluster_tol merge) and return levels, highest first.

    A gap between clusters that is below 10 * cluster_tol is treated as
    ambiguous and raises :class:`AmbiguityError`.
    """
    eta = np.asarray(eta, dtype=float)
    if eta.size == 0:
        return []
    ground = tuple(range(len(eta))) if ground is None else tuple(ground)
    order = sorted(range(len(eta)), key=lambda i: -eta[i])
    clusters = [[order[0]]]
    for prev, cur in zip(order, order[1:]):
        gap = eta[prev] - eta[cur]
        if gap <= cluster_tol:
            clusters[-1].append(cur)
        elif gap <= 10 * cluster_tol:
            raise AmbiguityError(
                f"density values {eta[prev]:.10g} and {eta[cur]:.10g} are {gap:.2e} apart; "
                "tighten the solver tolerance"
            )
        else:
            clusters.append([cur])
    return [
        Level(float(np.mean(eta[c])), tuple(ground[i] for i in sorted(c)))
        for c in clusters
    ]


def solve(h: Hypergraph, family_kind: str, tol: float = DEFAULT_TOL):
    return mod2_mnp(family(h, family_kind), tol=tol)


def is_homogeneous(h: Hypergraph, check_solver: bool = False, family_kind: str = "multitree") -> bool:
    """S(H) = D(H) exactly; optionally confirm that the solver's η* is constant."""
    if not is_connected(h):
        raise ArgumentError("homogeneity is defined for connected hypergraphs")
    if h.n < 2 or h.m == 0:
        return True
    exact = strength(h).value == arboricity(h).value
    if check_solver:
        levels = extract_levels(solve(h, family_kind).eta_star)
        if (len(levels) == 1) != exact:
            raise ConsistencyError("solver density disagrees with the exact homogeneity test")
    return exact


def _components_with_vertices(h: Hypergraph, keep: list) -> list:
    """Components of (V, keep) as (vertex mask, edge index list), isolated vertices included."""
    out = []
    for mask in component_masks(h.n, [h.masks[i] for i in keep]):
        out.append((mask, [i for i in keep if h.masks[i] & mask == h.masks[i]]))
    return out


@dataclass
class SerialSplit:
    shrunk: Hypergraph
    parts: list  # components of H[E - E_max] with at least one edge
    isolated: list  # vertex names left isolated by removing E_max
    e_max: tuple
    classes: list  # vertex sets of the feasible partition P with δ(P) = E_max


def serial_split(h: Hypergraph, family_kind: str, eta, cluster_tol: float = CLUSTER_TOL) -> SerialSplit:
    """Remove the top η level and split H into H/(E - E_max) plus components."""
    levels = extract_levels(eta, cluster_tol, h.edge_ids)
    if len(levels) < 2:
        raise ArgumentError("η* is constant: a homogeneous hypergraph does not split")
    top = set(levels[0].edges)
    rest = [i for i, e in enumerate(h.edge_ids) if e not in top]
    comps = _components_with_vertices(h, rest)
    masks = [m for m, _ in comps]
    for i, e in enumerate(h.edge_ids):
        if e in top and any(h.masks[i] & m == h.masks[i] for m in masks):
            raise ConsistencyError(
                f"edge {e} of E_max lies inside one component; solver accuracy is insufficient"
            )
    parts, isolated = [], []
    for mask, idx in comps:
        if idx:
            part = _subgraph(h, h.vertices_of(mask), idx)
            if family_kind in ("tree", "hypertree") and sum(greedy_extend(part, range(part.m))) != part.n - 1:
                raise ConsistencyError("a component of H[E - E_max] is not partition-connected")
            parts.append(part)
        else:
            isolated.append(h.vertices_of(mask)[0])
    shrunk = contract(h, [h.edge_ids[i] for i in rest])
    if set(shrunk.edge_ids) != top:
        raise ConsistencyError("contracting E - E_max lost an edge of E_max")
    return SerialSplit(shrunk, parts, isolated, tuple(levels[0].edges), [h.vertices_of(m) for m in masks])


@dataclass
class DecompositionNode:
    hypergraph: Hypergraph
    kind: str  # "leaf-homogeneous" | "split" | "isolated"
    provenance: str  # "root" | "shrunk" | "component" | "isolated"
    eta_level: Optional[Fraction] = None  # parent's η_max that created this node
    strength: Optional[Fraction] = None
    arboricity: Optional[Fraction] = None
    levels: list = field(default_factory=list)  # this node's η levels, exact, highest first
    eta: Optional[np.ndarray] = None
    dual_value: Optional[float] = None
    children: list = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self) -> list:
        return [n for n in self.walk() if n.is_leaf]

    def leaf_levels(self) -> set:
        return {n.levels[0] for n in self.leaves() if n.levels}

    def as_dict(self) -> dict:
        def fr(x):
            return None if x is None else format_rational(x)

        return {
            "vertices": list(self.hypergraph.vertices),
            "edges": {e: list(v) for e, v in zip(self.hypergraph.edge_ids, self.hypergraph.edges)},
            "kind": self.kind,
            "provenance": self.provenance,
            "eta_level": fr(self.eta_level),
            "strength": fr(self.strength),
            "arboricity": fr(self.arboricity),
            "levels": [fr(x) for x in self.levels],
            "children": [c.as_dict() for c in self.children],
        }


def _close(a, b, tol=CHECK_TOL) -> bool:
    return abs(float(a) - float(b)) <= tol


def hdp(
    h: Hypergraph,
    family_kind: str = "multitree",
    tol: float = DEFAULT_TOL,
    cluster_tol: float = CLUSTER_TOL,
) -> DecompositionNode:
    """Decomposition process: split on E_max until every piece is homogeneous.

    At each split checks η_max = 1/S(H) = 1/S(H/(E - E_max)), additivity of
    the dual 2-modulus over the children and that the parent's η restricted
    to each child is the child's own optimum; at each leaf checks S = D
    exactly and η = 1/S.  Failures raise :class:`ConsistencyError`; a solver
    that does not converge raises :class:`NonConvergenceError` carrying the
    partial tree as ``best``.
    """
    if not is_connected(h):
        raise ArgumentError("decomposition needs a connected hypergraph")
    root = DecompositionNode(h, "split", "root")
    try:
        _expand(root, family_kind, tol, cluster_tol)
    except NonConvergenceError as exc:
        raise NonConvergenceError(str(exc), best=root) from exc
    return root


def _expand(node: DecompositionNode, kind: str, tol: float, cluster_tol: float) -> None:
    h = node.hypergraph
    if h.m == 0:
        node.kind = "isolated"
        return
    res = solve(h, kind, tol)
    node.eta, node.dual_value = res.eta_star, res.dual_value
    node.strength, node.arboricity = strength(h).value, arboricity(h).value
    levels = extract_levels(res.eta_star, cluster_tol, h.edge_ids)
    node.levels = [lv.exact for lv in levels]
    if len(levels) == 1:
        node.kind = "leaf-homogeneous"
        if node.strength != node.arboricity:
            raise ConsistencyError(f"constant η* but S = {node.strength} != D = {node.arboricity}")
        if not _close(levels[0].value, 1 / node.strength):
            raise ConsistencyError("leaf density differs from 1/S")
        return
    split = serial_split(h, kind, res.eta_star, cluster_tol)
    top = levels[0]
    shrunk_s = strength(split.shrunk).value
    if not (_close(top.value, 1 / node.strength) and _close(top.value, 1 / shrunk_s)):
        raise ConsistencyError(
            f"η_max = {top.value:.9g} but 1/S(H) = {float(1 / node.strength):.9g}, "
            f"1/S(shrunk) = {float(1 / shrunk_s):.9g}"
        )
    node.kind = "split"
    level = top.exact
    children = [DecompositionNode(split.shrunk, "split", "shrunk", level)]
    children += [DecompositionNode(p, "split", "component", level) for p in split.parts]
    children += [
        DecompositionNode(Hypergraph((v,), (), (), None), "isolated", "isolated", level)
        for v in split.isolated
    ]
    node.children = children
    pos = {e: i for i, e in enumerate(h.edge_ids)}
    total = 0.0
    for child in children:
        _expand(child, kind, tol, cluster_tol)
        if child.eta is None:
            continue
        total += child.dual_value
        mine = res.eta_star[[pos[e] for e in child.hypergraph.edge_ids]]
        if float(np.max(np.abs(mine - child.eta))) > CHECK_TOL:
            raise ConsistencyError("parent η* restricted to a child is not the child's optimum")
    if not _close(total, res.dual_value):
        raise ConsistencyError(f"dual 2-modulus not additive: {total:.9g} vs {res.dual_value:.9g}")


@dataclass
class ShrinkStep:
    before: Hypergraph
    cores: list  # components of H[E_min] (homogeneous cores)
    after: Hypergraph
    eta_min: Fraction


def hsp_steps(
    h: Hypergraph,
    family_kind: str = "multitree",
    tol: float = DEFAULT_TOL,
    cluster_tol: float = CLUSTER_TOL,
) -> list:
    """Shrinking process: contract the components of H[E_min] until homogeneous.

    Each step checks that every core is homogeneous with η = η_min and that
    the dual 2-modulus of H equals that of the cores plus that of the
    contracted hypergraph; the final hypergraph L satisfies η = 1/S(L) = 1/D(L).
    """
    if not is_connected(h):
        raise ArgumentError("shrinking needs a connected hypergraph")
    steps = []
    cur = h
    while True:
        res = solve(cur, family_kind, tol)
        levels = extract_levels(res.eta_star, cluster_tol, cur.edge_ids)
        if len(levels) == 1:
            s, d = strength(cur).value, arboricity(cur).value
            if s != d or not _close(levels[0].value, 1 / s):
                raise ConsistencyError("final hypergraph of the shrinking process is not homogeneous")
            return steps
        bottom = levels[-1]
        idx = [cur.edge_index[e] for e in bottom.edges]
        cores = [_subgraph(cur, cur.vertices_of(m), e) for m, e in _components_with_vertices(cur, idx) if e]
        after = contract(cur, list(bottom.edges))
        parts = 0.0
        for core in cores:
            r = solve(core, family_kind, tol)
            if not (strength(core).value == arboricity(core).value
                    and np.allclose(r.eta_star, bottom.value, atol=CHECK_TOL)):
                raise ConsistencyError("a component of H[E_min] is not a homogeneous core at level η_min")
            parts += r.dual_value
        rest = solve(after, family_kind, tol).dual_value if after.m else 0.0
        if not _close(res.dual_value, parts + rest):
            raise ConsistencyError("dual 2-modulus is not additive across the shrink")
        steps.append(ShrinkStep(cur, cores, after, bottom.exact))
        cur = after


def hsp(h: Hypergraph, family_kind: str = "multitree", tol: float = DEFAULT_TOL) -> list:
    """The sequence of hypergraphs produced by the shrinking process (empty if homogeneous)."""
    return [s.after for s in hsp_steps(h, family_kind, tol)]


@dataclass
class CheckLine:
    name: str
    expected: object
    got: object
    ok: bool
    skipped: bool = False

    @property
    def status(self) -> str:
        return "SKIP" if self.skipped else ("PASS" if self.ok else "FAIL")

    def __str__(self):
        if self.skipped:
            return f"SKIP  {self.name}"
        return f"{self.status}  {self.name}: expected {self.expected}, got {self.got}"


def strength_arboricity_check(h: Hypergraph, tol: float = DEFAULT_TOL) -> list:
    """S(H) = 1/η̃_max and D(H) = 1/η̃_min for the multi-tree family, with optimal level sets.

    E_max must be the cut of the partition into components of H[E - E_max]
    and attain S; each component of H[E_min] must have density D.
    """
    res = solve(h, "multitree", tol)
    levels = extract_levels(res.eta_star, CLUSTER_TOL, h.edge_ids)
    s, d = strength(h).value, arboricity(h).value
    top, bottom = levels[0], levels[-1]
    out = [
        CheckLine("S = 1/η_max", s, 1 / top.value, _close(1 / top.value, s)),
        CheckLine("D = 1/η_min", d, 1 / bottom.value, _close(1 / bottom.value, d)),
    ]
    top_set = set(top.edges)
    rest = [i for i, e in enumerate(h.edge_ids) if e not in top_set]
    masks = component_masks(h.n, [h.masks[i] for i in rest])
    if len(levels) == 1:
        out.append(CheckLine("E_max attains S", s, Fraction(h.m, h.n - 1), Fraction(h.m, h.n - 1) == s))
    else:
        crossing = sum(1 for e in h.masks if not any(e & m == e for m in masks))
        ratio = Fraction(len(top_set), len(masks) - 1) if len(masks) > 1 else None
        out.append(CheckLine("E_max attains S", s, ratio, crossing == len(top_set) and ratio == s))
    idx = [h.edge_index[e] for e in bottom.edges]
    dens = [Fraction(len(e), bin(m).count("1") - 1) for m, e in _components_with_vertices(h, idx) if e]
    out.append(CheckLine("E_min attains D", d, ", ".join(map(format_rational, dens)), all(x == d for x in dens)))
    return out


# -- exports ----------------------------------------------------------------


def to_json(node: DecompositionNode) -> str:
    return json.dumps(node.as_dict(), indent=2)


def to_dot(node: DecompositionNode) -> str:
    lines = ["digraph decomposition {", "  node [shape=box, fontname=monospace];"]
    counter = [0]

    def label(n: DecompositionNode) -> str:
        head = ",".join(n.hypergraph.vertices)
        if len(head) > 40:
            head = head[:37] + "..."
        parts = [f"{n.provenance}: {{{head}}}", f"|E|={n.hypergraph.m}"]
        if n.strength is not None:
            parts.append(f"S={format_rational(n.strength)} D={format_rational(n.arboricity)}")
        if n.levels:
            parts.append("eta=" + ",".join(format_rational(x) for x in n.levels))
        return "\\n".join(parts)

    def emit(n: DecompositionNode) -> str:
        name = f"n{counter[0]}"
        counter[0] += 1
        lines.append(f'  {name} [label="{label(n)}"];')
        for c in n.children:
            child = emit(c)
            edge = "" if c.eta_level is None else f' [label="eta_max={format_rational(c.eta_level)}"]'
            lines.append(f"  {name} -> {child}{edge};")
        return name

    emit(node)
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_tree(node: DecompositionNode, indent: str = "") -> str:
    """Plain-text outline of a decomposition tree."""
    v = ",".join(node.hypergraph.vertices)
    bits = [f"{indent}{node.provenance} [{node.kind}] V={{{v}}} |E|={node.hypergraph.m}"]
    if node.strength is not None:
        bits[0] += f" S={format_rational(node.strength)} D={format_rational(node.arboricity)}"
    if node.levels:
        bits[0] += " eta=" + ",".join(format_rational(x) for x in node.levels)
    for c in node.children:
        bits.append(render_tree(c, indent + "  "))
    return "\n".join(bits)
