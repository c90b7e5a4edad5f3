"""Command-line front end: ``hypermod <command> --input FILE [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional


from . import checks, datasets, decompose, fulkerson, metrics, modulus, oracle
from .config import limits, override_limits
from .errors import (
    ArgumentError,
    CapacityError,
    ConsistencyError,
    HypergraphError,
    InfeasibleError,
    NonConvergenceError,
    ValidationError,
)
from .hypercore import Hypergraph, components, format_rational, is_connected, parse, to_rational
from .matroid import greedy_rank, matroid_strength, rank

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_CAPACITY, EXIT_SOLVER = 0, 1, 2, 3, 4, 5, 6

COMMANDS = ("info", "strength", "arboricity", "rank", "hypertrees", "mod", "blocker", "decompose", "shrink", "verify")


@dataclass
class RunConfig:
    command: str
    input: Optional[str]
    example: Optional[str]
    format: str
    weights: Optional[str]
    p: int
    family: str
    tol: float
    dot: Optional[str]
    json: bool
    cap_vertices: Optional[int]
    cap_edges: Optional[int]
    edges: Optional[str] = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypermod",
        description="Strength, fractional arboricity, hypertree modulus and decompositions of hypergraphs.",
    )
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="hypergraph file, or - for stdin")
    src.add_argument("--example", choices=datasets.NAMES, help="use a bundled hypergraph")
    parser.add_argument("--format", choices=("json", "lines"), default="json")
    parser.add_argument("--weights", metavar="FILE", help="JSON object edge id -> weight (rational strings allowed)")
    parser.add_argument("--p", type=int, choices=(1, 2), default=2)
    parser.add_argument("--family", choices=("tree", "multitree"), default="multitree")
    parser.add_argument("--tol", type=float, default=modulus.DEFAULT_TOL)
    parser.add_argument("--dot", metavar="FILE", help="write the decomposition diagram in DOT format")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--cap-vertices", type=int, metavar="N", help="vertex cap for partition enumeration")
    parser.add_argument("--cap-edges", type=int, metavar="N", help="edge cap for edge-subset scans")
    parser.add_argument("--edges", help="comma-separated edge ids (rank command)")
    return parser


def _load(cfg: RunConfig) -> Hypergraph:
    if cfg.example:
        h = datasets.load(cfg.example)
    else:
        text = sys.stdin.read() if cfg.input == "-" else Path(cfg.input).read_text()
        h = parse(text, cfg.format)
    if cfg.weights:
        raw = json.loads(Path(cfg.weights).read_text())
        h = h.with_weights({str(k): to_rational(v) for k, v in raw.items()} if isinstance(raw, dict)
                           else [to_rational(v) for v in raw])
    return h


def _fr(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else str(x)


def _vec(h: Hypergraph, v) -> dict:
    return {e: (_fr(x) if isinstance(x, (Fraction, int)) else float(x)) for e, x in zip(h.edge_ids, v)}


def _emit(cfg: RunConfig, data: dict, text: str) -> None:
    print(json.dumps(data, indent=2) if cfg.json else text)


# -- commands ---------------------------------------------------------------


def _info_block(h: Hypergraph) -> dict:
    out = {"vertices": h.n, "edges": h.m, "connected": is_connected(h)}
    if h.n >= 2 and out["connected"]:
        s, d = metrics.strength(h).value, metrics.arboricity(h).value
        out.update(
            partition_connected=datasets.is_partition_connected(h),
            max_disjoint_hypertrees=metrics.max_disjoint_hypertrees(h),
            strength=_fr(s),
            arboricity=_fr(d),
            density=_fr(Fraction(h.m, h.n - 1)),
            homogeneous=s == d,
        )
    return out


def cmd_info(cfg: RunConfig, h: Hypergraph) -> int:
    data = _info_block(h)
    if not data["connected"]:
        data["components"] = [dict(_info_block(c), vertex_set=list(c.vertices)) for c in components(h)]
    lines = [f"{k}: {v}" for k, v in data.items() if k != "components"]
    for i, c in enumerate(data.get("components", []), 1):
        lines.append(f"component {i}: " + ", ".join(f"{k}={v}" for k, v in c.items()))
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def cmd_strength(cfg: RunConfig, h: Hypergraph) -> int:
    rep = metrics.strength(h)
    data = {"strength": _fr(rep.value), "partition": [list(c) for c in rep.witness_partition.classes],
            "cut": sorted(rep.witness_partition.cut)}
    _emit(cfg, data, f"S = {_fr(rep.value)}  attained by {rep.witness_partition}  cut {{{', '.join(data['cut'])}}}")
    return EXIT_OK


def cmd_arboricity(cfg: RunConfig, h: Hypergraph) -> int:
    rep = metrics.arboricity(h)
    data = {"arboricity": _fr(rep.value), "vertex_set": list(rep.witness_vertex_set),
            "hyperforest_cover": metrics.min_hyperforest_cover(h)}
    _emit(cfg, data, f"D = {_fr(rep.value)}  attained on {{{','.join(rep.witness_vertex_set)}}}; "
                     f"E splits into {data['hyperforest_cover']} hyperforests")
    return EXIT_OK


def cmd_rank(cfg: RunConfig, h: Hypergraph) -> int:
    f = None if not cfg.edges else [e.strip() for e in cfg.edges.split(",") if e.strip()]
    r, g = rank(h, f), greedy_rank(h, f)
    if r != g:
        raise ConsistencyError(f"partition formula gives {r}, greedy gives {g}")
    sm, witness = matroid_strength(h)
    data = {"rank": r, "edges": f if f is not None else list(h.edge_ids), "matroid_strength": _fr(sm),
            "matroid_strength_set": sorted(witness)}
    _emit(cfg, data, f"r = {r}\ns(M) = {_fr(sm)}  attained by {{{', '.join(sorted(witness))}}}")
    return EXIT_OK


def cmd_hypertrees(cfg: RunConfig, h: Hypergraph) -> int:
    fam = oracle.enumerate_hypertrees(h) if cfg.family == "tree" else oracle.enumerate_multitrees(h)
    rows = [dict(zip(h.edge_ids, m)) for m in fam.members]
    label = "hypertrees" if cfg.family == "tree" else "multi-trees"
    text = "\n".join([f"{len(rows)} {label}"] + ["  " + " ".join(f"{e}:{k}" for e, k in r.items() if k) for r in rows])
    _emit(cfg, {"family": cfg.family, "count": len(rows), "members": rows}, text)
    return EXIT_OK


def cmd_mod(cfg: RunConfig, h: Hypergraph) -> int:
    fam = modulus.family(h, cfg.family)
    if cfg.p == 1:
        res = modulus.mod1(fam)
    else:
        res = modulus.mod2_mnp(fam, tol=cfg.tol)
        modulus.duality_pair(res, fam.default_weights(), fam, tol=max(cfg.tol, 1e-9))
    data = res.as_dict()
    lines = [f"Mod_{cfg.p}({fam.name}) = {data['value']}"]
    if res.rho_star is not None:
        lines.append("rho* = " + " ".join(f"{e}:{_fmt(x)}" for e, x in zip(h.edge_ids, res.rho_star)))
    if res.eta_star is not None:
        lines.append("eta* = " + " ".join(f"{e}:{_fmt(x)}" for e, x in zip(h.edge_ids, res.eta_star)))
        lines.append(f"gap = {res.gap:.3e}  iterations = {res.iterations}")
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    return f"{float(x):.10g}"


def cmd_blocker(cfg: RunConfig, h: Hypergraph) -> int:
    elements = fulkerson.blocker_omega(h)
    if cfg.json:
        print(fulkerson.blocker_to_json(h, elements))
        return EXIT_OK
    print(f"{len(elements)} blocker elements")
    for b in elements:
        vec = " ".join(f"{e}:{format_rational(x)}" for e, x in zip(h.edge_ids, b.vector))
        print(f"  {b.partition}  ->  {vec}")
    return EXIT_OK


def cmd_decompose(cfg: RunConfig, h: Hypergraph) -> int:
    try:
        root = decompose.hdp(h, cfg.family, tol=cfg.tol)
    except NonConvergenceError as exc:
        if cfg.json and exc.best is not None:
            print(decompose.to_json(exc.best))
        raise
    if cfg.dot:
        Path(cfg.dot).write_text(decompose.to_dot(root))
    levels = sorted(root.leaf_levels(), reverse=True)
    if cfg.json:
        data = root.as_dict()
        data["distinct_levels"] = [format_rational(x) for x in levels]
        print(json.dumps(data, indent=2))
    else:
        print(decompose.render_tree(root))
        print("levels: " + ", ".join(format_rational(x) for x in levels))
    return EXIT_OK


def cmd_shrink(cfg: RunConfig, h: Hypergraph) -> int:
    steps = decompose.hsp_steps(h, cfg.family, tol=cfg.tol)
    data = [
        {"eta_min": format_rational(s.eta_min), "cores": [list(c.vertices) for c in s.cores],
         "result": {"vertices": list(s.after.vertices),
                    "edges": {e: list(v) for e, v in zip(s.after.edge_ids, s.after.edges)}}}
        for s in steps
    ]
    lines = [f"{len(steps)} shrinking steps"]
    for i, s in enumerate(steps, 1):
        cores = "; ".join("{" + ",".join(c.vertices) + "}" for c in s.cores)
        lines.append(f"  step {i}: eta_min = {format_rational(s.eta_min)}, shrink {cores} -> "
                     f"|V| = {s.after.n}, |E| = {s.after.m}")
    _emit(cfg, {"steps": data}, "\n".join(lines))
    return EXIT_OK


def cmd_verify(cfg: RunConfig, h: Hypergraph) -> int:
    lines = checks.verify(h)
    if cfg.json:
        print(json.dumps([{"check": c.name, "status": c.status, "expected": str(c.expected), "got": str(c.got)}
                          for c in lines], indent=2))
    else:
        for c in lines:
            print(c)
    return EXIT_OK if all(c.ok for c in lines) else EXIT_FAIL


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(**vars(args))
    caps = {}
    if cfg.cap_vertices is not None:
        caps["partition_vertices"] = cfg.cap_vertices
        caps["subset_vertices"] = max(cfg.cap_vertices, limits.subset_vertices)
    if cfg.cap_edges is not None:
        caps["subset_edges"] = cfg.cap_edges
    try:
        with override_limits(**caps):
            h = _load(cfg)
            return HANDLERS[cfg.command](cfg, h)
    except (OSError, ValidationError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapacityError as exc:
        print(f"capacity: {exc}; use a smaller instance or raise --cap-vertices / --cap-edges", file=sys.stderr)
        return EXIT_CAPACITY
    except (NonConvergenceError, ConsistencyError) as exc:
        print(f"solver: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ArgumentError, HypergraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
