"""p-modulus of finite object families, for p in {1, 2}.

A family is described by its usage vectors over the edge set.  The two
families of interest, hypertrees Γ(H) and multi-trees Ω(H), are the bases of
M(H) and of M(H^t) with t = |V|, so a greedy basis is a linear-minimisation
oracle (LMO) for either one.

2-modulus is computed in its dual form:

    1 / Mod_{2,σ}(Γ) = min over η in conv(Γ) of Σ η(e)^2 / σ(e),

with Wolfe's min-norm-point algorithm in coordinates y = η / sqrt(σ), so the
LMO only ever sees a rescaled cost.  The optimal density and the dual
density are linked by η*(e) = σ(e) ρ*(e) / Mod.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .errors import ArgumentError, ConsistencyError, InfeasibleError, NonConvergenceError
from .hypercore import Hypergraph, is_connected, parallelize
from .matroid import greedy_extend, greedy_min_basis, matroid_strength
from .metrics import strength

DEFAULT_TOL = 1e-9
MAX_VERTICES = 10**5
EXPLICIT_LP_EDGES = 10


@dataclass(frozen=True, eq=False)
class ObjectFamily:
    """A finite family of usage vectors, reachable through an LMO.

    ``lmo(cost)`` returns a member minimising ``cost . usage``;
    ``enumerate()`` (optional) lists all members.  ``weights`` are the
    default σ used by the solvers.
    """

    ground: tuple
    kind: str  # "hypertree" | "multitree" | "explicit"
    lmo: Callable[[Sequence[float]], tuple]
    enumerate: Optional[Callable[[], tuple]] = None
    hypergraph: Optional[Hypergraph] = None
    weights: Optional[tuple] = None

    @property
    def name(self) -> str:
        return {"hypertree": "Γ(H)", "multitree": "Ω(H)"}.get(self.kind, "explicit")

    def default_weights(self) -> tuple:
        return self.weights if self.weights is not None else (Fraction(1),) * len(self.ground)

    def members(self) -> tuple:
        if self.enumerate is None:
            raise ArgumentError(f"family {self.name} has no enumerator")
        return self.enumerate()


@dataclass
class ModulusResult:
    p: int
    value: object  # Fraction for p = 1, float for p = 2
    rho_star: Optional[np.ndarray] = None
    eta_star: Optional[np.ndarray] = None
    gap: float = 0.0
    iterations: int = 0
    dual_value: Optional[float] = None  # min Σ η^2/σ over conv(family), p = 2 only
    vertices: list = field(default_factory=list)  # retained LMO vertices (usage vectors)
    weights: list = field(default_factory=list)  # their convex weights
    ground: tuple = ()

    def as_dict(self) -> dict:
        from .hypercore import format_rational

        def vec(v):
            return None if v is None else dict(zip(self.ground, (float(x) for x in v)))

        value = format_rational(self.value) if isinstance(self.value, Fraction) else float(self.value)
        out = {
            "p": self.p,
            "value": value,
            "rho_star": vec(self.rho_star),
            "eta_star": vec(self.eta_star),
            "gap": self.gap,
            "iterations": self.iterations,
        }
        if self.dual_value is not None:
            out["dual_value"] = self.dual_value
            out["support"] = [
                {"usage": dict(zip(self.ground, map(int, v))), "weight": float(w)}
                for v, w in zip(self.vertices, self.weights)
            ]
        return out


# -- families -------------------------------------------------------------


def _sort_order(cost) -> list:
    return sorted(range(len(cost)), key=lambda i: (cost[i], i))


def hypertree_family(h: Hypergraph, weights=None) -> ObjectFamily:
    """Γ(H): indicator vectors of hypertrees.  Needs H partition-connected."""
    if h.n < 2:
        raise ArgumentError("hypertree family needs at least two vertices")
    if sum(greedy_extend(h, range(h.m))) != h.n - 1:
        raise InfeasibleError(
            "hypergraph is not partition-connected, so it has no hypertree "
            "(a hypergraph contains a hypertree iff |δ(P)| >= |P| - 1 for every partition P)"
        )

    def lmo(cost):
        return tuple(greedy_min_basis(h, list(cost), 1))

    def enum():
        from .oracle import enumerate_hypertrees

        return enumerate_hypertrees(h).members

    return ObjectFamily(h.edge_ids, "hypertree", lmo, enum, h, _weights(h, weights))


def multitree_family(h: Hypergraph, weights=None) -> ObjectFamily:
    """Ω(H): multisets of edges (multiplicity <= |V|) forming a hypertree of H."""
    if h.n < 2:
        raise ArgumentError("multi-tree family needs at least two vertices")
    if not is_connected(h):
        raise InfeasibleError("hypergraph is disconnected, so its multi-tree family is empty")
    cap = h.n

    def lmo(cost):
        return tuple(greedy_min_basis(h, list(cost), cap))

    def enum():
        from .oracle import enumerate_multitrees

        return enumerate_multitrees(h, cap).members

    return ObjectFamily(h.edge_ids, "multitree", lmo, enum, h, _weights(h, weights))


def explicit_family(ground: Sequence, members: Sequence[Sequence], weights=None) -> ObjectFamily:
    ground = tuple(str(g) for g in ground)
    rows = []
    for m in members:
        m = tuple(m)
        if len(m) != len(ground):
            raise ArgumentError("member length does not match the ground set")
        if any(x < 0 for x in m) or not any(m):
            raise ArgumentError("usage vectors must be nonnegative and nonzero")
        if m not in rows:
            rows.append(m)
    if not rows:
        raise InfeasibleError("explicit family is empty")
    rows = tuple(rows)

    def lmo(cost):
        return min(rows, key=lambda r: sum(c * x for c, x in zip(cost, r)))

    w = None if weights is None else tuple(Fraction(x) for x in weights)
    return ObjectFamily(ground, "explicit", lmo, lambda: rows, None, w)


def _weights(h: Hypergraph, weights):
    if weights is None:
        return h.weights
    w = tuple(Fraction(x) for x in h.vector(weights))
    if any(x <= 0 for x in w):
        raise ArgumentError("weights must be positive")
    return w


def family(h: Hypergraph, kind: str, weights=None) -> ObjectFamily:
    if kind in ("tree", "hypertree"):
        return hypertree_family(h, weights)
    if kind in ("multitree", "multi-tree"):
        return multitree_family(h, weights)
    raise ArgumentError(f"unknown family kind {kind!r}")


# -- basic quantities -----------------------------------------------------


def energy(rho, weights, p: int = 2):
    """E_{p,σ}(ρ) = Σ σ(e) ρ(e)^p; exact when every entry is rational."""
    if p not in (1, 2):
        raise ArgumentError("only p = 1 and p = 2 are supported")
    rho, weights = list(rho), list(weights)
    if len(rho) != len(weights):
        raise ArgumentError("density and weights differ in length")
    if all(isinstance(x, (int, Fraction)) for x in rho + weights):
        return sum((Fraction(s) * Fraction(r) ** p for s, r in zip(weights, rho)), Fraction(0))
    return float(sum(float(s) * float(r) ** p for s, r in zip(weights, rho)))


def is_admissible(fam: ObjectFamily, rho, tol: float = DEFAULT_TOL) -> bool:
    """Every member uses at least 1 unit of ρ: min over the family of ρ . usage >= 1 - tol."""
    rho = list(rho)
    if len(rho) != len(fam.ground):
        raise ArgumentError("density length does not match the ground set")
    if any(x < 0 for x in rho):
        return False
    best = fam.lmo(rho)
    total = sum(Fraction(r) * x if isinstance(r, (int, Fraction)) else float(r) * x for r, x in zip(rho, best))
    return total >= 1 - tol


# -- 1-modulus ------------------------------------------------------------


def mod1(fam: ObjectFamily, h: Hypergraph | None = None, weights=None, with_density: bool | None = None) -> ModulusResult:
    """Mod_{1,σ} of Γ(H), Ω(H) or an explicit family, exactly.

    Ω: the weighted strength S_σ(H).  Γ: the matroid strength s_σ(M(H)),
    which is S(H) for unit weights.  Explicit families, and the optimal
    density for small instances (|E| <= 10), come from the exact LP.
    """
    h = h if h is not None else fam.hypergraph
    sigma = fam.default_weights() if weights is None else tuple(Fraction(w) for w in weights)
    if any(s <= 0 for s in sigma):
        raise ArgumentError("weights must be positive")
    if fam.kind == "multitree":
        value = strength(h, sigma).value
    elif fam.kind == "hypertree":
        hypertree_family(h)  # raises when Γ(H) is empty
        value = matroid_strength(h, sigma)[0]
    else:
        value = None
    rho = None
    if with_density is None:
        with_density = value is None or len(fam.ground) <= EXPLICIT_LP_EDGES
    if with_density:
        from .oracle import ExplicitFamily, mod1_lp

        lp_value, rho = mod1_lp(ExplicitFamily(fam.ground, tuple(fam.members())), sigma)
        if value is not None and lp_value != value:
            raise ConsistencyError(f"1-modulus {value} disagrees with the exact LP value {lp_value}")
        value = lp_value
        rho = np.array(rho, dtype=object)
    return ModulusResult(1, value, rho_star=rho, ground=fam.ground)


# -- 2-modulus ------------------------------------------------------------


def _affine_minimizer(points: np.ndarray) -> np.ndarray:
    """Weights α (Σα = 1) of the min-norm point of the affine hull of ``points`` (rows)."""
    k = len(points)
    gram = points @ points.T
    kkt = np.ones((k + 1, k + 1))
    kkt[:k, :k] = gram
    kkt[k, k] = 0.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return sol[:k]


def mod2_mnp(fam: ObjectFamily, weights=None, tol: float = DEFAULT_TOL, max_vertices: int = MAX_VERTICES) -> ModulusResult:
    """Mod_{2,σ}(fam) by Wolfe's min-norm-point algorithm on conv(fam).

    Stops when the Wolfe gap  |x|^2 - min_v x.v  drops below
    ``tol * max(1, |x|^2)`` (scaled coordinates) or when the LMO returns a
    vertex already in the active set.  Raises :class:`NonConvergenceError`
    after ``max_vertices`` LMO calls, with the best result attached.
    """
    sigma = np.array([float(s) for s in (fam.default_weights() if weights is None else weights)])
    if len(sigma) != len(fam.ground):
        raise ArgumentError("weights length does not match the ground set")
    if np.any(sigma <= 0):
        raise ArgumentError("weights must be positive")
    if tol <= 0:
        raise ArgumentError("tol must be positive")
    root = np.sqrt(sigma)

    def vertex(y):
        usage = fam.lmo(list(y / root))
        if not any(usage) or min(usage) < 0:
            raise ConsistencyError("LMO returned an invalid usage vector")
        return tuple(usage)

    first = vertex(np.zeros(len(sigma)))
    active = [first]
    pts = np.array([first], dtype=float) / root
    lam = np.array([1.0])
    x = pts[0].copy()
    gap = float("inf")
    calls = 1

    def result():
        xx = float(x @ x)
        eta = x * root
        mod = 1.0 / xx
        keep = lam > 0
        return ModulusResult(
            2, mod, rho_star=eta * mod / sigma, eta_star=eta, gap=gap, iterations=calls,
            dual_value=xx, vertices=[v for v, k in zip(active, keep) if k],
            weights=list(lam[keep]), ground=fam.ground,
        )

    while True:
        v = vertex(x)
        calls += 1
        xx = float(x @ x)
        vp = np.array(v, dtype=float) / root
        gap = xx - float(x @ vp)
        if gap <= tol * max(1.0, xx) or v in active:
            break
        if calls > max_vertices:
            raise NonConvergenceError(f"min-norm point did not converge after {max_vertices} LMO calls", result())
        active.append(v)
        pts = np.vstack([pts, vp])
        lam = np.append(lam, 0.0)
        while True:  # minor cycles
            alpha = _affine_minimizer(pts)
            if alpha.min() > 1e-14:
                lam = alpha
                break
            neg = alpha <= 1e-14
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(neg, lam / (lam - alpha), np.inf)
            theta = min(1.0, float(np.min(ratios)))
            lam = lam + theta * (alpha - lam)
            drop = lam <= 1e-14
            if not drop.any():
                drop[int(np.argmin(lam))] = True
            keep = ~drop
            active = [a for a, k in zip(active, keep) if k]
            pts, lam = pts[keep], lam[keep]
            lam = lam / lam.sum()
        x = lam @ pts
    return result()


def duality_pair(res: ModulusResult, weights=None, fam: ObjectFamily | None = None, tol: float = DEFAULT_TOL):
    """Return (ρ*, η*) from a 2-modulus result after checking the duality identities.

    Checks Mod_{2,σ} * Mod_{2,1/σ}(dual) = 1, η* = σ ρ* / Mod entrywise and,
    when ``fam`` is given, that ρ* is admissible.  Violations beyond 10 tol
    raise :class:`ConsistencyError`.
    """
    if res.p != 2 or res.dual_value is None:
        raise ArgumentError("duality_pair needs a 2-modulus result")
    sigma = np.ones(len(res.eta_star)) if weights is None else np.array([float(s) for s in weights])
    rho, eta = np.asarray(res.rho_star, float), np.asarray(res.eta_star, float)
    slack = 10 * tol
    if abs(res.value * res.dual_value - 1.0) > slack:
        raise ConsistencyError("Mod_2 times the dual 2-modulus differs from 1")
    if np.max(np.abs(eta - sigma * rho / res.value), initial=0.0) > slack * max(1.0, float(np.max(eta))):
        raise ConsistencyError("η* is not σ ρ* / Mod")
    if fam is not None and not is_admissible(fam, rho, tol=slack):
        raise ConsistencyError("ρ* is not admissible")
    return rho, eta


# -- symmetry -------------------------------------------------------------


def symmetry_quotient(fam_big: ObjectFamily, groups: Mapping[str, Sequence[str]], weights=None) -> ObjectFamily:
    """Quotient of a family by groups of mutually symmetric elements.

    ``groups`` maps each quotient element to the big-ground ids it merges.
    Quotient usage is the sum over the group, quotient weight is
    σ(e) |E_i|; Mod_{p,σ}(fam_big) = Mod_{p,σ_P}(quotient).
    """
    big_index = {g: i for i, g in enumerate(fam_big.ground)}
    cols = []
    seen = set()
    for q, members in groups.items():
        members = list(members)
        if not members:
            raise ArgumentError(f"group {q!r} is empty")
        for g in members:
            if g not in big_index:
                raise ArgumentError(f"unknown ground element {g!r} in group {q!r}")
            if g in seen:
                raise ArgumentError(f"ground element {g!r} appears in two groups")
            seen.add(g)
        cols.append([big_index[g] for g in members])
    if len(seen) != len(fam_big.ground):
        raise ArgumentError("groups do not cover the ground set")
    ground = tuple(groups)
    base = fam_big.default_weights()
    if weights is None:
        per = []
        for c in cols:
            vals = {base[i] for i in c}
            if len(vals) != 1:
                raise ArgumentError("weights are not constant on a symmetric group")
            per.append(vals.pop())
    else:
        per = [Fraction(w) for w in weights]
    qweights = tuple(Fraction(w) * len(c) for w, c in zip(per, cols))
    owner = {}
    for j, c in enumerate(cols):
        for i in c:
            owner[i] = j

    def fold(usage):
        out = [0] * len(cols)
        for i, x in enumerate(usage):
            out[owner[i]] += x
        return tuple(out)

    def lmo(cost):
        return fold(fam_big.lmo([cost[owner[i]] for i in range(len(fam_big.ground))]))

    def enum():
        rows = []
        for m in fam_big.enumerate():
            f = fold(m)
            if f not in rows:
                rows.append(f)
        return tuple(rows)

    return ObjectFamily(ground, "explicit", lmo, enum if fam_big.enumerate else None, fam_big.hypergraph, qweights)


@dataclass(frozen=True)
class SymmetryCheck:
    t: int
    mod_omega: float
    mod_parallel: float  # Mod_2(Γ(H^t))
    eta_omega: np.ndarray
    eta_parallel: np.ndarray  # Γ(H^t) density folded to one copy per edge, times t

    @property
    def modulus_error(self) -> float:
        return abs(self.mod_omega - self.mod_parallel / self.t)

    @property
    def density_error(self) -> float:
        return float(np.max(np.abs(self.eta_omega - self.eta_parallel)))


def symmetry_check(h: Hypergraph, t: int | None = None, tol: float = DEFAULT_TOL) -> SymmetryCheck:
    """Compare Mod_2(Ω(H)) with Mod_2(Γ(H^t)) / t and η̃*(e) with t η*(e^1)."""
    t = h.n if t is None else t
    omega = mod2_mnp(multitree_family(h), tol=tol)
    big, groups = parallelize(h, t)
    tree = mod2_mnp(hypertree_family(big), tol=tol)
    first = [big.edge_ids.index(groups[e][0]) for e in h.edge_ids]
    return SymmetryCheck(t, omega.value, tree.value, omega.eta_star, t * tree.eta_star[first])
