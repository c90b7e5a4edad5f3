"""Brute-force reference computations for cross-checking the production code.

Nothing here shares code with the solver path: hyperforest tests are plain
Python loops over vertex subsets, linear programs are solved in exact
rational arithmetic, polyhedral vertices come from a double-description
scan in integer arithmetic, and the min-norm-point reference is an
accelerated projected gradient on the simplex of member weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Sequence

import numpy as np

from .config import limits
from .errors import CapacityError, InfeasibleError, UnboundedError
from .hypercore import Hypergraph


@dataclass(frozen=True)
class ExplicitFamily:
    ground: tuple  # edge ids
    members: tuple  # deduplicated usage vectors aligned with ``ground``

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in m] for m in self.members], dtype=float).reshape(
            len(self.members), len(self.ground)
        )

    def minimal(self) -> "ExplicitFamily":
        """Members not entrywise above another member (same admissible set)."""
        keep = []
        for a in self.members:
            if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in self.members):
                keep.append(a)
        return ExplicitFamily(self.ground, tuple(keep))


def _family(h: Hypergraph, members) -> ExplicitFamily:
    seen = []
    for m in members:
        m = tuple(m)
        if any(m) and m not in seen:
            seen.append(m)
    return ExplicitFamily(h.edge_ids, tuple(seen))


def _check_caps(h: Hypergraph) -> None:
    if h.n > limits.partition_vertices:
        raise CapacityError(f"|V| = {h.n} exceeds the oracle vertex cap {limits.partition_vertices}")
    if h.m > limits.subset_edges:
        raise CapacityError(f"|E| = {h.m} exceeds the oracle edge cap {limits.subset_edges}")


class _SubsetCounter:
    """|A[X]| for every vertex set X, updated edge by edge with undo."""

    def __init__(self, h: Hypergraph):
        n = h.n
        self.slack = [bin(x).count("1") - 1 for x in range(1 << n)]
        self.supersets = []
        full = (1 << n) - 1
        for e in h.masks:
            rest = full & ~e
            sub, out = rest, []
            while True:
                out.append(sub | e)
                if sub == 0:
                    break
                sub = (sub - 1) & rest
            self.supersets.append(out)

    def room(self, e: int) -> int:
        return min(self.slack[x] for x in self.supersets[e])

    def add(self, e: int, k: int) -> None:
        for x in self.supersets[e]:
            self.slack[x] -= k


def _plain_hyperforest(h: Hypergraph, mult) -> bool:
    for x in range(1, 1 << h.n):
        inside = sum(k for e, k in zip(h.masks, mult) if e & x == e)
        if inside > bin(x).count("1") - 1:
            return False
    return True


def enumerate_hypertrees(h: Hypergraph) -> ExplicitFamily:
    """Every edge subset of size |V| - 1 that is a hyperforest."""
    _check_caps(h)
    out = []
    for combo in combinations(range(h.m), h.n - 1):
        mult = [0] * h.m
        for i in combo:
            mult[i] = 1
        if _plain_hyperforest(h, mult):
            out.append(mult)
    return _family(h, out)


def enumerate_multitrees(h: Hypergraph, cap: int | None = None) -> ExplicitFamily:
    """Every integer multiset of size |V| - 1 (entries <= cap) that is a hyperforest.

    Depth-first over edges with hereditary pruning: a prefix that is not a
    hyperforest is never extended.
    """
    _check_caps(h)
    cap = h.n if cap is None else cap
    target = h.n - 1
    counter = _SubsetCounter(h)
    mult = [0] * h.m
    out = []

    def rec(i, total):
        if total == target:
            out.append(list(mult))
            return
        if i == h.m:
            return
        top = min(cap, target - total, counter.room(i))
        for k in range(top, -1, -1):
            if k:
                counter.add(i, k)
                mult[i] = k
            rec(i + 1, total + k)
            if k:
                counter.add(i, -k)
                mult[i] = 0

    if target == 0:
        return _family(h, [])
    rec(0, 0)
    full = (1 << h.n) - 1
    spanning = []
    for m in out:
        covered = 0
        for e, k in zip(h.masks, m):
            if k:
                covered |= e
        if covered == full:
            spanning.append(m)
    spanning.sort(reverse=True)
    return _family(h, spanning)


# -- exact linear programming ---------------------------------------------


def _solve_exact(a: list, b: list):
    """Solve the square system a x = b over the rationals; None if singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / Fraction(m[col][col])
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def rational_rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    rank, cols = 0, len(m[0])
    for col in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _lp_scan(c, rows, rhs):
    n = len(c)
    all_rows = [list(r) for r in rows] + [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    all_rhs = list(rhs) + [0] * n
    best = None
    for pick in combinations(range(len(all_rows)), n):
        x = _solve_exact([all_rows[i] for i in pick], [all_rhs[i] for i in pick])
        if x is None:
            continue
        if any(sum(Fraction(a) * v for a, v in zip(row, x)) < r for row, r in zip(all_rows, all_rhs)):
            continue
        value = sum(Fraction(ci) * v for ci, v in zip(c, x))
        if best is None or value < best[0] or (value == best[0] and tuple(x) < tuple(best[1])):
            best = (value, tuple(x))
    if best is None:
        raise InfeasibleError("linear program has no feasible basic point")
    return best


def _lp_simplex(c, rows, rhs):
    """Exact simplex (Bland's rule) on the dual  max b.y  s.t.  A^T y <= c, y >= 0.

    Requires c >= 0 so the slack basis is feasible; the primal optimum is read
    off the reduced costs of the slack columns.
    """
    n, m = len(c), len(rows)
    # tableau rows: one per primal variable j:  sum_i A[i][j] y_i + s_j = c_j
    tab = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(int(k == j)) for k in range(n)] + [Fraction(c[j])]
           for j in range(n)]
    z = [-Fraction(b) for b in rhs] + [Fraction(0)] * n + [Fraction(0)]
    basis = [m + j for j in range(n)]
    while True:
        enter = next((k for k in range(m + n) if z[k] < 0), None)
        if enter is None:
            break
        ratios = [(tab[r][-1] / tab[r][enter], basis[r], r) for r in range(n) if tab[r][enter] > 0]
        if not ratios:
            raise InfeasibleError("linear program is infeasible (dual unbounded)")
        _, _, leave = min(ratios)
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for r in range(n):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[leave])]
        f = z[enter]
        z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter
    x = tuple(z[m + j] for j in range(n))
    return z[-1], x


def lp_min(objective, constraints, method: str = "auto"):
    """Exact minimum of objective.x subject to a.x >= b for each (a, b) and x >= 0.

    ``method="scan"`` enumerates basic points (every choice of |x| tight
    rows); ``"simplex"`` runs an exact Bland-rule simplex on the dual and
    needs a nonnegative objective; ``"auto"`` scans when that takes at most
    20000 candidate bases.
    """
    c = [Fraction(x) for x in objective]
    rows = [[Fraction(x) for x in a] for a, _ in constraints]
    rhs = [Fraction(b) for _, b in constraints]
    n = len(c)
    if any(cj < 0 for cj in c):
        if all(all(row[j] >= 0 for row in rows) for j in range(n) if c[j] < 0):
            raise UnboundedError("objective decreases along a recession direction")
    for row, b in zip(rows, rhs):
        if b > 0 and all(a <= 0 for a in row):
            raise InfeasibleError("a constraint cannot be met by any x >= 0")
    if method == "auto":
        method = "scan" if comb(len(rows) + n, n) <= 20000 or any(cj < 0 for cj in c) else "simplex"
    if method == "scan":
        return _lp_scan(c, rows, rhs)
    if method == "simplex":
        if any(cj < 0 for cj in c):
            raise ValueError("simplex route needs a nonnegative objective")
        return _lp_simplex(c, rows, rhs)
    raise ValueError(f"unknown method {method!r}")


def mod1_lp(family: ExplicitFamily, weights=None, method: str = "generate"):
    """Mod_{1,σ} of an explicit family as an exact LP: min σ.ρ, N ρ >= 1, ρ >= 0.

    The default ``"generate"`` adds member rows one at a time (most violated
    first) and re-solves exactly until ρ is admissible for every member;
    other methods are passed to :func:`lp_min` with all rows at once.
    """
    sigma = [Fraction(1)] * len(family.ground) if weights is None else [Fraction(w) for w in weights]
    members = family.minimal().members
    if method != "generate":
        return lp_min(sigma, [(m, 1) for m in members], method)
    # row generation: solve on a growing subset, add the most violated member
    active = [members[0]]
    while True:
        value, x = lp_min(sigma, [(m, 1) for m in active], "simplex")
        worst = min(members, key=lambda m: sum(a * v for a, v in zip(m, x)))
        if sum(a * v for a, v in zip(worst, x)) >= 1:
            return value, x
        active.append(worst)


# -- double description vertex enumeration ---------------------------------


def _integer_rows(rows, rhs):
    out = []
    for row, b in zip(rows, rhs):
        vals = [Fraction(x) for x in row] + [Fraction(b)]
        lcm = 1
        for v in vals:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        out.append([int(v * lcm) for v in vals])
    return out


def _drop_implied(rows):
    """Remove rows a.x >= b implied by another row a'.x >= b' with a' <= a, b' >= b."""
    uniq = []
    for r in rows:
        if r not in uniq:
            uniq.append(r)
    keep = []
    for r in uniq:
        a, b = r[:-1], r[-1]
        if b <= 0 and all(x >= 0 for x in a):
            continue
        implied = any(
            s is not r and all(x <= y for x, y in zip(s[:-1], a)) and s[-1] >= b
            and (s[-1] > b or s[:-1] != a)
            for s in uniq
        )
        if not implied:
            keep.append(r)
    return keep


def covering_vertices(rows, rhs) -> list:
    """Vertices of {x >= 0 : rows.x >= rhs}, exact, by the double description method.

    Works on the homogenised cone {(x, t) >= 0 : a.x - b t >= 0} starting from
    the nonnegative orthant, inserting one inequality at a time and combining
    adjacent ray pairs (combinatorial adjacency test).  Returns the vertices as
    tuples of Fractions, sorted.
    """
    if not rows:
        return []
    n = len(rows[0])
    d = n + 1
    irows = _drop_implied(_integer_rows(rows, rhs))
    full = (1 << d) - 1
    rays = [tuple(int(k == j) for k in range(d)) for j in range(d)]
    zeros = [full & ~(1 << j) for j in range(d)]
    for i, row in enumerate(irows):
        a, b = row[:-1], row[-1]
        bit = 1 << (d + i)
        vals = [sum(x * y for x, y in zip(a, r[:n])) - b * r[n] for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays, new_zeros = [], []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if bin(common).count("1") < d - 2:
                    continue
                if any(k != p and k != q and common & ~zeros[k] == 0 for k in range(len(rays))):
                    continue
                ray = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                g = 0
                for x in ray:
                    g = gcd(g, x)
                new_rays.append(tuple(x // g for x in ray))
                new_zeros.append(common | bit)
        rays = [rays[k] for k in pos] + [rays[k] for k in zer] + new_rays
        zeros = [zeros[k] for k in pos] + [zeros[k] | bit for k in zer] + new_zeros
    verts = {tuple(Fraction(x, r[n]) for x in r[:n]) for r in rays if r[n] > 0}
    return sorted(verts)


def polyhedron_vertices(h: Hypergraph) -> list:
    """Vertices of the partition polyhedron x(δ(P)) >= |P| - 1, x >= 0."""
    from .partitions import all_partitions

    if h.m > 12:
        raise CapacityError(f"|E| = {h.m} too large for vertex enumeration")
    rows, rhs = [], []
    for p in all_partitions(h, min_classes=2):
        rows.append([1 if e in p.cut else 0 for e in h.edge_ids])
        rhs.append(p.size - 1)
    return covering_vertices(rows, rhs)


def adm_vertices(family: ExplicitFamily) -> list:
    """Extreme points of Adm(Γ) = {ρ >= 0 : N ρ >= 1} (the Fulkerson blocker)."""
    fam = family.minimal()
    return covering_vertices([list(m) for m in fam.members], [1] * len(fam.members))


# -- min-norm point reference ------------------------------------------------


def _project_simplex(v: np.ndarray) -> np.ndarray:
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    ind = np.arange(1, len(v) + 1)
    k = ind[u - css / ind > 0][-1]
    return np.maximum(v - css[k - 1] / k, 0.0)


def _polish(a: np.ndarray, mu: np.ndarray):
    support = np.flatnonzero(mu > 1e-10 * max(mu.max(), 1.0))
    while len(support):
        s = a[:, support]
        k = len(support)
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = s.T @ s
        kkt[:k, k] = 1.0
        kkt[k, :k] = 1.0
        rhs = np.zeros(k + 1)
        rhs[k] = 1.0
        sol = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
        if sol.min() >= -1e-13:
            out = np.zeros_like(mu)
            out[support] = np.maximum(sol, 0.0)
            return out / out.sum()
        support = support[sol > 0]
    return None


def qp_min_norm(hull: ExplicitFamily, scale=None, tol: float = 1e-12, max_rounds: int = 200):
    """min Σ η(e)^2 / scale(e) over conv(members), by FISTA on the weight simplex.

    Every 2000 iterations the current support is polished by solving the
    equality-constrained least-squares problem on it exactly; the polished
    weights are kept when they stay nonnegative and do not raise the
    objective.  Stops once the Frank-Wolfe gap is below ``tol``.  Returns
    ``(value, point)``.
    """
    pts = hull.as_array()  # K x n
    if len(pts) == 0:
        raise InfeasibleError("empty family")
    sc = np.ones(pts.shape[1]) if scale is None else np.array([float(s) for s in scale])
    a = (pts / np.sqrt(sc)).T  # n x K, scaled coordinates
    k = a.shape[1]
    if k == 1:
        x = a[:, 0]
        return float(x @ x), pts[0].copy()
    lip = 2.0 * np.linalg.norm(a, 2) ** 2
    mu = np.full(k, 1.0 / k)

    def objective(w):
        x = a @ w
        return float(x @ x)

    def gap(w):
        x = a @ w
        return float(x @ x - (x @ a).min())

    for _ in range(max_rounds):
        y, mu_prev, t = mu.copy(), mu.copy(), 1.0
        for _ in range(2000):
            grad = 2.0 * (a.T @ (a @ y))
            new = _project_simplex(y - grad / lip)
            t_new = (1 + math.sqrt(1 + 4 * t * t)) / 2
            if objective(new) > objective(mu_prev):
                y, t_new = mu_prev.copy(), 1.0  # adaptive restart
                new = _project_simplex(y - 2.0 * (a.T @ (a @ y)) / lip)
            y = new + ((t - 1) / t_new) * (new - mu_prev)
            mu_prev, t = new, t_new
        mu = mu_prev
        polished = _polish(a, mu)
        if polished is not None and objective(polished) <= objective(mu) + 1e-15:
            mu = polished
        if gap(mu) <= tol * max(1.0, objective(mu)):
            break
    x = a @ mu
    return float(x @ x), x * np.sqrt(sc)
