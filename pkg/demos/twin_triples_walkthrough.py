"""Two parallel 3-vertex edges: multi-trees, the partition polyhedron and both moduli.

Run with ``python3 demos/twin_triples_walkthrough.py``.
"""

from fractions import Fraction

import numpy as np

from hypermod import datasets, metrics, modulus, oracle
from hypermod.hypercore import format_rational

h = datasets.load("twin_triples")
print(h)

# Ω(H): edge multisets of size |V| - 1 that are hyperforests and span V
omega = oracle.enumerate_multitrees(h)
print("multi-trees:", omega.members)

# vertices of {x >= 0 : x(δ(P)) >= |P| - 1 for every partition P}
print("partition polyhedron vertices:", [tuple(map(int, v)) for v in oracle.polyhedron_vertices(h)])

sigma = (Fraction(1), Fraction(2))
s = metrics.strength(h, sigma)
print(f"weighted strength S_σ = {format_rational(s.value)} on {s.witness_partition}")

res = modulus.mod1(modulus.hypertree_family(h), weights=sigma)
print(f"Mod_1,σ over hypertrees = {format_rational(res.value)}, ρ* = {[format_rational(x) for x in res.rho_star]}")

res = modulus.mod2_mnp(modulus.multitree_family(h, sigma))
print(f"Mod_2,σ over multi-trees = {res.value:.6f}")
print("η* =", np.round(res.eta_star, 6), " (sums to |V| - 1 =", h.n - 1, ")")
