"""The blocker of the multi-tree family on a path and on a triangle.

On the path a-b-c the all-singletons partition is feasible but its shrunk
graph has the cut vertex b, so its vector (1/2, 1/2) is the midpoint of
the two other partition vectors and is not an extreme point.
"""

from hypermod import datasets, fulkerson, oracle
from hypermod.hypercore import format_rational


def show(name):
    h = datasets.load(name)
    print(f"== {name}: {h}")
    for e in fulkerson.feasible_elements(h):
        vec = ", ".join(format_rational(x) for x in e.vector)
        tag = "extreme" if e.biconnected else "not extreme"
        print(f"  {e.partition}  ({vec})  {tag}")
        if not e.biconnected:
            split = fulkerson.split_at_cut_vertex(h, e.partition)
            lam = ", ".join(format_rational(x) for x in split.lambdas)
            print(f"    = convex combination ({lam}) of {split.first} and {split.second}")
    adm = oracle.adm_vertices(oracle.enumerate_multitrees(h))
    print("  vertices of Adm(Ω) by vertex enumeration:", sorted(tuple(map(format_rational, v)) for v in adm))
    print("  report:", fulkerson.blocker_matches_extremes(h))


show("path")
show("triangle")
