"""Stable graphs: validation, enumeration, rigidification, and moves.

Walks through the combinatorial layer: build a couple of small graphs by
hand, enumerate all trivalent types up to a complexity bound, and compose
elementary moves into a groupoid word.
"""

from teich import (
    HalfDehn,
    StableGraph,
    compose_word,
    coordinate_system,
    enumerate_trivalent,
    find_rigidification,
)
from teich.graphs import make_fusing, validate

# The theta graph: two vertices joined by three edges, genus 2, no tails.
theta = StableGraph(
    vertices=frozenset({"u", "w"}),
    edges={"e1": ("u", "w"), "e2": ("u", "w"), "e3": ("u", "w")},
    tails={},
)
report = validate(theta)
print("theta valid:", report.ok, "| type (g, n) =", theta.graph_type())

# Enumeration: the count of trivalent graphs of type (0, n) is (2n-5)!!.
for n in (3, 4, 5, 6):
    print("trivalent (0, %d):" % n, len(enumerate_trivalent(0, n)))
for g, n in ((1, 1), (1, 2), (2, 0), (3, 0)):
    print("trivalent (%d, %d):" % (g, n), len(enumerate_trivalent(g, n)))

# A rigidification picks local branch data at every vertex; the induced
# coordinate system has 3g - 3 + n slots split between alpha-branches and
# q-edges.
rig = find_rigidification(theta)
e_tau, q_edges = coordinate_system(theta, rig)
print("coordinates: %d alpha-branches + %d q-edges" % (len(e_tau), len(q_edges)))

# Moves compose into words when sources and targets chain up.
fuse = make_fusing(theta, "e1", 0)
word = compose_word([fuse, HalfDehn(edge=fuse.new_edge, graph=fuse.target)])
print("composed word of length", len(word), "starting at theta")
