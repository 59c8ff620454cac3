"""Universal Schottky groups over truncated q-expansions.

Attaches a Schottky group to a rigidified graph: each oriented edge h gives
a projective matrix phi_h with det = q_h exactly, and hyperbolic elements
carry fixed-point data obtained by Hensel lifting from the closed fiber.
"""

from fractions import Fraction

from teich import SchottkyContext, StableGraph, fixed_point_data, phi, word_to_element
from teich.schottky import verify_cross_ratio

rose2 = StableGraph(vertices=frozenset({"v"}),
                    edges={"e0": ("v", "v"), "e1": ("v", "v")}, tails={})
alpha = {("e0", 1): Fraction(0), ("e0", -1): Fraction(1),
         ("e1", 1): Fraction(2), ("e1", -1): Fraction(3)}
ctx = SchottkyContext(graph=rose2, alpha=alpha, N=6)

# The generator attached to the oriented edge (e0, +): det is exactly q_e0.
g0 = phi(ctx, ("e0", 1))
print("det phi(e0+) =", g0.det())

# Fixed points of a word element, as q-series, with the cross-ratio identity
# certifying the (attractive, repulsive, multiplier) triple.
M = word_to_element(ctx, [("e0", 1), ("e1", 1)])
fp = fixed_point_data(ctx, M)
print("attractive fixed point starts at", fp.attractive.constant_term())
print("repulsive  fixed point starts at", fp.repulsive.constant_term())
print("multiplier vanishes at q=0:", fp.multiplier.constant_term() == 0)
print("cross-ratio identity holds:", verify_cross_ratio(M, fp))

# One-loop degeneration: with alpha = (0, infinity) the generator becomes the
# diagonal Tate matrix diag(q, 1).
tate = StableGraph(vertices=frozenset({"v"}), edges={"e": ("v", "v")}, tails={})
tctx = SchottkyContext(graph=tate, alpha={("e", 1): Fraction(0)}, N=6)
T = phi(tctx, ("e", 1))
print("Tate generator rows:", [[str(x) for x in row] for row in T.entries])
