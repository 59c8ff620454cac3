"""The KZ connection matrix, MZVs, and the universal associator.

Computes Phi(A, B) for the basic nilpotent pair by regularized ODE
transport, compares its entries to multiple zeta values, and evaluates a
groupoid word (two fusing moves) numerically.
"""

import math

import numpy as np

from teich import (
    Fusing,
    GroupoidWord,
    NilpotentPair,
    evaluate_groupoid_word,
    mzv,
    ode_connection_matrix,
    universal_associator,
)

E12 = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], float)
E23 = np.array([[0, 0, 0], [0, 0, 1], [0, 0, 0]], float)

# Multiple zeta values from iterated-integral splitting at the midpoint.
print("zeta(2)   =", mzv(2), " vs pi^2/6 =", math.pi ** 2 / 6)
print("zeta(2,1) =", mzv(2, 1), " equals zeta(3) =", mzv(3))

# The connection matrix for the simplest noncommuting pair: the (1,3) entry
# is -zeta(2).
cm = ode_connection_matrix(NilpotentPair(E12, E23))
print("Phi(E12, E23)[0, 2] =", cm.matrix[0, 2], " (error estimate %.1e)" % cm.error_estimate)

# The universal associator stores word coefficients once; specializing it
# reproduces the ODE result on any small nilpotent pair.
U = universal_associator(6)
print("coeff(ab) =", U.coeff("ab"), " = -zeta(2)")
print("coeff(aab) =", U.coeff("aab"), " = -zeta(3)")

# A fusing move and its reverse compose to the identity transformation.
word = GroupoidWord(moves=(Fusing(edge="e", new_edge="f", source=None, target=None),
                           Fusing(edge="f", new_edge="e", source=None, target=None)),
                    source=None, target=None)
M = evaluate_groupoid_word(word, {"e": E12, "f": E23}, U)
print("fusing round trip deviation from identity: %.2e" % np.abs(M - np.eye(3)).max())
