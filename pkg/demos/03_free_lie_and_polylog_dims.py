"""Free Lie algebra dimensions and the Log/Pol graded quotients.

Counts Lyndon words against the Witt formula, exhibits the Hall basis, and
computes the graded dimensions of the polylogarithm quotients, whose
generating function is 1 - (1 - r t)/(1 - t)^r in degrees >= 2.
"""

from teich import lyndon_words, polylog_dims, witt_dim
from teich.freenc import hall_basis

r = 2
print("Lyndon words vs Witt dimension, r = 2:")
for k in range(1, 9):
    print("  degree %d: %3d words, witt = %3d" % (k, len(lyndon_words(r, k)), witt_dim(r, k)))

print("Hall basis in degree 4:", [w for w, _ in hall_basis(2, 4)])

print("Log/Pol graded dimensions, r = 2:")
for k in range(1, 7):
    log_k, pol_k = polylog_dims(r=r, k=k)
    print("  degree %d: Log = %d, Pol = %d" % (k, log_k, pol_k))
# The exact sequence forces Pol_k - Log_k = r in degree 1 and 0 above.
