"""Exact rational linear algebra.

Every category computation in the package runs over the rationals, so that
"is this map an isomorphism" and "what is the dimension of this Hom space"
have exact answers. This script walks through the small matrix toolkit.
"""

# %%
from fractions import Fraction

from lgpants.exactlin import RatMatrix, det, invert, kernel_basis, parse_rational, rank, rref, solve

# Entries are Fractions; strings like "1/2" are parsed exactly.
a = RatMatrix([[1, "1/2", 0], [2, 1, 1], [0, "-3/4", 5]])
print(a.to_strings())

# %%
# Row reduction returns the reduced form, the rank and the pivot columns.
r, k, pivots = rref(a)
print("rank", k, "pivots", pivots)
print("det", det(a))

# %%
# Inverses are exact: a @ a^-1 is the identity entry by entry, no tolerance.
inv = invert(a)
print(inv.to_strings())
assert a @ inv == RatMatrix.identity(3)

# %%
# The Hilbert matrix is the classic floating-point trap; here it is harmless.
n = 8
hilbert = RatMatrix([[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)])
print("det H_8 =", det(hilbert))
assert invert(hilbert) @ hilbert == RatMatrix.identity(n)

# %%
# Kernels and linear solves.
singular = RatMatrix([[1, 2, 3], [2, 4, 6]])
print("rank", rank(singular), "kernel", [[str(x) for x in v] for v in kernel_basis(singular)])
print("solution", solve(RatMatrix([[2, 1], [1, 3]]), [1, parse_rational("1/2")]))
