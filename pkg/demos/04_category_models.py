"""Star-sum representations and automorphism pairs.

A star-sum representation is a space V with subspaces V_1..V_n mapping in,
any two of which split V as a direct sum. For n = 4 these are equivalent to
pairs (W, m) with m and m - I invertible: torsion modules on the pair of
pants. This script checks the equivalence on examples.
"""

# %%
import numpy as np

from lgpants.exactlin import RatMatrix
from lgpants.modelcat import (
    AutPair,
    StarSumRep,
    classify,
    ext1_autpair,
    from_autpair,
    hom_autpair,
    hom_star,
    random_pants,
    random_trefoil_rep,
    roundtrip_witness,
    star_from_graphs,
    to_autpair,
    validate,
)

# %%
# Four lines in the plane: the coordinate axes, the diagonal and the line of slope 2.
col = RatMatrix.column
star = StarSumRep(2, (col([1, 0]), col([0, 1]), col([1, 1]), col([1, 2])))
print("valid:", validate(star).valid)
print("as an automorphism pair:", to_autpair(star).m.to_strings())

# %%
# When m3^-1 m4 has eigenvalue 1 the third and fourth spaces meet, and validation says so.
bad = star_from_graphs(RatMatrix([[1, 1], [0, 1]]), RatMatrix([[1, 1], [0, 1]]) @ RatMatrix([[1, 0], [3, 2]]))
report = validate(bad)
print("valid:", report.valid, "failing pairs:", report.singular_pairs)

# %%
# Back and forth: random 4-stars come back isomorphic, with an explicit witness.
rep = random_pants(3)
iso = roundtrip_witness(rep)
print("dim V =", rep.dim_v, "witness ok:", iso.ok)

# %%
# Hom spaces agree on both sides. Skyscrapers at different points are orthogonal.
values = ["2", "3", "-1", "1/2"]
print("      " + " ".join(f"{v:>4s}" for v in values))
for lam in values:
    row = []
    for mu in values:
        a, b = AutPair(1, RatMatrix([[lam]])), AutPair(1, RatMatrix([[mu]]))
        assert hom_star(from_autpair(a), from_autpair(b)).dimension == hom_autpair(a, b).dimension
        row.append(f"{hom_autpair(a, b).dimension}/{ext1_autpair(a, b)}")
    print(f"{lam:>4s}  " + " ".join(f"{x:>4s}" for x in row))

# %%
# Three spaces: every valid 3-star is a plain vector space with a graph isomorphism.
rep3 = random_trefoil_rep(np.random.default_rng(0), 3)
res = classify(rep3)
print(res.kind, res.dims, "witness ok:", res.witness_ok)
