"""Numerical checks on the skeleton, the toy map and the torus projections.

The skeleton is the cone over the torus K = {|z_a| = r, sum theta_a = 0} in
C^3. We check that it is Lagrangian, that the fiber primitive is exact, that
the toy map F has its stated symmetries, where the projections of K fail to
be immersions, and where their double points lie.
"""

# %%
import numpy as np

from lgpants.geometry.config import GeomConfig
from lgpants.geometry.forms import AngleTriple, SkeletonPoint, lagrangian_defect
from lgpants.geometry.jacobian import jacobian_rank_profile
from lgpants.geometry.suite import double_point_checks, identity_checks, ramification_checks

config = GeomConfig(samples=5000, seed=1)

# %%
# A single skeleton point: the symplectic form vanishes on its tangent plane.
pt = SkeletonPoint(1.5, AngleTriple(0.4, -1.1))
print("Lagrangian defect at one point:", lagrangian_defect(pt))

# %%
# The identity suite over many seeded samples; every defect is round-off sized.
for check in identity_checks(config):
    print(f"{check.name:24s} {check.value:.3e} {check.relation} {check.bound:g}  {'ok' if check.passed else 'FAIL'}")

# %%
# The projection p|_K drops rank exactly at the four points with every angle 0 or pi.
for theta in [(0.0, 0.0), (0.0, np.pi), (1.0, 0.7)]:
    prof = jacobian_rank_profile("p_K", theta)
    print(theta, "rank", prof.rank, "singular values", np.round(prof.singular_values, 8))
for check in ramification_checks(config):
    print(f"{check.name:28s} {check.value:.3e}  {'ok' if check.passed else 'FAIL'}")

# %%
# Double points. For F_toy they lie on the wall {some theta_a = 0}. For q|_K the
# colliding pairs are theta and -theta with some theta_a in {0, pi}: the
# default check uses that locus, the literal one uses the wall only.
for literal in (False, True):
    print("literal wall" if literal else "real locus")
    for check in double_point_checks(config, literal=literal):
        print(f"  {check.name:36s} {check.value:.3e}  {'ok' if check.passed else 'FAIL'}")
