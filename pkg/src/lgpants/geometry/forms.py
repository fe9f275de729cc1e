"""Symplectic and contact structures on C^n = R^{2n}, and the conic skeleton L.

Points and tangent vectors of C^n are flat arrays ordered
``(x_1, y_1, x_2, y_2, ..., x_n, y_n)``. All evaluators broadcast over
leading axes.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np


class DegeneratePoint(ValueError):
    pass


class NotFiberDirection(ValueError):
    pass


def _xy(v):
    v = np.asarray(v, dtype=float)
    return v[..., 0::2], v[..., 1::2]


def omega(u, v):
    """omega_M(u, v) = sum_a dx_a ^ dy_a."""
    ux, uy = _xy(u)
    vx, vy = _xy(v)
    return np.sum(ux * vy - uy * vx, axis=-1)


def alpha(z, v):
    """Liouville primitive alpha_M = sum_a (x_a dy_a - y_a dx_a) evaluated on v at z."""
    x, y = _xy(z)
    vx, vy = _xy(v)
    return np.sum(x * vy - y * vx, axis=-1)


def liouville_field(z):
    """v_M = sum_a r_a d/dr_a, which in Cartesian coordinates is z itself."""
    return np.asarray(z, dtype=float).copy()


def fiber_primitive(z):
    """f(z) = sum_a x_a y_a."""
    x, y = _xy(z)
    return np.sum(x * y, axis=-1)


def project_p(z):
    """The Lagrangian fibration p: take real parts."""
    return _xy(z)[0]


def project_q(z, t=0.0):
    """The Legendrian fibration q(z, t) = (x, t + sum x_a y_a)."""
    x = project_p(z)
    last = np.asarray(t + fiber_primitive(z))
    return np.concatenate([x, last[..., None]], axis=-1)


def contact_form(z, t, v, vt):
    """lambda_N = alpha_M - dt on the tangent vector (v, vt) at (z, t)."""
    del t  # the form does not depend on t
    return alpha(z, v) - vt


@dataclass(frozen=True)
class AngleTriple:
    """Angles on the torus theta_1 + theta_2 + theta_3 = 0; the third is derived."""

    t1: float
    t2: float

    @property
    def t3(self) -> float:
        return -self.t1 - self.t2

    def as_array(self) -> np.ndarray:
        return np.array([self.t1, self.t2, self.t3])

    def __neg__(self) -> "AngleTriple":
        return AngleTriple(-self.t1, -self.t2)


def angle_triples(theta):
    """(..., 2) array of (theta_1, theta_2) -> (..., 3) array with theta_3 appended."""
    theta = np.asarray(theta, dtype=float)
    return np.concatenate([theta, -theta.sum(axis=-1, keepdims=True)], axis=-1)


@dataclass(frozen=True)
class SkeletonPoint:
    r: float
    angles: AngleTriple

    @property
    def ambient(self) -> np.ndarray:
        th = self.angles.as_array()
        out = np.empty(6)
        out[0::2] = self.r * np.cos(th)
        out[1::2] = self.r * np.sin(th)
        return out

    def tangent_frame(self) -> np.ndarray:
        """Rows: d/dr, d/dtheta_1 - d/dtheta_2, d/dtheta_2 - d/dtheta_3 in ambient coordinates."""
        return skeleton_frames(self.r, np.array([self.angles.t1, self.angles.t2]))


def skeleton_frames(r, theta) -> np.ndarray:
    """Canonical tangent frames of L at many points, shape (..., 3, 6)."""
    r = np.asarray(r, dtype=float)[..., None]
    th = angle_triples(theta)
    c, s = np.cos(th), np.sin(th)
    d_r = np.empty(th.shape[:-1] + (6,))
    d_r[..., 0::2], d_r[..., 1::2] = c, s
    d_theta = np.zeros(th.shape[:-1] + (3, 6))
    for a in range(3):
        d_theta[..., a, 2 * a] = -r[..., 0] * s[..., a]
        d_theta[..., a, 2 * a + 1] = r[..., 0] * c[..., a]
    return np.stack([d_r, d_theta[..., 0, :] - d_theta[..., 1, :], d_theta[..., 1, :] - d_theta[..., 2, :]], axis=-2)


def lagrangian_defect(pt: SkeletonPoint) -> float:
    """Largest |omega(u, v)| over pairs of the canonical tangent frame of L at pt."""
    if not pt.r > 0:
        raise DegeneratePoint("the skeleton is singular at r = 0")
    frame = pt.tangent_frame()
    return max(abs(float(omega(u, v))) for u, v in combinations(frame, 2))


def lagrangian_defects(r, theta) -> np.ndarray:
    """Vectorised :func:`lagrangian_defect` over radii ``r`` and angle pairs ``theta``."""
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise DegeneratePoint("the skeleton is singular at r = 0")
    frame = skeleton_frames(r, theta)
    pairs = [omega(frame[..., i, :], frame[..., j, :]) for i, j in combinations(range(3), 2)]
    return np.max(np.abs(np.stack(pairs, axis=-1)), axis=-1)


def fiber_primitive_defects(z, v, h: float = 1e-5) -> np.ndarray:
    """|D_v f(z) - alpha_M(v)| with D_v a central difference of step h; broadcasts.

    v must be tangent to the fibre of p, i.e. have no dx components.
    """
    z = np.asarray(z, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any(_xy(v)[0] != 0):
        raise NotFiberDirection("v has a dx component")
    dv = (fiber_primitive(z + h * v) - fiber_primitive(z - h * v)) / (2 * h)
    return np.abs(dv - alpha(z, v))


def fiber_primitive_defect(z, v, h: float = 1e-5) -> float:
    return float(fiber_primitive_defects(z, v, h))
