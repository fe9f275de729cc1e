"""Maps out of angle space.

Angles are passed as ``(..., 2)`` arrays ``(theta_1, theta_2)``; the third
angle is always ``-theta_1 - theta_2``.

``toy_*`` maps live on the open disk D = {|theta| < 1} of the plane
sum(theta) = 0. ``p_torus`` and ``q_torus`` are the projections p and q
restricted to the compact torus K (r = 1, t = 0).
"""

import numpy as np

from .forms import angle_triples

TWO_PI = 2 * np.pi

# Orthonormal basis of the plane theta_1 + theta_2 + theta_3 = 0.
PLANE_E1 = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
PLANE_E2 = np.array([1.0, 1.0, -2.0]) / np.sqrt(6)


class OutsideDomain(ValueError):
    pass


def disk_point(radius, phi):
    """(theta_1, theta_2) of the point radius * (cos phi e1 + sin phi e2) of the plane."""
    radius = np.asarray(radius, dtype=float)
    phi = np.asarray(phi, dtype=float)
    tri = (radius * np.cos(phi))[..., None] * PLANE_E1 + (radius * np.sin(phi))[..., None] * PLANE_E2
    return tri[..., :2]


def in_disk(theta) -> np.ndarray:
    return np.sum(angle_triples(theta) ** 2, axis=-1) < 1.0


def require_disk(theta) -> None:
    if not np.all(in_disk(theta)):
        raise OutsideDomain("angles outside the open disk D")


def toy_f(theta):
    c = np.cos(angle_triples(theta))
    return np.stack([c[..., 0] - c[..., 1], c[..., 1] - c[..., 2]], axis=-1)


def toy_g(theta):
    th = angle_triples(theta)
    return np.sum(np.cos(th) * np.sin(th), axis=-1)


def toy_F(theta):
    return np.concatenate([toy_f(theta), toy_g(theta)[..., None]], axis=-1)


def toy_g_gradient(theta):
    """Gradient of g with respect to (theta_1, theta_2), theta_3 eliminated."""
    th = angle_triples(theta)
    dg = np.cos(2 * th)  # d/dtheta_a of cos(theta_a) sin(theta_a)
    return np.stack([dg[..., 0] - dg[..., 2], dg[..., 1] - dg[..., 2]], axis=-1)


def p_torus(theta):
    return np.cos(angle_triples(theta))


def q_torus(theta):
    th = angle_triples(theta)
    c = np.cos(th)
    return np.concatenate([c, np.sum(c * np.sin(th), axis=-1)[..., None]], axis=-1)


def angle_distance(theta, period: float = TWO_PI):
    """Distance from each angle to the nearest multiple of ``period``, shape (..., 3)."""
    th = angle_triples(theta)
    return np.abs(th - period * np.round(th / period))


def wall_distance(theta, period: float = TWO_PI):
    """Distance to the wall {some theta_a = 0 mod period}.

    ``period=2*pi`` is the wall proper; ``period=pi`` is the locus where
    some coordinate z_a is real.
    """
    return np.min(angle_distance(theta, period), axis=-1)


def torus_difference(theta, other):
    d = np.asarray(theta, dtype=float) - np.asarray(other, dtype=float)
    return d - TWO_PI * np.round(d / TWO_PI)


# Angle pairs of the four points R = {(1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1)}.
RAMIFICATION_ANGLES = np.array([[0.0, 0.0], [0.0, np.pi], [np.pi, 0.0], [np.pi, np.pi]])


def distance_to_ramification(theta):
    theta = np.asarray(theta, dtype=float)
    d = torus_difference(theta[..., None, :], RAMIFICATION_ANGLES)
    return np.min(np.linalg.norm(d, axis=-1), axis=-1)
