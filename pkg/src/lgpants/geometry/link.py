"""Links of the two cones at the origin and their stereographic pictures.

Toy case: H = F(D) in R^3 is cut by the sphere |y| = rho1 and projected
from its lowest point, giving the planar trefoil diagram.

Main case: the cone q(L) in R^4 is parametrised by
``(r, theta) -> (r cos theta_1, r cos theta_2, r cos theta_3, r^2 g(theta))``
and cut by the round 3-sphere |y| = rho1; the resulting surface is
projected into R^3.
"""

from dataclasses import dataclass

import numpy as np

from .config import GeomConfig
from .forms import AngleTriple, angle_triples
from .maps import disk_point, toy_F

BISECTION_TOL = 1e-12


class NoRoot(ValueError):
    pass


class RootFindFailure(ValueError):
    pass


class AtCenter(ValueError):
    pass


def cone_point(r, theta):
    """Point of the main cone at radius r over the angles theta, shape (..., 4)."""
    th = angle_triples(theta)
    r = np.asarray(r, dtype=float)
    c = np.cos(th)
    g = np.sum(c * np.sin(th), axis=-1)
    return np.concatenate([r[..., None] * c, (r * r * g)[..., None]], axis=-1)


def link_point(theta: AngleTriple, config: GeomConfig = GeomConfig()) -> np.ndarray:
    """The point of the cone over ``theta`` at distance rho1 from the origin.

    The squared norm ``r^2 sum cos^2 + r^4 g^2`` is strictly increasing in r
    once ``sum cos^2 > 0``, so bisection finds the unique root.
    """
    th = np.array([theta.t1, theta.t2])
    spread = float(np.sum(np.cos(angle_triples(th)) ** 2))
    if spread < config.tol:
        raise NoRoot("all cosines vanish: the ray stays on the t-axis")
    rho = config.rho1

    def norm(r):
        return float(np.linalg.norm(cone_point(r, th)))

    lo, hi = 0.0, rho / np.sqrt(spread)
    while norm(hi) < rho:
        hi *= 2
    while hi - lo > BISECTION_TOL:
        mid = (lo + hi) / 2
        if norm(mid) < rho:
            lo = mid
        else:
            hi = mid
    return cone_point((lo + hi) / 2, th)


def link_radii(theta, rho: float) -> np.ndarray:
    """Closed-form root r for many directions at once.

    With s = r^2 the condition is the quadratic g^2 s^2 + a s - rho^2 = 0,
    a = sum cos^2; the positive root is written in its cancellation-free form.
    """
    th = angle_triples(theta)
    c = np.cos(th)
    a = np.sum(c * c, axis=-1)
    g = np.sum(c * np.sin(th), axis=-1)
    s = 2 * rho * rho / (a + np.sqrt(a * a + 4 * g * g * rho * rho))
    return np.sqrt(s)


def link_points(theta, rho: float) -> np.ndarray:
    return cone_point(link_radii(theta, rho), theta)


def stereographic(pt, rho: float) -> np.ndarray:
    """Project the sphere |y| = rho in R^d from c = (0, ..., 0, -rho) to R^{d-1}.

    The target is the hyperplane through the antipode (0, ..., 0, rho), so
    the antipode goes to the origin and the equator to the sphere of radius
    2 rho. Broadcasts over leading axes.
    """
    pt = np.asarray(pt, dtype=float)
    denom = pt[..., -1] + rho
    if np.any(np.abs(denom) <= 1e-15 * rho):
        raise AtCenter("cannot project the centre of projection")
    return 2 * rho * pt[..., :-1] / denom[..., None]


@dataclass(frozen=True)
class Polyline2:
    """Closed planar polyline; ``points[-1]`` repeats ``points[0]``."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
            raise ValueError("need an (N+1, 2) array with N >= 3")
        if not np.allclose(pts[0], pts[-1], rtol=0, atol=1e-9):
            raise ValueError("polyline is not closed")
        if np.any(np.all(np.diff(pts, axis=0) == 0, axis=1)):
            raise ValueError("consecutive vertices coincide")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_vertices(cls, vertices) -> "Polyline2":
        v = np.asarray(vertices, dtype=float)
        return cls(np.vstack([v, v[:1]]))

    @property
    def vertices(self) -> np.ndarray:
        return self.points[:-1]

    def __len__(self):
        return len(self.points) - 1


def toy_link_radii(phi, rho: float, monotone_checks: int = 64) -> np.ndarray:
    """For each direction phi in D, the r in (0, 1) with |F(r u(phi))| = rho.

    Raises :class:`RootFindFailure` if |F| is not strictly increasing along
    the ray up to the root, or the ray leaves D first.
    """
    phi = np.asarray(phi, dtype=float)
    edge = np.linalg.norm(toy_F(disk_point(np.nextafter(1.0, 0), phi)), axis=-1)
    if np.any(edge <= rho):
        raise RootFindFailure("the sphere does not meet every ray inside D; rho1 too large")
    lo = np.zeros_like(phi)
    hi = np.ones_like(phi)
    while np.max(hi - lo) > BISECTION_TOL:
        mid = (lo + hi) / 2
        below = np.linalg.norm(toy_F(disk_point(mid, phi)), axis=-1) < rho
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    root = (lo + hi) / 2
    fractions = np.linspace(0.0, 1.0, monotone_checks + 1)[1:]
    profile = np.linalg.norm(toy_F(disk_point(root[:, None] * fractions, phi[:, None])), axis=-1)
    if np.any(np.diff(profile, axis=1) <= 0):
        raise RootFindFailure("|F| is not monotone along some ray; rho1 too large")
    return root


def trefoil_link(config: GeomConfig = GeomConfig()) -> np.ndarray:
    """Points of H ∩ {|y| = rho1} over ``ray_samples`` equally spaced directions, shape (N, 3).

    Directions are offset by half a step so that no sample sits on the wall,
    where the two branches of the diagram cross.
    """
    n = config.ray_samples
    phi = 2 * np.pi * (np.arange(n) + 0.5) / n
    r = toy_link_radii(phi, config.rho1)
    return toy_F(disk_point(r, phi))


def trefoil_polyline(config: GeomConfig = GeomConfig()) -> Polyline2:
    """The trefoil diagram: the toy link seen from its lowest point (0, 0, -rho1)."""
    return Polyline2.from_vertices(stereographic(trefoil_link(config), config.rho1))
