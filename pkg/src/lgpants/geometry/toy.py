"""Defect measurements for the three properties of the toy map F = (f, g) on the disk D."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .forms import AngleTriple
from .maps import disk_point, require_disk, toy_f, toy_g, toy_g_gradient, wall_distance

ON_WALL_TOL = 1e-12


@dataclass(frozen=True)
class ToyDefects:
    quotient: float
    odd: float
    wall: Optional[float]  # None away from the wall


def toy_property_defects(theta: AngleTriple) -> ToyDefects:
    th = np.array([theta.t1, theta.t2])
    require_disk(th)
    quotient = float(np.linalg.norm(toy_f(th) - toy_f(-th)))
    odd = float(abs(toy_g(-th) + toy_g(th)))
    wall = float(abs(toy_g(th))) if wall_distance(th) <= ON_WALL_TOL else None
    return ToyDefects(quotient, odd, wall)


def sample_disk(rng: np.random.Generator, n: int, max_radius: float = 1.0) -> np.ndarray:
    """Uniform samples of the open disk of the given radius, as (theta_1, theta_2)."""
    radius = max_radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    # keep strictly inside the open disk
    radius = np.minimum(radius, np.nextafter(max_radius, 0))
    return disk_point(radius, rng.uniform(0.0, 2 * np.pi, n))


def sample_wall(rng: np.random.Generator, n: int, min_radius: float = 0.0) -> np.ndarray:
    """Uniform samples of the three wall segments {theta_a = 0} inside D."""
    which = rng.integers(0, 3, n)
    # on {theta_a = 0} the other two angles are (s, -s) with 2 s^2 < 1
    smax = 1 / np.sqrt(2)
    s = rng.uniform(min_radius / np.sqrt(2), smax, n) * rng.choice([-1.0, 1.0], n)
    s = np.clip(s, -np.nextafter(smax, 0), np.nextafter(smax, 0))
    tri = np.zeros((n, 3))
    rows = np.arange(n)
    tri[rows, (which + 1) % 3] = s
    tri[rows, (which + 2) % 3] = -s
    return tri[:, :2]


def batch_defects(theta) -> dict:
    """Maximal quotient and odd defects over a batch of disk points."""
    theta = np.asarray(theta, dtype=float)
    require_disk(theta)
    return {
        "quotient": float(np.max(np.linalg.norm(toy_f(theta) - toy_f(-theta), axis=-1))),
        "odd": float(np.max(np.abs(toy_g(-theta) + toy_g(theta)))),
    }


def wall_zero_defect(theta) -> float:
    return float(np.max(np.abs(toy_g(theta))))


def wall_gradient_norms(theta) -> np.ndarray:
    """|grad g| at wall points: g is a submersion along the wall away from the origin."""
    return np.linalg.norm(toy_g_gradient(theta), axis=-1)
