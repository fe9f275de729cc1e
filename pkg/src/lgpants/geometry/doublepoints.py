"""Monte-Carlo search for double points of maps out of angle space.

Sampled images are paired up with a k-d tree; each pair of samples whose
images are close but whose angles are far apart seeds a Gauss-Newton solve
of ``map(a) = map(b)``. Converged pairs are reported together with their
distance to the wall and a transversality flag.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from .config import GeomConfig
from .jacobian import MAPS, AngleMap, fd_jacobian, jacobi_singular_values, smallest_singular_values
from .maps import TWO_PI, in_disk, torus_difference, wall_distance
from .toy import sample_disk

MIN_SEPARATION = 0.05
NEWTON_ITERS = 100
NEWTON_TOL = 1e-13


@dataclass(frozen=True)
class Domain:
    """Where to look: the disk D, the torus, or a box of the torus."""

    name: str
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    contains: Callable[[np.ndarray], np.ndarray]
    periodic: bool

    def separation(self, a, b):
        d = torus_difference(a, b) if self.periodic else np.asarray(a) - np.asarray(b)
        return np.linalg.norm(d, axis=-1)


DISK = Domain("disk", sample_disk, in_disk, periodic=False)
TORUS = Domain(
    "torus",
    lambda rng, n: rng.uniform(0.0, TWO_PI, (n, 2)),
    lambda th: np.ones(np.shape(th)[:-1], dtype=bool),
    periodic=True,
)


def torus_box(lo1: float, hi1: float, lo2: float, hi2: float) -> Domain:
    """Rectangle of (theta_1, theta_2), taken literally (no wrap-around)."""

    def sampler(rng, n):
        return np.stack([rng.uniform(lo1, hi1, n), rng.uniform(lo2, hi2, n)], axis=-1)

    def contains(th):
        th = np.asarray(th)
        return (th[..., 0] > lo1) & (th[..., 0] < hi1) & (th[..., 1] > lo2) & (th[..., 1] < hi2)

    return Domain(f"box[{lo1},{hi1}]x[{lo2},{hi2}]", sampler, contains, periodic=False)


# The wall-free patch {theta_1 > 0.1, theta_2 > 0.1, theta_3 < -0.2} cut down
# to a single sheet of the two-fold cover p|_K.
WALL_FREE_PATCH = torus_box(0.1, np.pi / 2, 0.1, np.pi / 2)


@dataclass
class DoublePoint:
    theta: np.ndarray
    theta_other: np.ndarray
    image: np.ndarray
    wall_distance: float  # to {some theta_a = 0 mod 2 pi}, the nearer of the two preimages
    real_locus_distance: float  # to {some theta_a = 0 mod pi}
    combined_rank: int
    transverse: bool


@dataclass
class DoublePointReport:
    map_name: str
    domain: str
    samples: int
    candidates: int
    points: List[DoublePoint] = field(default_factory=list)

    @property
    def max_wall_distance(self) -> float:
        return max((p.wall_distance for p in self.points), default=0.0)

    @property
    def max_real_locus_distance(self) -> float:
        return max((p.real_locus_distance for p in self.points), default=0.0)

    @property
    def all_transverse(self) -> bool:
        return all(p.transverse for p in self.points)

    def off_wall(self, tol: float, period: float = TWO_PI) -> List[DoublePoint]:
        key = "wall_distance" if period == TWO_PI else "real_locus_distance"
        return [p for p in self.points if getattr(p, key) > tol]


def _refine(fmap: AngleMap, domain: Domain, a: np.ndarray, b: np.ndarray
            ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Newton on map(a) - map(b) = 0, batched over candidate pairs.

    The separation |a - b| is held at its starting value by one extra
    equation. Without it the iterates slide along the double curve towards
    the diagonal a = b, which solves the equations trivially; holding the
    separation fixed picks out one point of the curve instead.

    Returns the refined ``a``, ``b`` and a mask of pairs that converged.
    """
    x = np.concatenate([a, b], axis=-1)
    target = domain.separation(a, b) ** 2

    for _ in range(NEWTON_ITERS):
        resid = fmap(x[:, :2]) - fmap(x[:, 2:])
        active = np.linalg.norm(resid, axis=-1) >= NEWTON_TOL
        active &= np.all(np.isfinite(x), axis=-1)
        if not np.any(active):
            break
        xa = x[active]
        diff = _difference(domain, xa[:, :2], xa[:, 2:])
        sep_resid = np.sum(diff * diff, axis=-1) - target[active]
        jac = np.concatenate([fd_jacobian(fmap, xa[:, :2]), -fd_jacobian(fmap, xa[:, 2:])], axis=-1)
        sep_row = 2 * np.concatenate([diff, -diff], axis=-1)[:, None, :]
        full_jac = np.concatenate([jac, sep_row], axis=1)
        full_resid = np.concatenate([resid[active], sep_resid[:, None]], axis=-1)
        step = -np.einsum("nij,nj->ni", np.linalg.pinv(full_jac), full_resid)
        x[active] = xa + step
    resid = fmap(x[:, :2]) - fmap(x[:, 2:])
    ok = np.all(np.isfinite(x), axis=-1)
    ok[ok] = np.linalg.norm(resid[ok], axis=-1) < 1e-11
    return x[:, :2], x[:, 2:], ok


def _difference(domain: Domain, a, b):
    return torus_difference(a, b) if domain.periodic else np.asarray(a) - np.asarray(b)


def _candidate_pairs(theta, images, jac, domain: Domain, neighbours: int = 12) -> np.ndarray:
    """For each sample, its nearest image neighbour that lies on another sheet.

    A neighbour counts if it is within twice the median nearest-neighbour
    spacing of the image, its angles are at least MIN_SEPARATION away, and
    the image distance is below half of what the local Jacobian would give
    for that separation on a single sheet. Each unordered pair is kept once.
    """
    tree = cKDTree(images)
    k = min(neighbours + 1, len(images))
    dist, idx = tree.query(images, k=k)
    if k < 2:
        return np.empty((0, 2), dtype=int)
    radius = 2.0 * float(np.median(dist[:, 1]))
    sep = domain.separation(theta[:, None, :], theta[idx[:, 1:]])
    stretch = smallest_singular_values(jac)[:, None] * sep
    good = (sep > MIN_SEPARATION) & (dist[:, 1:] <= radius) & (dist[:, 1:] < 0.5 * stretch)
    has = good.any(axis=1)
    rows = np.nonzero(has)[0]
    partner = idx[rows, 1 + np.argmax(good[rows], axis=1)]
    pairs = np.sort(np.stack([rows, partner], axis=1), axis=1)
    return np.unique(pairs, axis=0)


def double_point_report(map_name: str, domain: Domain, config: GeomConfig = GeomConfig(),
                        samples: Optional[int] = None, seed_offset: int = 0) -> DoublePointReport:
    fmap = MAPS[map_name]
    n = samples if samples is not None else config.samples
    rng = np.random.default_rng([config.seed, seed_offset])
    theta = domain.sampler(rng, n)
    images = fmap(theta)
    pairs = _candidate_pairs(theta, images, fd_jacobian(fmap, theta), domain)
    report = DoublePointReport(map_name, domain.name, n, len(pairs))
    if not len(pairs):
        return report
    a, b, ok = _refine(fmap, domain, theta[pairs[:, 0]], theta[pairs[:, 1]])
    keep = ok & domain.contains(a) & domain.contains(b)
    keep &= domain.separation(a, b) >= MIN_SEPARATION / 2
    for a_i, b_i in zip(a[keep], b[keep]):
        combined = np.hstack([fd_jacobian(fmap, a_i), fd_jacobian(fmap, b_i)])
        rank = int(np.sum(jacobi_singular_values(combined) > config.jacobian_tol))
        report.points.append(
            DoublePoint(
                theta=a_i,
                theta_other=b_i,
                image=fmap(a_i),
                wall_distance=float(min(wall_distance(a_i), wall_distance(b_i))),
                real_locus_distance=float(min(wall_distance(a_i, np.pi), wall_distance(b_i, np.pi))),
                combined_rank=rank,
                transverse=rank == 3,
            )
        )
    return report
