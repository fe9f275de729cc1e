"""The geometry verification suite behind ``lgpants verify-geometry``.

Each check reduces a batch of seeded samples to one number and compares it
with a bound. Three groups:

* identities: the toy properties (quotient, odd, zero locus, submersion),
  the Lagrangian condition on the skeleton and the fibre primitive;
* ramification: where the Jacobian of p|_K drops rank, and where q|_K is
  an immersion;
* double points: where F_toy and q|_K fail to be injective.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .config import GeomConfig
from .doublepoints import DISK, TORUS, WALL_FREE_PATCH, double_point_report
from .forms import fiber_primitive_defects, lagrangian_defects
from .jacobian import fd_jacobian, jacobi_singular_values, second_singular_values, MAPS
from .maps import RAMIFICATION_ANGLES, TWO_PI, distance_to_ramification, toy_g
from .toy import batch_defects, sample_disk, sample_wall, wall_gradient_norms

# Fixed proximity thresholds: "at" the wall or R means within WALL_TOL,
# "away from" R means at least AWAY_FROM_R.
WALL_TOL = 1e-6
AWAY_FROM_R = 0.1
# The gradient of g vanishes at the origin, where the three wall segments meet.
SUBMERSION_MIN_RADIUS = 0.01
DILATIONS = (0.5, 1.0, 2.0, 10.0)
RAMIFICATION_SAMPLES = 1000
SCAN_RES = 256

# Independent random streams, one per check family.
STREAM_DISK, STREAM_WALL, STREAM_SKELETON, STREAM_FIBER, STREAM_AWAY, STREAM_DOUBLE = range(6)


@dataclass
class Check:
    name: str
    value: float
    bound: float
    relation: str  # "<", ">" or "=="
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.relation == "<":
            return bool(self.value < self.bound)
        if self.relation == ">":
            return bool(self.value > self.bound)
        return bool(self.value == self.bound)

    def as_dict(self) -> dict:
        out = {"name": self.name, "value": self.value, "relation": self.relation,
               "bound": self.bound, "passed": self.passed}
        if self.info:
            out["info"] = self.info
        return out


@dataclass
class SuiteReport:
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def by_name(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {"checks": [c.as_dict() for c in self.checks], "passed": self.passed}


def _rng(config: GeomConfig, stream: int) -> np.random.Generator:
    return np.random.default_rng([config.seed, stream])


def identity_checks(config: GeomConfig = GeomConfig()) -> List[Check]:
    n = config.samples
    disk = sample_disk(_rng(config, STREAM_DISK), n)
    toy = batch_defects(disk)
    wall = sample_wall(_rng(config, STREAM_WALL), n)
    away = wall[np.linalg.norm(wall, axis=-1) > SUBMERSION_MIN_RADIUS]

    rng = _rng(config, STREAM_SKELETON)
    r = rng.uniform(0.1, 2.0, n)
    theta = rng.uniform(0.0, TWO_PI, (n, 2))
    lag = max(float(np.max(lagrangian_defects(s * r, theta))) for s in DILATIONS)

    rng = _rng(config, STREAM_FIBER)
    z = rng.uniform(-1.0, 1.0, (n, 6))
    v = np.zeros((n, 6))
    v[:, 1::2] = rng.uniform(-1.0, 1.0, (n, 3))
    fib = float(np.max(fiber_primitive_defects(z, v)))

    return [
        Check("toy_quotient", toy["quotient"], config.tol, "<"),
        Check("toy_odd", toy["odd"], config.tol, "<"),
        Check("toy_wall_zero", float(np.max(np.abs(toy_g(wall)))), config.tol, "<"),
        Check("toy_wall_submersion", float(np.min(wall_gradient_norms(away))), config.jacobian_tol, ">",
              {"excluded_radius": SUBMERSION_MIN_RADIUS}),
        Check("lagrangian", lag, config.tol, "<", {"dilations": list(DILATIONS)}),
        Check("fiber_primitive", fib, config.tol, "<"),
    ]


def sample_away_from_ramification(rng: np.random.Generator, n: int, margin: float = AWAY_FROM_R) -> np.ndarray:
    out = np.empty((0, 2))
    while len(out) < n:
        th = rng.uniform(0.0, TWO_PI, (2 * n, 2))
        out = np.vstack([out, th[distance_to_ramification(th) > margin]])
    return out[:n]


def ramification_checks(config: GeomConfig = GeomConfig()) -> List[Check]:
    at_r = [float(jacobi_singular_values(fd_jacobian(MAPS["p_K"], th))[1]) for th in RAMIFICATION_ANGLES]

    t = np.arange(SCAN_RES) * TWO_PI / SCAN_RES  # contains 0 and pi
    grid = np.stack(np.meshgrid(t, t, indexing="ij"), axis=-1).reshape(-1, 2)
    low = grid[second_singular_values("p_K", grid) < WALL_TOL]

    away = sample_away_from_ramification(_rng(config, STREAM_AWAY), RAMIFICATION_SAMPLES)
    return [
        Check("p_K_singular_at_R", max(at_r), WALL_TOL, "<"),
        Check("p_K_scan_singular_points", float(len(low)), 4.0, "==",
              {"grid": SCAN_RES, "points": low.tolist()}),
        Check("p_K_rank2_away_from_R", float(np.min(second_singular_values("p_K", away))), config.jacobian_tol, ">"),
        Check("q_K_rank2_away_from_R", float(np.min(second_singular_values("q_K", away))), config.jacobian_tol, ">"),
    ]


def double_point_checks(config: GeomConfig = GeomConfig(), literal: bool = False) -> List[Check]:
    """Double points of F_toy and q|_K, and injectivity on a wall-free patch.

    The double points of q|_K lie on {some theta_a = 0 mod pi}: on the
    lines theta_a = pi the pairs theta, -theta also collide, since g
    vanishes there too. By default that locus is checked; with
    ``literal=True`` the check uses the wall {theta_a = 0 mod 2 pi} proper,
    which q|_K does not satisfy.
    """
    toy = double_point_report("F_toy", DISK, config, seed_offset=STREAM_DOUBLE)
    q = double_point_report("q_K", TORUS, config, seed_offset=STREAM_DOUBLE)
    q_key = "wall" if literal else "real_locus"
    q_value = q.max_wall_distance if literal else q.max_real_locus_distance
    checks = [
        Check("F_toy_double_points_on_wall", toy.max_wall_distance, WALL_TOL, "<",
              {"found": len(toy.points), "candidates": toy.candidates}),
        Check("F_toy_double_points_transverse", float(toy.all_transverse and len(toy.points) > 0), 1.0, "=="),
        Check(f"q_K_double_points_on_{q_key}", q_value, WALL_TOL, "<",
              {"found": len(q.points), "candidates": q.candidates,
               "off_wall_mod_2pi": len(q.off_wall(WALL_TOL))}),
        Check("q_K_double_points_transverse", float(q.all_transverse and len(q.points) > 0), 1.0, "=="),
    ]
    for name in ("p_K", "q_K"):
        patch = double_point_report(name, WALL_FREE_PATCH, config, seed_offset=STREAM_DOUBLE)
        checks.append(Check(f"{name}_wall_free_patch_double_points", float(len(patch.points)), 0.0, "=="))
    return checks


def run_suite(config: GeomConfig = GeomConfig(), groups: Optional[List[str]] = None,
              literal_wall: bool = False) -> SuiteReport:
    runners = {"identities": identity_checks, "ramification": ramification_checks,
               "double_points": lambda c: double_point_checks(c, literal=literal_wall)}
    checks: List[Check] = []
    for group in groups or list(runners):
        checks += runners[group](config)
    return SuiteReport(checks)
