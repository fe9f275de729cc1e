"""Finite-difference Jacobians and their numerical rank."""

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .maps import OutsideDomain, in_disk, p_torus, q_torus, toy_F

FD_STEP = 1e-6


@dataclass(frozen=True)
class AngleMap:
    name: str
    func: Callable[[np.ndarray], np.ndarray]
    on_disk: bool  # True: defined on D only; False: on the whole torus

    def __call__(self, theta):
        return self.func(theta)

    def check_domain(self, theta) -> None:
        if self.on_disk and not np.all(in_disk(theta)):
            raise OutsideDomain(f"{self.name} is only defined on the disk D")


MAPS: Dict[str, AngleMap] = {
    "F_toy": AngleMap("F_toy", toy_F, True),
    "q_K": AngleMap("q_K", q_torus, False),
    "p_K": AngleMap("p_K", p_torus, False),
}


def fd_jacobian(func, x, h: float = FD_STEP) -> np.ndarray:
    """Central-difference Jacobian of ``func`` at ``x``; broadcasts over leading axes.

    Returns an array of shape ``(..., m, n)`` for ``x`` of shape ``(..., n)``.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    cols = []
    for k in range(n):
        e = np.zeros(n)
        e[k] = h
        cols.append((func(x + e) - func(x - e)) / (2 * h))
    return np.stack(cols, axis=-1)


def jacobi_singular_values(a, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """Singular values by one-sided Jacobi rotations, sorted in decreasing order."""
    u = np.array(a, dtype=float, copy=True)
    if u.shape[0] < u.shape[1]:
        u = u.T.copy()
    n = u.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = u[:, p] @ u[:, p]
                beta = u[:, q] @ u[:, q]
                gamma = u[:, p] @ u[:, q]
                if abs(gamma) <= tol * np.sqrt(alpha * beta) or gamma == 0.0:
                    continue
                with np.errstate(over="ignore"):
                    zeta = (beta - alpha) / (2 * gamma)
                if not np.isfinite(zeta):  # columns already orthogonal to working precision
                    continue
                rotated = True
                if zeta == 0:
                    t = 1.0
                elif abs(zeta) > 1e150:  # zeta^2 would overflow; t ~ 1 / (2 zeta)
                    t = 0.5 / zeta
                else:
                    t = np.sign(zeta) / (abs(zeta) + np.sqrt(1 + zeta * zeta))
                c = 1 / np.sqrt(1 + t * t)
                s = c * t
                up = u[:, p].copy()
                u[:, p] = c * up - s * u[:, q]
                u[:, q] = s * up + c * u[:, q]
        if not rotated:
            break
    return np.sort(np.linalg.norm(u, axis=0))[::-1]


@dataclass(frozen=True)
class RankProfile:
    singular_values: np.ndarray
    rank: int


def jacobian_rank_profile(map_name: str, theta, jacobian_tol: float = 1e-6) -> RankProfile:
    fmap = MAPS[map_name]
    theta = np.asarray(theta, dtype=float)
    fmap.check_domain(theta)
    sv = jacobi_singular_values(fd_jacobian(fmap, theta))
    return RankProfile(sv, int(np.sum(sv > jacobian_tol)))


def smallest_singular_values(jac) -> np.ndarray:
    """Smaller singular value of stacked (..., m, 2) Jacobians, from the 2x2 Gram matrix."""
    a = np.sum(jac[..., 0] ** 2, axis=-1)
    b = np.sum(jac[..., 1] ** 2, axis=-1)
    c = np.sum(jac[..., 0] * jac[..., 1], axis=-1)
    # det / larger eigenvalue avoids cancellation in the smaller one
    big = (a + b) / 2 + np.sqrt(((a - b) / 2) ** 2 + c * c)
    det = np.maximum(a * b - c * c, 0.0)
    return np.sqrt(np.where(big > 0, det / np.where(big > 0, big, 1.0), 0.0))


def second_singular_values(map_name: str, theta) -> np.ndarray:
    """Vectorised smaller singular value of the Jacobian of a named map at many points.

    Used for sweeps; :func:`jacobi_singular_values` is the reference.
    """
    return smallest_singular_values(fd_jacobian(MAPS[map_name], theta))
