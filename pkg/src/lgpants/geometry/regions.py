"""Crossings of closed planar curves and complementary regions of curves and surfaces.

Complements are found by rasterising the curve or surface onto a grid and
labelling the free cells with face connectivity (4-neighbours in 2D,
6-neighbours in 3D). The component touching the grid frame is the
non-compact one.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy import ndimage

from .config import GeomConfig
from .link import Polyline2, link_points, stereographic

PARAM_SLACK = 1e-12
BOX_MARGIN = 0.1


class DegenerateCrossing(ValueError):
    pass


class ResolutionTooLow(ValueError):
    pass


def polyline_crossings(poly: Polyline2, tol: float = 1e-9, chunk: int = 256) -> Tuple[int, np.ndarray]:
    """Transverse self-intersections of a closed polyline.

    Segments sharing a vertex are never compared. A crossing through a
    vertex is found on both segments meeting there and is merged; distinct
    crossings closer than ``tol`` raise :class:`DegenerateCrossing`.
    """
    p = poly.points[:-1]
    d = poly.points[1:] - p
    n = len(p)
    hits = []  # (i, j, x, y)
    for start in range(0, n, chunk):
        i = np.arange(start, min(start + chunk, n))
        pi, di = p[i][:, None, :], d[i][:, None, :]
        qp = p[None, :, :] - pi
        denom = di[..., 0] * d[None, :, 1] - di[..., 1] * d[None, :, 0]
        num_s = qp[..., 0] * d[None, :, 1] - qp[..., 1] * d[None, :, 0]
        num_t = qp[..., 0] * di[..., 1] - qp[..., 1] * di[..., 0]
        jj = np.arange(n)[None, :]
        ii = i[:, None]
        gap = (jj - ii) % n
        candidate = (jj > ii) & (gap > 1) & (gap < n - 1)
        parallel = candidate & (denom == 0)
        if np.any(parallel & (num_s == 0)):
            raise DegenerateCrossing("overlapping collinear segments")
        with np.errstate(divide="ignore", invalid="ignore"):
            s = num_s / denom
            t = num_t / denom
        ok = candidate & ~parallel
        ok &= (s >= -PARAM_SLACK) & (s <= 1 + PARAM_SLACK)
        ok &= (t >= -PARAM_SLACK) & (t <= 1 + PARAM_SLACK)
        for a, b in zip(*np.nonzero(ok)):
            x = p[i[a]] + s[a, b] * d[i[a]]
            hits.append((int(i[a]), int(b), x))
    crossings: List[Tuple[int, int, np.ndarray]] = []
    for i, j, x in hits:
        dup = False
        for k, (ci, cj, cx) in enumerate(crossings):
            if np.linalg.norm(cx - x) <= tol:
                if (_near(ci, i, n) and _near(cj, j, n)) or (_near(ci, j, n) and _near(cj, i, n)):
                    dup = True
                    break
                raise DegenerateCrossing(f"two crossings within {tol} of {x.tolist()}")
        if not dup:
            crossings.append((i, j, x))
    pts = np.array([c[2] for c in crossings]).reshape(-1, 2)
    return len(crossings), pts


def _near(a: int, b: int, n: int) -> bool:
    return min((a - b) % n, (b - a) % n) <= 1


@dataclass
class VoxelGrid:
    """Occupancy grid over an axis-aligned cube ``[lo, lo + size]^d``."""

    res: int
    lo: np.ndarray
    size: float
    occupied: np.ndarray = field(repr=False)

    @classmethod
    def enclosing(cls, points, res: int, box_scale: float = 1.0) -> "VoxelGrid":
        pts = np.asarray(points, dtype=float).reshape(-1, np.shape(points)[-1])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        centre = (lo + hi) / 2
        # leave at least 1.5 empty cells on every side so that marks stay off the frame
        h0 = (hi - lo).max() / 2
        half = max(h0 * (1 + BOX_MARGIN), h0 / (1 - 3 / res)) * box_scale
        dim = pts.shape[1]
        return cls(res, centre - half, 2 * half, np.zeros((res,) * dim, dtype=bool))

    @property
    def cell(self) -> float:
        return self.size / self.res

    def mark(self, points) -> None:
        pts = np.asarray(points, dtype=float).reshape(-1, self.occupied.ndim)
        idx = np.floor((pts - self.lo) / self.cell).astype(int)
        if np.any(idx <= 0) or np.any(idx >= self.res - 1):
            raise ValueError("bounding box does not strictly contain the samples")
        self.occupied[tuple(idx.T)] = True


@dataclass(frozen=True)
class RegionCount:
    total: int
    bounded: int
    unbounded: int
    pockets: int = 0  # free components thinner than one cell, discarded

    def as_tuple(self) -> Tuple[int, int]:
        return (self.total, self.bounded)

    def same_as(self, other: "RegionCount") -> bool:
        """Planar refinement agreement: a change in pockets signals a region thinner than a cell."""
        return (self.total, self.bounded, self.unbounded, self.pockets) == (
            other.total, other.bounded, other.unbounded, other.pockets)


def count_free_components(occupied: np.ndarray) -> RegionCount:
    """Face-connected components of the free cells.

    Components in which every cell has an occupied face-neighbour are
    rasterisation pockets (the free set there is thinner than one cell) and
    are counted separately rather than as regions.
    """
    free = ~occupied
    labels, k = ndimage.label(free)
    if k == 0:
        return RegionCount(0, 0, 0)
    core = ndimage.binary_erosion(free, border_value=1)
    has_core = np.zeros(k + 1, dtype=bool)
    has_core[np.unique(labels[core])] = True
    has_core[0] = False
    frame = np.zeros_like(free)
    for axis in range(free.ndim):
        sl = [slice(None)] * free.ndim
        sl[axis] = 0
        frame[tuple(sl)] = True
        sl[axis] = -1
        frame[tuple(sl)] = True
    touching = np.zeros(k + 1, dtype=bool)
    touching[np.unique(labels[frame & free])] = True
    touching[0] = False
    regions = has_core | touching
    unbounded = int(np.sum(touching))
    total = int(np.sum(regions))
    return RegionCount(total, total - unbounded, unbounded, int(k - total))


def rasterize_polyline(poly: Polyline2, res: int, box_scale: float = 1.0) -> VoxelGrid:
    grid = VoxelGrid.enclosing(poly.points, res, box_scale)
    step = grid.cell / 4
    p = poly.points
    seg = np.diff(p, axis=0)
    counts = np.maximum(np.ceil(np.linalg.norm(seg, axis=1) / step).astype(int), 1)
    owner = np.repeat(np.arange(len(seg)), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    frac = offsets / counts[owner]
    grid.mark(p[owner] + frac[:, None] * seg[owner])
    return grid


def region_count_2d(poly: Polyline2, config: GeomConfig = GeomConfig(), res: int = None,
                    check_stability: bool = False, box_scale: float = 1.0) -> RegionCount:
    res = res or config.grid_res
    count = count_free_components(rasterize_polyline(poly, res, box_scale).occupied)
    if count.unbounded != 1:
        raise ResolutionTooLow(f"{count.unbounded} components touch the frame")
    if check_stability:
        finer = count_free_components(rasterize_polyline(poly, 2 * res, box_scale).occupied)
        if not finer.same_as(count):
            raise ResolutionTooLow(
                f"region count changes from {count.as_tuple()} to {finer.as_tuple()} "
                f"when the grid is refined from {res} to {2 * res}"
            )
    return count


def torus_grid(n: int) -> np.ndarray:
    t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
    t1, t2 = np.meshgrid(t, t, indexing="ij")
    return np.stack([t1, t2], axis=-1)


def link_surface(n: int, rho: float) -> np.ndarray:
    """The projected link surface sampled on an n x n torus grid, shape (n, n, 3)."""
    return stereographic(link_points(torus_grid(n), rho), rho)


def max_grid_spacing(surface: np.ndarray) -> float:
    """Largest distance between grid-adjacent samples of a periodic sample grid."""
    d0 = np.linalg.norm(np.roll(surface, 1, axis=0) - surface, axis=-1).max()
    d1 = np.linalg.norm(np.roll(surface, 1, axis=1) - surface, axis=-1).max()
    return float(max(d0, d1))


MIN_TORUS_SAMPLES = 512


def voxelize_link(config: GeomConfig, res: int, box_scale: float = 1.0) -> VoxelGrid:
    """Mark the cells met by the link surface, then thicken by one face-neighbour step.

    The torus grid is refined until adjacent samples are less than half a
    cell apart, so that the marks cannot skip a cell.
    """
    n = MIN_TORUS_SAMPLES
    while True:
        surface = link_surface(n, config.rho1)
        grid = VoxelGrid.enclosing(surface, res, box_scale)
        if max_grid_spacing(surface) < 0.5 * grid.cell:
            break
        n *= 2
    grid.mark(surface)
    grid.occupied = ndimage.binary_dilation(grid.occupied)
    return grid


def link_regions_3d(config: GeomConfig = GeomConfig(), res: int = None, box_scale: float = 1.0,
                    check_stability: bool = False) -> RegionCount:
    res = res or config.grid_res
    count = count_free_components(voxelize_link(config, res, box_scale).occupied)
    if check_stability:
        finer = count_free_components(voxelize_link(config, 2 * res, box_scale).occupied)
        # voids trapped inside the thickened surface multiply under refinement, so pockets
        # are not compared here, unlike the planar check
        if finer.as_tuple() != count.as_tuple() or finer.unbounded != count.unbounded:
            raise ResolutionTooLow(
                f"region count changes from {count.as_tuple()} to {finer.as_tuple()} "
                f"when the grid is refined from {res} to {2 * res}"
            )
    return count
