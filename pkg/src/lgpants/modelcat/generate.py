"""Seeded generators of random test data for the category models."""

import numpy as np

from ..exactlin import RatMatrix, det
from .reps import AutPair, StarSumRep, from_autpair, permute, transform

ENTRY_RANGE = 3
MAX_DIM = 6


def _rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


def random_int_matrix(rng: np.random.Generator, rows: int, cols: int) -> RatMatrix:
    vals = rng.integers(-ENTRY_RANGE, ENTRY_RANGE + 1, size=(rows, cols))
    return RatMatrix([[int(x) for x in row] for row in vals], cols=cols)


def random_invertible(rng: np.random.Generator, n: int) -> RatMatrix:
    while True:
        g = random_int_matrix(rng, n, n)
        if det(g) != 0:
            return g


def random_autpair(seed_or_rng, max_dim: int = MAX_DIM, min_dim: int = 1) -> AutPair:
    rng = _rng(seed_or_rng)
    d = int(rng.integers(min_dim, max_dim + 1))
    eye = RatMatrix.identity(d)
    while True:
        m = random_int_matrix(rng, d, d)
        if det(m) != 0 and det(m - eye) != 0:
            return AutPair(d, m)


def random_pants(seed_or_rng, max_dim: int = MAX_DIM, shuffle: bool = True) -> StarSumRep:
    """A random valid 4-star, disguised by changes of basis and relabelling.

    Deterministic for an integer seed. ``shuffle=False`` keeps the outer
    spaces in the order produced by :func:`from_autpair`.
    """
    if max_dim > MAX_DIM:
        raise ValueError(f"max_dim must be at most {MAX_DIM}")
    rng = _rng(seed_or_rng)
    pair = random_autpair(rng, max_dim)
    rep = from_autpair(pair)
    g = random_invertible(rng, rep.dim_v)
    h = [random_invertible(rng, d) for d in rep.dims]
    rep = transform(rep, g, h)
    if shuffle:
        rep = permute(rep, [int(i) for i in rng.permutation(4)])
    return rep


def random_trefoil_rep(seed_or_rng, max_dim: int = MAX_DIM) -> StarSumRep:
    """A random valid 3-star: two coordinate spaces and the graph of an isomorphism."""
    rng = _rng(seed_or_rng)
    d = int(rng.integers(1, max_dim + 1))
    m3 = random_invertible(rng, d)
    eye, zero = RatMatrix.identity(d), RatMatrix.zeros(d, d)
    rep = StarSumRep(
        2 * d,
        (RatMatrix.vstack(eye, zero), RatMatrix.vstack(zero, eye), RatMatrix.vstack(eye, m3)),
    )
    g = random_invertible(rng, 2 * d)
    h = [random_invertible(rng, d) for _ in range(3)]
    return transform(rep, g, h)
