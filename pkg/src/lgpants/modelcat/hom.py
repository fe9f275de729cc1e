"""Morphism spaces in the star-sum and automorphism-pair models."""

from dataclasses import dataclass, field
from typing import Tuple

from ..exactlin import RatMatrix, invert, kernel_basis, left_kernel_matrix, rank, solve_matrix
from .reps import AutPair, ShapeMismatch, StarSumRep, to_autpair


@dataclass
class StarMorphism:
    phi: RatMatrix  # V -> V'
    induced: Tuple[RatMatrix, ...]  # phi_a : V_a -> V'_a with j'_a phi_a = phi j_a


@dataclass
class HomSpace:
    dimension: int
    basis: list = field(default_factory=list)


def _unvec(vec, rows: int, cols: int) -> RatMatrix:
    return RatMatrix([vec[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)


def hom_star(src: StarSumRep, dst: StarSumRep) -> HomSpace:
    """Maps ``phi: V -> V'`` with ``phi(im j_a)`` inside ``im j'_a`` for every a.

    Each containment is the linear condition ``pi'_a phi j_a = 0`` where the
    rows of ``pi'_a`` cut out ``im j'_a``. Both reps must be valid.

    Rather than solving for the entries of phi directly, phi is written
    through the splitting ``S = [j_1 | j_2]`` of V as
    ``phi = [j'_1 X_1 | j'_2 X_2] S^{-1}``: this parametrises exactly the
    maps satisfying the first two containments, and halves the unknowns.
    For a single outer space S is j_1 alone.
    """
    if src.n != dst.n:
        raise ShapeMismatch(f"different numbers of outer spaces: {src.n} vs {dst.n}")
    k = min(src.n, 2)
    split = RatMatrix.hstack(*src.maps[:k])
    split_inv = invert(split)
    blocks = []  # per splitting index b: (j'_b, rows of S^{-1} for block b, offset in X)
    row0 = offset = 0
    for b in range(k):
        d, dp = src.dims[b], dst.dims[b]
        blocks.append((dst.maps[b], split_inv.submatrix(range(row0, row0 + d), range(src.dim_v)), offset, d, dp))
        row0 += d
        offset += dp * d
    nvars = offset

    equations = []
    for j, jp in zip(src.maps[k:], dst.maps[k:]):
        pi = left_kernel_matrix(jp)
        # pi phi j = sum_b (pi j'_b) X_b (S^{-1} j)_b
        coeffs = [(pi @ jpb, sinv_b @ j, off, d) for jpb, sinv_b, off, d, _ in blocks]
        for r in range(pi.rows):
            for c in range(j.cols):
                row = [0] * nvars
                for left, right, off, d in coeffs:
                    for i in range(left.cols):
                        if left[r, i] == 0:
                            continue
                        for m in range(d):
                            row[off + i * d + m] = left[r, i] * right[m, c]
                if any(row):
                    equations.append(row)
    system = RatMatrix(equations, cols=nvars) if equations else RatMatrix.zeros(0, nvars)

    basis = []
    for vec in kernel_basis(system):
        cols = [jpb @ _unvec(vec[off:off + dp * d], dp, d) for jpb, _, off, d, dp in blocks]
        phi = RatMatrix.hstack(*cols) @ split_inv if cols else RatMatrix.zeros(dst.dim_v, src.dim_v)
        induced = tuple(solve_matrix(jp, phi @ j) for j, jp in zip(src.maps, dst.maps))
        basis.append(StarMorphism(phi, induced))
    return HomSpace(len(basis), basis)


def intertwining_operator(src: AutPair, dst: AutPair) -> RatMatrix:
    """Matrix of ``psi -> m' psi - psi m`` on row-major vectorised ``psi: W -> W'``."""
    if src.m.shape != (src.dim, src.dim) or dst.m.shape != (dst.dim, dst.dim):
        raise ShapeMismatch("automorphism has the wrong shape")
    d, dp = src.dim, dst.dim
    size = dp * d
    rows = []
    for i in range(dp):
        for j in range(d):
            # (m' psi)[i, j] - (psi m)[i, j]
            row = [0] * size
            for k in range(dp):
                row[k * d + j] += dst.m[i, k]
            for k in range(d):
                row[i * d + k] -= src.m[k, j]
            rows.append(row)
    return RatMatrix(rows, cols=size) if rows else RatMatrix.zeros(0, 0)


def hom_autpair(src: AutPair, dst: AutPair) -> HomSpace:
    op = intertwining_operator(src, dst)
    basis = [_unvec(v, dst.dim, src.dim) for v in kernel_basis(op)]
    return HomSpace(len(basis), basis)


def ext1_autpair(src: AutPair, dst: AutPair) -> int:
    """Cokernel dimension of the intertwining operator."""
    op = intertwining_operator(src, dst)
    coker = op.rows - rank(op)
    assert coker == op.cols - rank(op)
    return coker


def hom_dims(src: StarSumRep, dst: StarSumRep) -> Tuple[int, int]:
    """(dim Hom on the star side, dim Hom between the associated pairs)."""
    return hom_star(src, dst).dimension, hom_autpair(to_autpair(src), to_autpair(dst)).dimension


__all__ = [
    "HomSpace",
    "StarMorphism",
    "ext1_autpair",
    "hom_autpair",
    "hom_dims",
    "hom_star",
    "intertwining_operator",
]
