"""Star-sum representations, automorphism pairs and the functors between them.

A star-sum representation is a centre space ``V`` together with injections
``j_a: V_a -> V`` (a = 1..n) such that every pair of images spans ``V`` as
a direct sum. For n = 4 such data are classified by a single automorphism
``m`` of ``V_1`` without eigenvalue 1.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from ..exactlin import (
    RatMatrix,
    Singular,
    det,
    invert,
    rank,
    solve_matrix,
)

MAX_OUTER = 8


class ShapeMismatch(ValueError):
    pass


class InvalidRep(ValueError):
    pass


class BadAutPair(ValueError):
    pass


@dataclass(frozen=True)
class StarSumRep:
    dim_v: int
    maps: Tuple[RatMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not 1 <= len(self.maps) <= MAX_OUTER:
            raise ShapeMismatch(f"need 1..{MAX_OUTER} outer spaces, got {len(self.maps)}")
        if self.dim_v < 0:
            raise ShapeMismatch("negative centre dimension")
        for a, j in enumerate(self.maps, start=1):
            if j.rows != self.dim_v:
                raise ShapeMismatch(
                    f"j_{a} has {j.rows} rows but the centre has dimension {self.dim_v}"
                )

    @property
    def n(self) -> int:
        return len(self.maps)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(j.cols for j in self.maps)

    def j(self, a: int) -> RatMatrix:
        """1-based access to the structure maps."""
        return self.maps[a - 1]


@dataclass(frozen=True)
class AutPair:
    """A space of dimension ``dim`` with automorphism ``m``; 1 is not an eigenvalue."""

    dim: int
    m: RatMatrix

    def __post_init__(self):
        if self.m.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"m has shape {self.m.shape}, expected {(self.dim, self.dim)}")

    def check(self) -> None:
        if det(self.m) == 0:
            raise BadAutPair("m is not invertible")
        if det(self.m - RatMatrix.identity(self.dim)) == 0:
            raise BadAutPair("1 is an eigenvalue of m")


@dataclass
class ValidationReport:
    valid: bool
    # (a, b, det[j_a | j_b]) with 1-based indices; det is None when the
    # dimensions cannot sum to dim V.
    pairs: List[Tuple[int, int, Optional[Fraction]]] = field(default_factory=list)
    reason: str = ""

    @property
    def singular_pairs(self) -> List[Tuple[int, int]]:
        return [(a, b) for a, b, d in self.pairs if not d]


def validate(rep: StarSumRep) -> ValidationReport:
    if rep.n == 1:
        j1 = rep.j(1)
        if not j1.is_square:
            return ValidationReport(False, reason="j_1 is not square")
        d = det(j1)
        return ValidationReport(d != 0, [(1, 1, d)], "" if d else "j_1 is singular")
    pairs = []
    for a, b in combinations(range(1, rep.n + 1), 2):
        ja, jb = rep.j(a), rep.j(b)
        if ja.cols + jb.cols != rep.dim_v:
            pairs.append((a, b, None))
        else:
            pairs.append((a, b, det(RatMatrix.hstack(ja, jb))))
    bad = [(a, b) for a, b, d in pairs if not d]
    reason = "" if not bad else "no direct sum for pairs " + ", ".join(map(str, bad))
    return ValidationReport(not bad, pairs, reason)


def _require_valid(rep: StarSumRep) -> None:
    report = validate(rep)
    if not report.valid:
        raise InvalidRep(report.reason)


def graph_slope(rep: StarSumRep, k: int) -> RatMatrix:
    """The map ``V_1 -> V_2`` whose graph is ``im j_k`` in the splitting by j_1, j_2.

    Writing ``j_k = j_1 a + j_2 b`` the slope is ``b a^{-1}``; ``a`` is
    invertible because ``im j_k`` meets ``im j_2`` trivially.
    """
    split = RatMatrix.hstack(rep.j(1), rep.j(2))
    coords = solve_matrix(split, rep.j(k))
    d1 = rep.dims[0]
    a = coords.submatrix(range(d1), range(coords.cols))
    b = coords.submatrix(range(d1, coords.rows), range(coords.cols))
    return b @ invert(a)


def to_autpair(rep: StarSumRep) -> AutPair:
    if rep.n != 4:
        raise InvalidRep(f"to_autpair needs four outer spaces, got {rep.n}")
    _require_valid(rep)
    m3 = graph_slope(rep, 3)
    m4 = graph_slope(rep, 4)
    pair = AutPair(rep.dims[0], invert(m3) @ m4)
    # Equivalent to det[j_3 | j_4] != 0, which validate() has established.
    assert det(pair.m - RatMatrix.identity(pair.dim)) != 0
    return pair


def from_autpair(pair: AutPair) -> StarSumRep:
    pair.check()
    d = pair.dim
    eye, zero = RatMatrix.identity(d), RatMatrix.zeros(d, d)
    return StarSumRep(
        2 * d,
        (
            RatMatrix.vstack(eye, zero),
            RatMatrix.vstack(zero, eye),
            RatMatrix.vstack(eye, eye),
            RatMatrix.vstack(eye, pair.m),
        ),
    )


def same_image(x: RatMatrix, y: RatMatrix) -> bool:
    rx = rank(x)
    return rx == rank(y) == rank(RatMatrix.hstack(x, y))


@dataclass
class Isomorphism:
    phi: RatMatrix
    # one flag per outer index: phi carries the source subspace onto the target one
    checks: List[bool]

    @property
    def ok(self) -> bool:
        return all(self.checks)


def roundtrip_witness(rep: StarSumRep) -> Isomorphism:
    """Explicit isomorphism ``from_autpair(to_autpair(rep)) -> rep``.

    It sends ``(u, w)`` to ``j_1 u + j_2 m_3 w``.
    """
    pair = to_autpair(rep)
    model = from_autpair(pair)
    phi = RatMatrix.hstack(rep.j(1), rep.j(2) @ graph_slope(rep, 3))
    checks = [
        rank(phi) == rep.dim_v and same_image(phi @ model.j(a), rep.j(a))
        for a in range(1, 5)
    ]
    return Isomorphism(phi, checks)


@dataclass
class ClassificationResult:
    kind: str  # "vect", "vect_pair", "autpair" or "unclassified"
    dims: Tuple[int, ...] = ()
    witness: Optional[RatMatrix] = None  # m_3 : V_1 -> V_2 when n == 3
    witness_ok: Optional[bool] = None
    autpair: Optional[AutPair] = None


def classify(rep: StarSumRep) -> ClassificationResult:
    _require_valid(rep)
    if rep.n == 1:
        return ClassificationResult("vect", (rep.dims[0],))
    if rep.n == 2:
        return ClassificationResult("vect_pair", rep.dims)
    if rep.n == 3:
        m3 = graph_slope(rep, 3)
        graph = rep.j(1) + rep.j(2) @ m3
        ok = m3.is_square and det(m3) != 0 and same_image(graph, rep.j(3))
        return ClassificationResult("vect", (rep.dims[0],), m3, ok)
    if rep.n == 4:
        pair = to_autpair(rep)
        return ClassificationResult("autpair", (pair.dim,), autpair=pair)
    return ClassificationResult("unclassified", rep.dims)


def star_from_graphs(m3: RatMatrix, m4: RatMatrix) -> StarSumRep:
    """Assemble the 4-star whose third and fourth spaces are graphs of m3, m4."""
    d = m3.rows
    eye, zero = RatMatrix.identity(d), RatMatrix.zeros(d, d)
    return StarSumRep(
        2 * d,
        (
            RatMatrix.vstack(eye, zero),
            RatMatrix.vstack(zero, eye),
            RatMatrix.vstack(eye, m3),
            RatMatrix.vstack(eye, m4),
        ),
    )


def transform(rep: StarSumRep, g: RatMatrix, h: Sequence[RatMatrix] = ()) -> StarSumRep:
    """Change basis on the centre by ``g`` and on each outer space by ``h[a]``."""
    maps = []
    for a, j in enumerate(rep.maps):
        j = g @ j
        if h:
            j = j @ h[a]
        maps.append(j)
    return StarSumRep(rep.dim_v, tuple(maps))


def permute(rep: StarSumRep, order: Sequence[int]) -> StarSumRep:
    return StarSumRep(rep.dim_v, tuple(rep.maps[i] for i in order))


__all__ = [
    "AutPair",
    "BadAutPair",
    "ClassificationResult",
    "InvalidRep",
    "Isomorphism",
    "ShapeMismatch",
    "Singular",
    "StarSumRep",
    "ValidationReport",
    "classify",
    "from_autpair",
    "graph_slope",
    "permute",
    "roundtrip_witness",
    "same_image",
    "star_from_graphs",
    "to_autpair",
    "transform",
    "validate",
]
