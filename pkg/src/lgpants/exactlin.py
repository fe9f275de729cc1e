"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction` values, which are always stored in
lowest terms with a positive denominator. Matrices are immutable and kept
row-major as tuples of tuples.
"""

import math
import re
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

Rational = Fraction
Vector = Tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class LinAlgError(ValueError):
    pass


class NonSquare(LinAlgError):
    pass


class Singular(LinAlgError):
    pass


class DimensionMismatch(LinAlgError):
    pass


class NoSolution(LinAlgError):
    pass


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are refused: they carry rounding error we cannot undo.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(q)


class RatMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Iterable[Iterable], cols: Optional[int] = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def _raw(cls, data: Tuple[Tuple[Fraction, ...], ...], cols: int) -> "RatMatrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", len(data))
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "_data", data)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        zero = Fraction(0)
        return cls._raw(tuple((zero,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def column(cls, vec: Sequence) -> "RatMatrix":
        return cls([[x] for x in vec], cols=1)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RatMatrix":
        cols = [tuple(to_rational(x) for x in c) for c in columns]
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(rows)), len(cols))

    @classmethod
    def hstack(cls, *blocks: "RatMatrix") -> "RatMatrix":
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise DimensionMismatch("hstack needs equal row counts")
        data = tuple(sum((b._data[i] for b in blocks), ()) for i in range(rows))
        return cls._raw(data, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: "RatMatrix") -> "RatMatrix":
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise DimensionMismatch("vstack needs equal column counts")
        return cls._raw(sum((b._data for b in blocks), ()), cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._data]

    def entries(self) -> Tuple[Fraction, ...]:
        """Row-major flat sequence of entries."""
        return sum(self._data, ())

    def to_strings(self) -> List[List[str]]:
        return [[format_rational(x) for x in r] for r in self._data]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"RatMatrix({self.to_strings()!r})"

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(
            tuple(tuple(r[j] for r in self._data) for j in range(self.cols)), self.rows
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return RatMatrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return RatMatrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "RatMatrix":
        c = to_rational(c)
        return RatMatrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape} @ {other.shape}")
        # Integer products: row i of self is a_i / da_i, column j of other is b_j / db_j.
        left = [_scaled_ints(r) for r in self._data]
        right = [_scaled_ints(other.col(j)) for j in range(other.cols)]
        data = tuple(
            tuple(Fraction(sum(x * y for x, y in zip(a, b)), da * db) for b, db in right)
            for a, da in left
        )
        return RatMatrix._raw(data, other.cols)

    def apply(self, vec: Sequence) -> Vector:
        if len(vec) != self.cols:
            raise DimensionMismatch(f"{self.shape} applied to length {len(vec)}")
        vec = [to_rational(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(
            tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols)
        )


def _scaled_ints(vec: Sequence[Fraction]) -> Tuple[List[int], int]:
    """(integers, d) with vec = integers / d and d the lcm of the denominators."""
    d = math.lcm(*(x.denominator for x in vec)) if vec else 1
    return [x.numerator * (d // x.denominator) for x in vec], d


def _integer_rows(m: RatMatrix) -> List[List[int]]:
    """Each row scaled by the lcm of its denominators; row spaces are unchanged."""
    return [_scaled_ints(row)[0] for row in m._data]


def rref(m: RatMatrix) -> Tuple[RatMatrix, int, Tuple[int, ...]]:
    """Reduced row-echelon form by Gauss-Jordan elimination.

    The elimination runs fraction-free on integer rows, dividing each
    updated row by the gcd of its entries to keep the numbers small; rows
    are normalised to leading 1 only at the end.

    Returns ``(R, rank, pivot_columns)``.
    """
    a = _integer_rows(m)
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        candidates = [i for i in range(r, m.rows) if a[i][c] != 0]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: abs(a[i][c]))
        a[r], a[p] = a[p], a[r]
        piv_row = a[r]
        piv = piv_row[c]
        for i in range(m.rows):
            f = a[i][c]
            if i != r and f != 0:
                row = [piv * x - f * y for x, y in zip(a[i], piv_row)]
                g = math.gcd(*row)
                a[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
    out = []
    for i, row in enumerate(a):
        if i < r:
            lead = row[pivots[i]]
            out.append(tuple(Fraction(x, lead) for x in row))
        else:
            out.append(tuple(Fraction(0) for _ in row))
    return RatMatrix._raw(tuple(out), m.cols), len(pivots), tuple(pivots)


def rank(m: RatMatrix) -> int:
    return rref(m)[1]


def det(m: RatMatrix) -> Fraction:
    """Determinant via fraction-free Bareiss elimination.

    Rational input is first cleared to an integer matrix by multiplying
    each row by the lcm of its denominators, so the elimination itself runs
    on Python ints.
    """
    if not m.is_square:
        raise NonSquare(f"determinant of {m.shape} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for row in m.tolist():
        d = 1
        for x in row:
            d = d * x.denominator // _gcd(d, x.denominator)
        scale /= d
        a.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def invert(m: RatMatrix) -> RatMatrix:
    if not m.is_square:
        raise NonSquare(f"inverse of {m.shape} matrix")
    n = m.rows
    aug, rk, _ = rref(RatMatrix.hstack(m, RatMatrix.identity(n)))
    if any(aug[i, i] != 1 for i in range(n)) or rk < n:
        raise Singular("matrix is not invertible")
    return aug.submatrix(range(n), range(n, 2 * n))


def kernel_basis(m: RatMatrix) -> List[Vector]:
    """Basis of the right null space, one vector per free column."""
    r, rk, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def left_kernel_matrix(m: RatMatrix) -> RatMatrix:
    """Matrix whose rows span {y : y m = 0}; its kernel is exactly im m."""
    basis = kernel_basis(m.T)
    return RatMatrix._raw(tuple(basis), m.rows) if basis else RatMatrix.zeros(0, m.rows)


def solve(m: RatMatrix, b: Sequence) -> Vector:
    """One solution of ``m x = b``; raises :class:`NoSolution` if inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch(f"{m.shape} system with rhs of length {len(b)}")
    aug, _, pivots = rref(RatMatrix.hstack(m, RatMatrix.column(b)))
    if m.cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = aug[i, m.cols]
    return tuple(x)


def solve_matrix(m: RatMatrix, b: RatMatrix) -> RatMatrix:
    """One solution X of ``m X = b``, from a single elimination of ``[m | b]``."""
    if b.rows != m.rows:
        raise DimensionMismatch(f"{m.shape} system with rhs of shape {b.shape}")
    aug, _, pivots = rref(RatMatrix.hstack(m, b))
    if any(p >= m.cols for p in pivots):
        raise NoSolution("inconsistent linear system")
    x = [[Fraction(0)] * b.cols for _ in range(m.cols)]
    for i, p in enumerate(pivots):
        x[p] = [aug[i, m.cols + j] for j in range(b.cols)]
    return RatMatrix._raw(tuple(tuple(r) for r in x), b.cols)
