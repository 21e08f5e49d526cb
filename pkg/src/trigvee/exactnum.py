"""Exact rational scalars and dense rational matrix algebra.

Everything in this module works over arbitrary-precision rationals
(`fractions.Fraction`); no operation ever rounds.  Matrices are small
(a dozen rows at most in practice), so plain Gaussian elimination with
exact pivoting is used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix

# The exact scalar type.  Fraction keeps values in lowest terms with a
# positive denominator, which is exactly the normalization we rely on
# for equality tests.
Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, strings like '-3/7' and Fractions to an exact Rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RatMatrix:
    """Immutable dense matrix with Rational entries (row-major)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(as_rational(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.entries))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape mismatch in addition")
        return RatMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch("shape mismatch in subtraction")
        return RatMatrix(
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix([[c * x for x in row] for row in self.entries])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("shape mismatch in product")
        cols = other.transpose().entries
        return RatMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def mat_vec(self, v: Sequence) -> tuple[Fraction, ...]:
        v = tuple(as_rational(x) for x in v)
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), Fraction(0))

    def det(self) -> Fraction:
        """Determinant by exact Gaussian elimination."""
        if not self.is_square():
            raise DimensionMismatch("determinant of non-square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for r in range(c + 1, n):
                if m[r][c] == 0:
                    continue
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return det

    def charpoly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial coefficients (monic, highest degree first).

        Uses the Faddeev-LeVerrier recursion, which stays in exact rational
        arithmetic.
        """
        if not self.is_square():
            raise DimensionMismatch("characteristic polynomial of non-square matrix")
        n = self.rows
        coeffs = [Fraction(1)]
        mk = RatMatrix.identity(n)
        for k in range(1, n + 1):
            mk = self @ mk
            ck = -mk.trace() / k
            coeffs.append(ck)
            if k < n:
                mk = mk + RatMatrix.identity(n).scale(ck)
        return tuple(coeffs)


def mat_inverse(m: RatMatrix) -> RatMatrix:
    """Exact inverse via Gauss-Jordan; raises SingularMatrix when det = 0."""
    if not m.is_square():
        raise DimensionMismatch("inverse of non-square matrix")
    n = m.rows
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.entries)]
    for c in range(n):
        piv = next((r for r in range(c, n) if work[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        work[c], work[piv] = work[piv], work[c]
        inv = 1 / work[c][c]
        work[c] = [x * inv for x in work[c]]
        for r in range(n):
            if r != c and work[r][c] != 0:
                f = work[r][c]
                work[r] = [a - f * b for a, b in zip(work[r], work[c])]
    return RatMatrix([row[n:] for row in work])


def mat_adjugate_det(m: RatMatrix) -> tuple[RatMatrix, Fraction]:
    """Adjugate and determinant, defined for every square matrix.

    Satisfies m @ adj = adj @ m = det * identity exactly, including in the
    singular case (where the cofactor definition is used directly).
    """
    if not m.is_square():
        raise DimensionMismatch("adjugate of non-square matrix")
    n = m.rows
    d = m.det()
    if n == 1:
        return RatMatrix([[Fraction(1)]]), d
    if d != 0:
        return mat_inverse(m).scale(d), d
    # Singular: adj[j][i] = (-1)^(i+j) * minor(i, j)
    adj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = RatMatrix(
                [
                    [m.entries[r][c] for c in range(n) if c != j]
                    for r in range(n)
                    if r != i
                ]
            )
            sign = -1 if (i + j) % 2 else 1
            adj[j][i] = sign * minor.det()
    return RatMatrix(adj), d


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [[as_rational(x) for x in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of the right kernel {v : m v = 0}."""
    reduced, pivots = rref(m.entries)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        basis.append(tuple(v))
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def _integer_hnf(mat: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix (zero rows dropped).

    Pivots are positive, entries below pivots are zero, entries above are
    reduced into [0, pivot).
    """
    work = [list(r) for r in mat if any(r)]
    if not work:
        return []
    nrows, ncols = len(work), len(work[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, nrows) if work[i][c] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda i: abs(work[i][c]))
            if work[piv][c] < 0:
                work[piv] = [-x for x in work[piv]]
            p = work[piv][c]
            for i in nz:
                if i == piv:
                    continue
                q = work[i][c] // p
                if q:
                    work[i] = [a - q * b for a, b in zip(work[i], work[piv])]
        nz = [i for i in range(r, nrows) if work[i][c] != 0]
        if not nz:
            continue
        work[r], work[nz[0]] = work[nz[0]], work[r]
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == nrows:
            break
    return work[:r]


def hnf_basis(rows: Sequence[Sequence]) -> tuple[tuple[tuple[Fraction, ...], ...], int]:
    """Basis of the additive group generated by the given rational rows.

    Denominators are cleared by their LCM, the integer rows are put in
    Hermite normal form, and the result is rescaled.  Every input row has
    integer coordinates in the returned basis, and the basis generates the
    same group over the integers as the input.
    """
    data = [tuple(as_rational(x) for x in row) for row in rows]
    if not data:
        raise DimensionMismatch("need at least one row")
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise DimensionMismatch("ragged rows")
    den = 1
    for row in data:
        for x in row:
            den = lcm(den, x.denominator)
    imat = [[int(x * den) for x in row] for row in data]
    hnf = _integer_hnf(imat)
    basis = tuple(tuple(Fraction(v, den) for v in row) for row in hnf)
    return basis, len(basis)


def lattice_coordinates(
    basis: Sequence[Sequence[Fraction]], v: Sequence[Fraction]
) -> tuple[int, ...] | None:
    """Integer coordinates of v in an echelon basis, or None if v is outside.

    The basis must be in echelon form with strictly increasing pivot columns
    (as produced by hnf_basis).
    """
    work = [as_rational(x) for x in v]
    coords: list[int] = []
    for b in basis:
        p = next((j for j, x in enumerate(b) if x != 0), None)
        if p is None:
            return None
        q = work[p] / b[p]
        if q.denominator != 1:
            return None
        coords.append(int(q))
        work = [a - q * bb for a, bb in zip(work, b)]
    if any(work):
        return None
    return tuple(coords)
