"""Exact linear algebra over the rationals.

Every predicate downstream (membership, rank, direct sum) is an exact zero
test, so all arithmetic uses Fraction and floating point never appears.
Subspaces are stored canonically: the RREF of any spanning set with each row
rescaled to coprime integers.  Two equal subspaces therefore compare equal as
plain tuples, which is what the lattice deduplication relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(entries: Iterable) -> tuple[Fraction, ...]:
    return tuple(_frac(x) for x in entries)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dot product needs equal lengths")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable matrix of Fractions; cols is stored so 0-row matrices keep a width."""

    entries: tuple[tuple[Fraction, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "entries",
            tuple(tuple(_frac(x) for x in row) for row in self.entries))
        if self.cols < 0:
            raise ValueError("negative column count")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(
                    f"row of length {len(row)} in a {self.cols}-column matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "RationalMatrix":
        if not self.entries:
            return RationalMatrix(((),) * self.cols, 0)
        return RationalMatrix(tuple(zip(*self.entries)), self.rows)

    def times_vector(self, v: Sequence) -> tuple[Fraction, ...]:
        w = vector(v)
        if len(w) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(dot(row, w) for row in self.entries)

    def times(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = other.transpose().entries
        return RationalMatrix(
            tuple(tuple(dot(r, c) for c in cols) for r in self.entries),
            other.cols)


def matrix(rows: Iterable[Iterable], cols: int | None = None) -> RationalMatrix:
    rs = tuple(tuple(_frac(x) for x in row) for row in rows)
    if cols is None:
        if not rs:
            raise ValueError("cols is required for a matrix with no rows")
        cols = len(rs[0])
    return RationalMatrix(rs, cols)


def identity(n: int) -> RationalMatrix:
    return RationalMatrix(
        tuple(tuple(Fraction(1 if i == j else 0) for j in range(n))
              for i in range(n)), n)


def vstack(top: RationalMatrix, bottom: RationalMatrix) -> RationalMatrix:
    if top.cols != bottom.cols:
        raise ValueError("column counts differ")
    return RationalMatrix(top.entries + bottom.entries, top.cols)


def rref(M: RationalMatrix) -> tuple[RationalMatrix, tuple[int, ...]]:
    """Reduced row echelon form of M plus the 0-based pivot columns."""
    rows = [list(row) for row in M.entries]
    pivots: list[int] = []
    pr = 0
    for c in range(M.cols):
        hit = next((i for i in range(pr, len(rows)) if rows[i][c] != 0), None)
        if hit is None:
            continue
        rows[pr], rows[hit] = rows[hit], rows[pr]
        pv = rows[pr][c]
        if pv != 1:
            rows[pr] = [x / pv for x in rows[pr]]
        for i, row in enumerate(rows):
            if i != pr and row[c] != 0:
                f = row[c]
                rows[i] = [a - f * b for a, b in zip(row, rows[pr])]
        pivots.append(c)
        pr += 1
        if pr == len(rows):
            break
    return RationalMatrix(tuple(tuple(r) for r in rows), M.cols), tuple(pivots)


def rank(M: RationalMatrix) -> int:
    return len(rref(M)[1])


def primitive_vector(v: Sequence) -> tuple[tuple[Fraction, ...], Fraction]:
    """Rescale a nonzero rational vector to coprime integer entries with a
    positive first nonzero entry.  Returns (scaled, c) where scaled = c * v."""
    w = vector(v)
    if all(x == 0 for x in w):
        raise ValueError("cannot rescale the zero vector")
    den = lcm(*(x.denominator for x in w))
    ints = [x.numerator * (den // x.denominator) for x in w]
    g = gcd(*(abs(y) for y in ints))
    c = Fraction(den, g)
    if next(x for x in w if x != 0) < 0:
        c = -c
    return tuple(x * c for x in w), c


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n held by its canonical basis matrix.

    Equality of Subspace values is equality of sets: canonicalization makes
    the representative unique, so the derived dataclass __eq__ is correct.
    """

    ambient_dim: int
    basis: RationalMatrix

    def __post_init__(self) -> None:
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width does not match the ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.rows


def canonical_subspace(M: RationalMatrix) -> Subspace:
    """Row space of M in canonical form (RREF rows made coprime integers)."""
    R, pivots = rref(M)
    rows = tuple(primitive_vector(R.entries[i])[0] for i in range(len(pivots)))
    return Subspace(M.cols, RationalMatrix(rows, M.cols))


def span(vectors: Iterable[Iterable], ambient_dim: int) -> Subspace:
    return canonical_subspace(matrix(vectors, cols=ambient_dim))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, RationalMatrix((), n))


def full_space(n: int) -> Subspace:
    return canonical_subspace(identity(n))


def kernel(M: RationalMatrix) -> Subspace:
    """The solution space {v : Mv = 0}, canonicalized."""
    R, pivots = rref(M)
    taken = set(pivots)
    rows = []
    for f in range(M.cols):
        if f in taken:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R.entries[i][f]
        rows.append(tuple(v))
    return canonical_subspace(RationalMatrix(tuple(rows), M.cols))


def _bareiss_int(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            hit = next((i for i in range(c + 1, n) if a[i][c] != 0), None)
            if hit is None:
                return 0
            a[c], a[hit] = a[hit], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return sign * a[-1][-1]


def det(M: RationalMatrix) -> Fraction:
    """Determinant via integer-preserving elimination; the 0x0 matrix gives 1."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    scale = 1
    grid = []
    for row in M.entries:
        den = lcm(*(x.denominator for x in row))
        scale *= den
        grid.append([x.numerator * (den // x.denominator) for x in row])
    return Fraction(_bareiss_int(grid), scale)


def minor(M: RationalMatrix, row_set: Sequence[int],
          col_set: Sequence[int]) -> Fraction:
    """Determinant of the submatrix picked by 1-based row and column lists.

    Both lists must be strictly increasing; empty lists give the empty minor 1.
    """
    if len(row_set) != len(col_set):
        raise ValueError("row and column selections differ in size")
    for name, idx, bound in (("row", row_set, M.rows),
                             ("column", col_set, M.cols)):
        if any(not 1 <= i <= bound for i in idx):
            raise ValueError(f"{name} index out of range")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{name} indices must be strictly increasing")
    if not row_set:
        return Fraction(1)
    sub = RationalMatrix(
        tuple(tuple(M.entries[i - 1][j - 1] for j in col_set) for i in row_set),
        len(col_set))
    return det(sub)


def orth_complement(U: Subspace) -> Subspace:
    return kernel(U.basis)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return kernel(vstack(orth_complement(U).basis, orth_complement(V).basis))


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return canonical_subspace(vstack(U.basis, V.basis))


def intersection_dim(U: Subspace, V: Subspace) -> int:
    """dim of the intersection via the dimension formula, without building it."""
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return U.dim + V.dim - rank(vstack(U.basis, V.basis))


def is_direct_sum_full(U: Subspace, V: Subspace) -> bool:
    """True iff U + V is direct and fills the whole ambient space."""
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if U.dim + V.dim != U.ambient_dim:
        return False
    return det(vstack(U.basis, V.basis)) != 0


def contains_vector(U: Subspace, v: Sequence) -> bool:
    w = vector(v)
    if len(w) != U.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    return rank(vstack(U.basis, RationalMatrix((w,), U.ambient_dim))) == U.dim


def is_subspace_of(U: Subspace, V: Subspace) -> bool:
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return all(contains_vector(V, row) for row in U.basis.entries)


def _solve_invertible(G: RationalMatrix,
                      rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    aug = RationalMatrix(
        tuple(row + (rhs[i],) for i, row in enumerate(G.entries)), G.cols + 1)
    R, pivots = rref(aug)
    if pivots != tuple(range(G.cols)):
        raise ValueError("matrix is singular")
    return tuple(R.entries[i][-1] for i in range(G.cols))


def project(U: Subspace, v: Sequence) -> tuple[Fraction, ...]:
    """Orthogonal projection of v onto U, computed exactly.

    Uses B^T (B B^T)^-1 B v for the basis matrix B; the Gram matrix is
    invertible because basis rows are independent.  The zero subspace
    projects everything to the zero vector.
    """
    w = vector(v)
    if len(w) != U.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    if U.dim == 0:
        return tuple(Fraction(0) for _ in w)
    B = U.basis
    G = B.times(B.transpose())
    y = _solve_invertible(G, B.times_vector(w))
    return B.transpose().times_vector(y)
