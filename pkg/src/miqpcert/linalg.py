"""Exact rational scalars, vectors, matrices, and linear solving.

Every quantity in this package is a :class:`fractions.Fraction` (always in
lowest terms, positive denominator, value equality), a vector of them, or a
matrix of them.  No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


class DimensionMismatch(ValueError):
    """Operands have incompatible dimensions."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" / "p" string (minus sign allowed)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        # tolerate the typeset minus sign in hand-written files
        return Fraction(value.replace("−", "-").strip())
    raise TypeError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True, order=True)
class QVector:
    """Immutable vector of rationals.  Zero-dimensional vectors are allowed
    (empty integer prefixes of continuous-only instances)."""

    entries: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable[RationalLike]) -> "QVector":
        return QVector(tuple(as_rational(v) for v in values))

    @staticmethod
    def zero(dim: int) -> "QVector":
        return QVector((Fraction(0),) * dim)

    @staticmethod
    def unit(index: int, dim: int) -> "QVector":
        entries = [Fraction(0)] * dim
        entries[index] = Fraction(1)
        return QVector(tuple(entries))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __getitem__(self, index: int) -> Fraction:
        return self.entries[index]

    def __add__(self, other: "QVector") -> "QVector":
        self._check_dim(other)
        return QVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check_dim(other)
        return QVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.entries))

    def scale(self, factor: RationalLike) -> "QVector":
        f = as_rational(factor)
        return QVector(tuple(a * f for a in self.entries))

    def dot(self, other: "QVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.entries)

    def concat(self, other: "QVector") -> "QVector":
        return QVector(self.entries + other.entries)

    def take(self, count: int) -> "QVector":
        return QVector(self.entries[:count])

    def drop(self, count: int) -> "QVector":
        return QVector(self.entries[count:])

    def _check_dim(self, other: "QVector") -> None:
        if len(self.entries) != len(other.entries):
            raise DimensionMismatch(f"{len(self.entries)} vs {len(other.entries)}")

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.entries) + ")"


@dataclass(frozen=True)
class QMatrix:
    """Immutable row-major rational matrix.  Zero rows are allowed (an
    unconstrained polyhedron has an empty constraint matrix)."""

    entries: tuple[tuple[Fraction, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        if self.cols < 0:
            raise ValueError("cols must be non-negative")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged matrix")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RationalLike]], cols: int | None = None) -> "QMatrix":
        converted = tuple(tuple(as_rational(v) for v in row) for row in rows)
        if cols is None:
            if not converted:
                raise ValueError("cols required for an empty matrix")
            cols = len(converted[0])
        return QMatrix(converted, cols)

    @staticmethod
    def zero(rows: int, cols: int) -> "QMatrix":
        return QMatrix(tuple((Fraction(0),) * cols for _ in range(rows)), cols)

    @staticmethod
    def identity(dim: int) -> "QMatrix":
        return QMatrix(
            tuple(tuple(Fraction(1 if i == j else 0) for j in range(dim)) for i in range(dim)),
            dim,
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), self.cols)

    def row(self, index: int) -> QVector:
        return QVector(self.entries[index])

    def column(self, index: int) -> QVector:
        return QVector(tuple(row[index] for row in self.entries))

    def transpose(self) -> "QMatrix":
        return QMatrix(
            tuple(tuple(row[j] for row in self.entries) for j in range(self.cols)),
            len(self.entries),
        )

    def matvec(self, x: QVector) -> QVector:
        if x.dim != self.cols:
            raise DimensionMismatch(f"matrix cols {self.cols} vs vector dim {x.dim}")
        return QVector(
            tuple(sum((a * b for a, b in zip(row, x.entries)), Fraction(0)) for row in self.entries)
        )

    def is_symmetric(self) -> bool:
        if len(self.entries) != self.cols:
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.cols)
            for j in range(i + 1, self.cols)
        )

    def stack(self, other: "QMatrix") -> "QMatrix":
        if other.cols != self.cols:
            raise DimensionMismatch("column counts differ")
        return QMatrix(self.entries + other.entries, self.cols)

    def __str__(self) -> str:
        return "\n".join("[" + "  ".join(str(v) for v in row) + "]" for row in self.entries)


# ---------------------------------------------------------------------------
# encoding size


@dataclass(frozen=True, order=True)
class EncodingSize:
    """Bit count of the pinned binary encoding measure."""

    bits: int

    def __add__(self, other: "EncodingSize") -> "EncodingSize":
        return EncodingSize(self.bits + other.bits)


def _header_bits(dim: int) -> int:
    # non-negative integer header: sign bit + magnitude bits
    return 1 + dim.bit_length()


def _rational_bits(q: Fraction) -> int:
    # 1 + ceil(log2(|p|+1)) + ceil(log2(den+1)); bit_length gives both ceilings
    return 1 + abs(q.numerator).bit_length() + q.denominator.bit_length()


def encoding_size(obj: Union[RationalLike, QVector, QMatrix]) -> EncodingSize:
    """Binary encoding size: per-entry rational sizes plus dimension headers."""
    if isinstance(obj, QVector):
        return EncodingSize(_header_bits(obj.dim) + sum(_rational_bits(e) for e in obj.entries))
    if isinstance(obj, QMatrix):
        total = _header_bits(obj.rows) + _header_bits(obj.cols)
        total += sum(_rational_bits(v) for row in obj.entries for v in row)
        return EncodingSize(total)
    return EncodingSize(_rational_bits(as_rational(obj)))


# ---------------------------------------------------------------------------
# exact linear solving


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution set of M x = rhs: particular point plus nullspace basis.

    The solution is unique exactly when ``nullspace`` is empty.
    """

    particular: QVector
    nullspace: tuple[QVector, ...]

    @property
    def is_unique(self) -> bool:
        return not self.nullspace


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form; pivots chosen as the first nonzero
    entry in column order (deterministic).  Returns (rows, pivot columns)."""
    pivot_cols: list[int] = []
    pivot_row = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        target = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col] != 0:
                target = r
                break
        if target is None:
            continue
        rows[pivot_row], rows[target] = rows[target], rows[pivot_row]
        inv = 1 / rows[pivot_row][col]
        rows[pivot_row] = [v * inv for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivot_cols


def solve_linear_system(m: QMatrix, rhs: QVector) -> LinearSolution | None:
    """Exact solution set of M x = rhs, or None when inconsistent.

    The particular solution sets all free variables to zero; the nullspace
    basis has one vector per free variable (that variable set to one).
    Every returned vector is verified by substitution.
    """
    if m.rows != rhs.dim:
        raise DimensionMismatch(f"matrix rows {m.rows} vs rhs dim {rhs.dim}")
    n = m.cols
    aug = [list(row) + [rhs[i]] for i, row in enumerate(m.entries)]
    if not aug:
        solution = LinearSolution(QVector.zero(n), tuple(QVector.unit(j, n) for j in range(n)))
        return solution
    reduced, pivot_cols = _echelon(aug)
    pivot_set = set(pivot_cols)
    if n in pivot_set:
        return None  # pivot in the rhs column: inconsistent
    for row in reduced:
        if all(v == 0 for v in row[:n]) and row[n] != 0:
            return None
    particular = [Fraction(0)] * n
    for r, col in enumerate(pivot_cols):
        particular[col] = reduced[r][n]
    free_cols = [j for j in range(n) if j not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            vec[col] = -reduced[r][free]
        basis.append(QVector(tuple(vec)))
    solution = LinearSolution(QVector(tuple(particular)), tuple(basis))
    assert m.matvec(solution.particular) == rhs
    assert all(m.matvec(v).is_zero() for v in solution.nullspace)
    return solution


def rank(m: QMatrix) -> int:
    """Exact rank via elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [list(row) for row in m.entries]
    _, pivot_cols = _echelon(rows)
    return len(pivot_cols)


def nullspace_basis(m: QMatrix) -> tuple[QVector, ...]:
    solution = solve_linear_system(m, QVector.zero(m.rows))
    assert solution is not None
    return solution.nullspace


# ---------------------------------------------------------------------------
# exact integer square roots of rationals


def isqrt_ceil(q: Fraction) -> int:
    """Smallest non-negative integer s with s*s >= q."""
    if q < 0:
        raise ValueError("negative radicand")
    num, den = q.numerator, q.denominator
    s = math.isqrt((num + den - 1) // den)
    while s * s * den < num:
        s += 1
    while s > 0 and (s - 1) * (s - 1) * den >= num:
        s -= 1
    return s
