"""Exact linear algebra over the rationals and rational function fields.

Matrices carry a field tag: either the rationals (Fraction entries) or
the field of rational functions in a fixed variable tuple.  Elimination
is fraction-free: each row is first scaled into the underlying domain
(integers, or integer-coefficient polynomials made primitive), then a
one-step division-free sweep keeps every intermediate entry a minor of
the scaled matrix, avoiding expression swell.  Row scaling changes
neither row space, kernel, rank, nor reduced echelon form, so results
are exact and canonical.

Subspaces are stored by their reduced-row-echelon basis; since that
basis is unique for a given row space, value equality of subspaces is
entrywise equality of bases.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import AmbientMismatch, ShapeMismatch
from .polyring import Polynomial, RationalFunction

Entry = Union[Fraction, RationalFunction]


class RationalField:
    """Field tag for Fraction entries."""

    name = "QQ"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, RationalFunction) and value.is_constant():
            return value.as_scalar()
        raise TypeError(f"cannot coerce {value!r} into the rationals")

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __repr__(self) -> str:
        return "RationalField()"


class FunctionField:
    """Field tag for rational functions in a fixed variable tuple."""

    def __init__(self, variables: Sequence[str]):
        self.variables = tuple(variables)
        self.name = f"QQ({', '.join(self.variables)})"

    def zero(self) -> RationalFunction:
        return RationalFunction.from_scalar(self.variables, 0)

    def one(self) -> RationalFunction:
        return RationalFunction.from_scalar(self.variables, 1)

    def coerce(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            if value.variables != self.variables:
                raise TypeError(
                    f"rational function over {value.variables}, field over {self.variables}"
                )
            return value
        if isinstance(value, Polynomial):
            if value.variables != self.variables:
                raise TypeError(
                    f"polynomial over {value.variables}, field over {self.variables}"
                )
            return RationalFunction(value)
        if isinstance(value, (int, Fraction)):
            return RationalFunction.from_scalar(self.variables, value)
        raise TypeError(f"cannot coerce {value!r} into {self.name}")

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionField) and self.variables == other.variables

    def __repr__(self) -> str:
        return f"FunctionField({self.variables})"


def detect_field(rows: Iterable[Iterable]) -> Union[RationalField, FunctionField]:
    for row in rows:
        for entry in row:
            if isinstance(entry, RationalFunction):
                return FunctionField(entry.variables)
            if isinstance(entry, Polynomial):
                return FunctionField(entry.variables)
    return RationalField()


class ExactMatrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("rows", "field", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], field=None, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if field is None:
            field = detect_field(rows)
        if rows:
            width = len(rows[0])
            for r in rows:
                if len(r) != width:
                    raise ShapeMismatch("ragged rows in matrix")
            if ncols is not None and ncols != width:
                raise ShapeMismatch(f"declared {ncols} columns, rows have {width}")
            ncols = width
        elif ncols is None:
            ncols = 0
        coerced = tuple(tuple(field.coerce(e) for e in r) for r in rows)
        object.__setattr__(self, "rows", coerced)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(coerced))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    def __getitem__(self, key) -> Entry:
        i, j = key
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            field=self.field, ncols=self.nrows,
        )

    def stack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise ShapeMismatch(f"stacking {self.ncols} and {other.ncols} columns")
        return ExactMatrix(list(self.rows) + list(other.rows),
                           field=self.field, ncols=self.ncols)

    def submatrix_rows(self, indices: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([self.rows[i] for i in indices],
                           field=self.field, ncols=self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return all(a == b for ra, rb in zip(self.rows, other.rows)
                   for a, b in zip(ra, rb))

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field.name})"


# -- domain scaling ----------------------------------------------------------


def _scale_row_rational(row: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Clear denominators and content; returns (integer row, multiplier)."""
    lcm = 1
    for c in row:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in row]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
        multiplier = Fraction(lcm, g)
    else:
        multiplier = Fraction(lcm)
    return ints, multiplier


def _scale_row_function(row: Sequence[RationalFunction]) -> tuple[list[Polynomial], object]:
    """Clear polynomial denominators and rational content from a row."""
    if not row:
        return [], Fraction(1)
    variables = row[0].variables
    one = Polynomial.constant(variables, 1)
    common = one
    seen: list[Polynomial] = []
    for e in row:
        den = e.denominator
        if den == one or any(den == s for s in seen):
            continue
        seen.append(den)
        common = common * den
    polys = [e.numerator * common.exact_div(e.denominator) for e in row]
    content = Fraction(0)
    for p in polys:
        c = p.content()
        content = c if not content else Fraction(
            math.gcd(content.numerator, c.numerator),
            (content.denominator * c.denominator
             // math.gcd(content.denominator, c.denominator)),
        )
    if content and content != 1:
        polys = [p / content for p in polys]
    return polys, (common, content)


def _int_exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert not r, "fraction-free elimination divisibility failed"
    return q


def _poly_exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    return a.exact_div(b)


def _forward_eliminate(work: list[list], one, exact_div) -> tuple[list[int], int]:
    """One-step fraction-free forward elimination, in place.

    Returns (pivot column list, sign of the row permutation).  After the
    sweep, row k has its pivot at pivots[k] and zeros below every pivot.
    """
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots: list[int] = []
    sign = 1
    prev = one
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if work[i][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            work[r], work[pivot_row] = work[pivot_row], work[r]
            sign = -sign
        pivot = work[r][c]
        for i in range(r + 1, nrows):
            row_i = work[i]
            head = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = exact_div(pivot * row_i[j] - head * work[r][j], prev)
            row_i[c] = head * 0
        prev = pivot
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots, sign


def _domain_rows(matrix: ExactMatrix):
    """Scaled domain copy of the rows plus the domain's helpers."""
    if isinstance(matrix.field, RationalField):
        work = [_scale_row_rational(r)[0] for r in matrix.rows]
        return work, 1, _int_exact_div
    work = [_scale_row_function(r)[0] for r in matrix.rows]
    one = Polynomial.constant(matrix.field.variables, 1)
    return work, one, _poly_exact_div


class RrefResult:
    __slots__ = ("matrix", "rank", "pivot_columns")

    def __init__(self, matrix: ExactMatrix, rank: int, pivot_columns: tuple[int, ...]):
        self.matrix = matrix
        self.rank = rank
        self.pivot_columns = pivot_columns


def rref(matrix: ExactMatrix) -> RrefResult:
    """Reduced row echelon form, exact over the matrix's field.

    The returned matrix has the same shape, with zero rows at the
    bottom, each pivot equal to one, and zeros above and below pivots.
    """
    field = matrix.field
    if matrix.nrows == 0 or matrix.ncols == 0:
        return RrefResult(matrix, 0, ())
    work, one, exact_div = _domain_rows(matrix)
    pivots, _ = _forward_eliminate(work, one, exact_div)
    rank = len(pivots)
    rows = [[field.coerce(e) for e in work[i]] for i in range(rank)]
    for k in range(rank - 1, -1, -1):
        pc = pivots[k]
        pivot = rows[k][pc]
        rows[k] = [e / pivot for e in rows[k]]
        for i in range(k):
            factor = rows[i][pc]
            if factor:
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[k])]
    zero = field.zero()
    for _ in range(matrix.nrows - rank):
        rows.append([zero] * matrix.ncols)
    return RrefResult(ExactMatrix(rows, field=field, ncols=matrix.ncols),
                      rank, tuple(pivots))


def rank(matrix: ExactMatrix) -> int:
    if matrix.nrows == 0 or matrix.ncols == 0:
        return 0
    work, one, exact_div = _domain_rows(matrix)
    pivots, _ = _forward_eliminate(work, one, exact_div)
    return len(pivots)


def determinant(matrix: ExactMatrix) -> Entry:
    """Determinant of a square matrix, exact over the matrix's field."""
    if matrix.nrows != matrix.ncols:
        raise ShapeMismatch(f"determinant of {matrix.nrows}x{matrix.ncols} matrix")
    field = matrix.field
    if matrix.nrows == 0:
        return field.one()
    if isinstance(field, RationalField):
        scaled = [_scale_row_rational(r) for r in matrix.rows]
        work = [s[0] for s in scaled]
        multiplier = Fraction(1)
        for _, m in scaled:
            multiplier *= m
        one, exact_div = 1, _int_exact_div
    else:
        work = []
        multiplier = field.one()
        for r in matrix.rows:
            polys, (common, content) = _scale_row_function(r)
            work.append(polys)
            scale = RationalFunction(common)
            if content:
                scale = scale / content
            multiplier = multiplier * scale
        one, exact_div = Polynomial.constant(field.variables, 1), _poly_exact_div
    pivots, sign = _forward_eliminate(work, one, exact_div)
    if len(pivots) < matrix.nrows:
        return field.zero()
    det = field.coerce(work[-1][pivots[-1]])
    if sign < 0:
        det = -det
    return det / multiplier


class Subspace:
    """Linear subspace of a coordinate space, stored by its canonical basis.

    The basis rows are the nonzero rows of a reduced row echelon form,
    which are unique for the row space; equality is therefore entrywise.
    """

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence], field=None):
        matrix = ExactMatrix(basis, field=field, ncols=ambient_dim if not basis else None)
        if basis and matrix.ncols != ambient_dim:
            raise AmbientMismatch(
                f"basis vectors of length {matrix.ncols} in ambient dimension {ambient_dim}"
            )
        reduced = rref(matrix)
        rows = reduced.matrix.rows[: reduced.rank]
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", rows)
        object.__setattr__(self, "field", matrix.field)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient_dim: int, field=None) -> "Subspace":
        return cls(ambient_dim, [], field=field)

    @classmethod
    def full(cls, ambient_dim: int, field=None) -> "Subspace":
        field = field or RationalField()
        one, zero = field.one(), field.zero()
        basis = [[one if i == j else zero for j in range(ambient_dim)]
                 for i in range(ambient_dim)]
        return cls(ambient_dim, basis, field=field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def basis_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.basis, field=self.field, ncols=self.ambient_dim)

    def contains_vector(self, vector: Sequence) -> bool:
        if len(vector) != self.ambient_dim:
            raise AmbientMismatch(
                f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}"
            )
        stacked = ExactMatrix(list(self.basis) + [list(vector)],
                              field=self.field, ncols=self.ambient_dim)
        return rank(stacked) == self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return all(a == b for ra, rb in zip(self.basis, other.basis)
                   for a, b in zip(ra, rb))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def row_space(matrix: ExactMatrix) -> Subspace:
    reduced = rref(matrix)
    return Subspace(matrix.ncols, reduced.matrix.rows[: reduced.rank],
                    field=matrix.field)


def kernel_basis(matrix: ExactMatrix) -> Subspace:
    """Right kernel {v : M v = 0} with canonical echelon basis."""
    reduced = rref(matrix)
    pivots = set(reduced.pivot_columns)
    field = matrix.field
    zero, one = field.zero(), field.one()
    vectors = []
    pivot_list = list(reduced.pivot_columns)
    for free_col in range(matrix.ncols):
        if free_col in pivots:
            continue
        v = [zero] * matrix.ncols
        v[free_col] = one
        for i, pc in enumerate(pivot_list):
            v[pc] = -reduced.matrix[i, free_col]
        vectors.append(v)
    return Subspace(matrix.ncols, vectors, field=field)


def span_contains(outer: Subspace, inner: Subspace) -> bool:
    """True when every vector of `inner` lies in `outer`."""
    if outer.ambient_dim != inner.ambient_dim:
        raise AmbientMismatch(
            f"ambient dimensions {outer.ambient_dim} vs {inner.ambient_dim}"
        )
    if inner.is_zero:
        return True
    stacked = ExactMatrix(list(outer.basis) + list(inner.basis),
                          field=outer.field, ncols=outer.ambient_dim)
    return rank(stacked) == outer.dim
