"""Jet (Taylor) matrices, osculating dimensions, and kernel chains.

The order-m jet matrix of a parameterized projective variety has one row
per divided derivative D_I, |I| <= m, in degree-major order, and one
column per homogeneous coordinate function.  Its rank at a point is
s(m) + 1 where s(m) is the projective dimension of the m-th osculating
space; its right kernel K_m consists of the hyperplanes osculating to
order m.  Implicit complete intersections enter through a truncated
power-series chart solved at a smooth rational point.
"""

from __future__ import annotations

import itertools
import random
import warnings
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    ChainBroken,
    DenominatorVanishes,
    DomainError,
    InvariantViolation,
    NotHomogeneous,
    PointNotOnVariety,
    SingularPoint,
    TruncationOrderExceeded,
)
from .exactla import (
    ExactMatrix,
    FunctionField,
    RationalField,
    Subspace,
    kernel_basis,
    rank,
    row_space,
    span_contains,
)
from .polyring import (
    Exponents,
    Polynomial,
    RationalFunction,
    multi_index_factorial,
    multi_indices_upto,
    solve_series_system,
    truncated_compose,
)
from .polyring.binform import _fraction_determinant

DEFAULT_SEED = 104729


class NonImmersivePoint(UserWarning):
    """First-order jet matrix drops rank at the evaluation point."""


def _coerce_coordinate(value, params: tuple[str, ...]) -> RationalFunction:
    if isinstance(value, RationalFunction):
        if value.variables != params:
            raise DomainError(
                f"coordinate over {value.variables}, parameters are {params}"
            )
        return value
    if isinstance(value, Polynomial):
        if value.variables != params:
            raise DomainError(
                f"coordinate over {value.variables}, parameters are {params}"
            )
        return RationalFunction(value)
    if isinstance(value, (int, Fraction)):
        return RationalFunction.from_scalar(params, value)
    raise TypeError(f"cannot use {value!r} as a coordinate function")


class Parameterization:
    """Projective variety given by N+1 coordinate functions of r parameters."""

    __slots__ = ("params", "coords", "label", "truncated_order")

    def __init__(self, params: Sequence[str], coords: Sequence,
                 label: str | None = None, truncated_order: int | None = None):
        params = tuple(params)
        if not params:
            raise DomainError("at least one parameter is required")
        if len(set(params)) != len(params):
            raise DomainError(f"duplicate parameter names in {params}")
        coords = tuple(_coerce_coordinate(c, params) for c in coords)
        if len(coords) < len(params) + 1:
            raise DomainError(
                f"{len(coords)} coordinates cannot immerse {len(params)} parameters"
            )
        if all(c.is_zero for c in coords):
            raise DomainError("all coordinate functions are zero")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "truncated_order", truncated_order)

    def __setattr__(self, name, value):
        raise AttributeError("Parameterization is immutable")

    @property
    def source_dim(self) -> int:
        return len(self.params)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.coords)

    def __repr__(self) -> str:
        name = self.label or "parameterization"
        return (f"Parameterization({name}: P^{self.source_dim} -> "
                f"P^{self.ambient_dim}, {len(self.coords)} coords)")


def _check_jet_order(f: Parameterization, m: int) -> None:
    if m < 0:
        raise DomainError(f"jet order must be nonnegative, got {m}")
    if f.truncated_order is not None and m > f.truncated_order - 1:
        raise TruncationOrderExceeded(
            f"order-{m} jets of a series truncated at degree {f.truncated_order} "
            f"are only reliable for m <= {f.truncated_order - 1}"
        )


def _derivative_rows(f: Parameterization, indices: list[Exponents]):
    """D_I of every coordinate, one list per multi-index."""
    rows = []
    if f.is_polynomial():
        polys = [c.numerator for c in f.coords]
        for I in indices:
            rows.append([p.hasse_derivative(I) for p in polys])
        return rows
    # Iterated first partials cached along the degree-major enumeration,
    # then divided by I! to get the Hasse operator.
    cache: dict[Exponents, list[RationalFunction]] = {}
    zero_index = (0,) * f.source_dim
    cache[zero_index] = list(f.coords)
    for I in indices:
        if I not in cache:
            k = next(i for i, e in enumerate(I) if e)
            parent = I[:k] + (I[k] - 1,) + I[k + 1:]
            cache[I] = [entry.partial(k) for entry in cache[parent]]
        factorial = multi_index_factorial(I)
        if factorial == 1:
            rows.append(list(cache[I]))
        else:
            scale = Fraction(1, factorial)
            rows.append([entry * scale for entry in cache[I]])
    return rows


class JetMatrix:
    """Matrix of divided derivatives D_I x_j, |I| <= order."""

    __slots__ = ("order", "row_indices", "matrix", "point", "params")

    def __init__(self, order: int, row_indices: tuple[Exponents, ...],
                 matrix: ExactMatrix, point, params: tuple[str, ...]):
        self.order = order
        self.row_indices = row_indices
        self.matrix = matrix
        self.point = point
        self.params = params

    def top_block_indices(self) -> list[int]:
        """Row positions of the |I| = order block."""
        return [i for i, I in enumerate(self.row_indices) if sum(I) == self.order]

    def top_block(self) -> ExactMatrix:
        """The |I| = order rows, realizing the symmetric-power quotient."""
        return self.matrix.submatrix_rows(self.top_block_indices())

    def row_for(self, index: Exponents) -> tuple:
        return self.matrix.row(self.row_indices.index(tuple(index)))

    def __repr__(self) -> str:
        where = "generic" if self.point is None else str(self.point)
        return f"JetMatrix(order {self.order}, {self.matrix.nrows}x{self.matrix.ncols}, at {where})"


def jet_matrix(f: Parameterization, m: int, point: Sequence | None = None) -> JetMatrix:
    """Order-m jet matrix, symbolic or exactly evaluated at a point."""
    _check_jet_order(f, m)
    indices = multi_indices_upto(f.source_dim, m)
    rows = _derivative_rows(f, indices)
    if point is None:
        field = FunctionField(f.params)
        matrix = ExactMatrix(rows, field=field)
        return JetMatrix(m, tuple(indices), matrix, None, f.params)
    point = tuple(Fraction(v) for v in point)
    if len(point) != f.source_dim:
        raise DomainError(f"point {point} has wrong length for {f.source_dim} parameters")
    evaluated = [[entry.evaluate(point) for entry in row] for row in rows]
    if not any(evaluated[0]):
        raise DomainError(f"all coordinates vanish at {point}; not a projective point")
    matrix = ExactMatrix(evaluated, field=RationalField())
    if m >= 1:
        first_block = matrix.submatrix_rows(range(1 + f.source_dim))
        if rank(first_block) < f.source_dim + 1:
            warnings.warn(
                f"parameterization is not an immersion at {point}",
                NonImmersivePoint,
                stacklevel=2,
            )
    return JetMatrix(m, tuple(indices), matrix, point, f.params)


class OsculatingProfile:
    """Osculating dimensions s(0..m) with the mode that produced them."""

    __slots__ = ("dims", "point", "mode", "sample_points", "source_dim", "ambient_dim")

    def __init__(self, dims: Sequence[int], point, mode: str,
                 sample_points, source_dim: int, ambient_dim: int):
        dims = tuple(dims)
        if dims[0] != 0:
            raise InvariantViolation(f"s(0) = {dims[0]}, expected 0")
        from math import comb
        for i in range(1, len(dims)):
            cap = min(ambient_dim, dims[i - 1] + comb(source_dim + i - 1, i))
            if dims[i] < dims[i - 1] or dims[i] > cap:
                raise InvariantViolation(
                    f"osculating dimensions {dims} violate the growth bounds at order {i}"
                )
        self.dims = dims
        self.point = point
        self.mode = mode
        self.sample_points = sample_points
        self.source_dim = source_dim
        self.ambient_dim = ambient_dim

    def __repr__(self) -> str:
        return f"OsculatingProfile(dims={list(self.dims)}, mode={self.mode})"


def _sample_point(f: Parameterization, rng: random.Random) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 6))
                 for _ in range(f.source_dim))


def _ranks_at_sample(f: Parameterization, m_max: int, rng: random.Random,
                     attempts: int = 60) -> tuple[tuple[Fraction, ...], list[int]]:
    for _ in range(attempts):
        point = _sample_point(f, rng)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", NonImmersivePoint)
                jm = jet_matrix(f, m_max, point)
        except (DenominatorVanishes, DomainError):
            continue
        ranks = []
        for i in range(m_max + 1):
            upper = [j for j, I in enumerate(jm.row_indices) if sum(I) <= i]
            ranks.append(rank(jm.matrix.submatrix_rows(upper)))
        return point, ranks
    raise DomainError("could not sample a point off the coordinate denominators")


def osculating_profile(f: Parameterization, m_max: int,
                       point: Sequence | None = None,
                       symbolic: bool = False,
                       rng: random.Random | int | None = None) -> OsculatingProfile:
    """Dimensions s(0), ..., s(m_max) of the osculating spaces.

    At a point the ranks are exact.  Generically, the default strategy
    samples random rational points until two agree (a third breaks
    ties by maximum); --symbolic instead eliminates over the rational
    function field, which is certified but slower.
    """
    if m_max < 1:
        raise DomainError(f"m_max must be at least 1, got {m_max}")
    if point is not None:
        jm = jet_matrix(f, m_max, point)
        dims = []
        for i in range(m_max + 1):
            upper = [j for j, I in enumerate(jm.row_indices) if sum(I) <= i]
            dims.append(rank(jm.matrix.submatrix_rows(upper)) - 1)
        return OsculatingProfile(dims, tuple(Fraction(v) for v in point), "point",
                                 None, f.source_dim, f.ambient_dim)
    if symbolic:
        jm = jet_matrix(f, m_max, None)
        dims = []
        for i in range(m_max + 1):
            upper = [j for j, I in enumerate(jm.row_indices) if sum(I) <= i]
            dims.append(rank(jm.matrix.submatrix_rows(upper)) - 1)
        return OsculatingProfile(dims, "generic", "generic-symbolic",
                                 None, f.source_dim, f.ambient_dim)
    if rng is None:
        rng = random.Random(DEFAULT_SEED)
    elif isinstance(rng, int):
        rng = random.Random(rng)
    p1, r1 = _ranks_at_sample(f, m_max, rng)
    p2, r2 = _ranks_at_sample(f, m_max, rng)
    samples = [p1, p2]
    if r1 == r2:
        ranks = r1
    else:
        p3, r3 = _ranks_at_sample(f, m_max, rng)
        samples.append(p3)
        ranks = [max(a, b, c) for a, b, c in zip(r1, r2, r3)]
    dims = [v - 1 for v in ranks]
    return OsculatingProfile(dims, "generic", "generic-sampled",
                             tuple(samples), f.source_dim, f.ambient_dim)


def osculating_space(f: Parameterization, m: int, point: Sequence) -> Subspace:
    """Canonical basis of the m-th osculating space at the point."""
    if point is None:
        raise DomainError("osculating_space requires an evaluation point")
    return row_space(jet_matrix(f, m, point).matrix)


def kernel_chain(f: Parameterization, m: int,
                 point: Sequence | None = None) -> list[Subspace]:
    """Kernels K_0 through K_m of the jet matrices, nesting verified."""
    _check_jet_order(f, m)
    jm = jet_matrix(f, m, point)
    chain = []
    for i in range(m + 1):
        upper = [j for j, I in enumerate(jm.row_indices) if sum(I) <= i]
        chain.append(kernel_basis(jm.matrix.submatrix_rows(upper)))
    for i in range(1, len(chain)):
        if not span_contains(chain[i - 1], chain[i]):
            raise ChainBroken(
                f"K_{i} is not contained in K_{i - 1}; this indicates an arithmetic bug"
            )
    return chain


class ImplicitVariety:
    """Complete intersection given by homogeneous equations and a smooth

    rational point.  The chart checks (point on the variety, Jacobian of
    the dehomogenized system of full rank) run at construction."""

    __slots__ = ("equations", "point", "label", "variables")

    def __init__(self, equations: Sequence[Polynomial], point: Sequence,
                 label: str | None = None):
        equations = tuple(equations)
        if not equations:
            raise DomainError("at least one equation is required")
        variables = equations[0].variables
        for g in equations:
            if g.variables != variables:
                raise DomainError("equations use different variable tuples")
            if g.is_zero:
                raise DomainError("zero equation supplied")
            if not g.is_homogeneous():
                raise NotHomogeneous(f"{g} is not homogeneous")
        point = tuple(Fraction(v) for v in point)
        if len(point) != len(variables):
            raise DomainError(
                f"point has {len(point)} coordinates, ambient space needs {len(variables)}"
            )
        if not any(point):
            raise DomainError("the zero vector is not a projective point")
        for g in equations:
            if g.evaluate(point):
                raise PointNotOnVariety(f"{g} does not vanish at {point}")
        if len(equations) >= len(variables):
            raise DomainError(
                f"{len(equations)} equations in P^{len(variables) - 1} leave no "
                "positive-dimensional complete intersection"
            )
        object.__setattr__(self, "equations", equations)
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "variables", variables)
        affine_eqs, affine_point, _, _ = self._chart()
        jac = [[g.partial(j).evaluate(affine_point) for j in range(len(affine_point))]
               for g in affine_eqs]
        if rank(ExactMatrix(jac)) < len(equations):
            raise SingularPoint(
                f"Jacobian rank below {len(equations)} at {point}; the point is "
                "singular or the equations are not transverse there"
            )

    def __setattr__(self, name, value):
        raise AttributeError("ImplicitVariety is immutable")

    @property
    def ambient_dim(self) -> int:
        return len(self.variables) - 1

    @property
    def codim(self) -> int:
        return len(self.equations)

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    def _chart(self):
        """Dehomogenize at the first nonzero point coordinate."""
        pivot = next(i for i, v in enumerate(self.point) if v)
        scale = self.point[pivot]
        scaled = [v / scale for v in self.point]
        pivot_name = self.variables[pivot]
        affine_eqs = [g.substitute_subset({pivot_name: 1}) for g in self.equations]
        affine_point = [v for i, v in enumerate(scaled) if i != pivot]
        affine_names = tuple(v for i, v in enumerate(self.variables) if i != pivot)
        return affine_eqs, affine_point, affine_names, pivot

    def __repr__(self) -> str:
        name = self.label or "implicit variety"
        return f"ImplicitVariety({name}: {self.codim} equations in P^{self.ambient_dim})"


def jet_parameterize(iv: ImplicitVariety, order: int,
                     free_coords: Sequence[str] | None = None) -> Parameterization:
    """Truncated power-series chart of the variety at its point.

    Solves the dehomogenized system for the dependent coordinates by
    Newton iteration on truncated series.  The parameters are the free
    affine coordinates, measured as offsets from the point; the free
    slots default to the lexicographically first choice whose
    complementary Jacobian block is invertible.
    """
    if order < 1:
        raise DomainError(f"truncation order must be positive, got {order}")
    affine_eqs, affine_point, affine_names, pivot = iv._chart()
    n_affine = len(affine_names)
    r = iv.dim
    c = iv.codim

    def block_invertible(dep: list[int]) -> bool:
        jac = [[g.partial(j).evaluate(affine_point) for j in dep] for g in affine_eqs]
        return bool(_fraction_determinant(jac))

    if free_coords is not None:
        wanted = list(free_coords)
        if len(wanted) != r:
            raise DomainError(f"need {r} free coordinates, got {len(wanted)}")
        free = []
        for name in wanted:
            if name not in affine_names:
                raise DomainError(
                    f"{name!r} is not an affine coordinate of the chart "
                    f"(pivot {iv.variables[pivot]!r} is fixed)"
                )
            free.append(affine_names.index(name))
        dep = [i for i in range(n_affine) if i not in free]
        if not block_invertible(dep):
            raise SingularPoint(
                "the complementary Jacobian block of the requested free "
                "coordinates is singular at the point"
            )
    else:
        free = None
        for candidate in itertools.combinations(range(n_affine), r):
            dep = [i for i in range(n_affine) if i not in candidate]
            if block_invertible(dep):
                free = list(candidate)
                break
        if free is None:
            raise SingularPoint("no coordinate split has an invertible Jacobian block")
        dep = [i for i in range(n_affine) if i not in free]

    series_vars = tuple(affine_names[i] for i in free)
    solution = solve_series_system(affine_eqs, free, dep, affine_point,
                                   order, series_vars=series_vars)
    coords: list[Polynomial] = [None] * (len(iv.variables))  # type: ignore[list-item]
    coords[pivot] = Polynomial.constant(series_vars, 1)
    affine_slots = [i for i in range(len(iv.variables)) if i != pivot]
    for k, idx in enumerate(free):
        coords[affine_slots[idx]] = (Polynomial.variable(series_vars, series_vars[k])
                                     + affine_point[idx])
    for k, idx in enumerate(dep):
        coords[affine_slots[idx]] = solution[k]
    for g in iv.equations:
        residual = truncated_compose(g, coords, order)
        if not residual.is_zero:
            raise InvariantViolation(
                f"series chart leaves residual {residual} in {g}"
            )
    label = f"order-{order} chart of {iv.label}" if iv.label else f"order-{order} chart"
    return Parameterization(series_vars, coords, label=label, truncated_order=order)
