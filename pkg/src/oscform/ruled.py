"""Ruled parameterizations, rational normal scrolls, and the surface

ruledness diagnostic.

A ruled parameterization separates its parameters into base and fiber
variables with every coordinate affine-linear in the fiber block; the
fiber directions form the subspace {v_base = 0} of the tangent space.
Scrolls are the special case over the projective line.  The ruledness
diagnostic for surfaces in P^3 works in a Monge chart at each sample
point: the quadratic piece f2 and the Fubini cubic f3 must share a zero
(detected by the resultant), and the tangent line along a shared zero
must meet the surface to order at least 4; the output is evidence from
finitely many points, never a proof.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence, Union

from .errors import (
    DegenerateSecondForm,
    DomainError,
    NotASurfaceInP3,
    SingularPoint,
)
from .exactla import ExactMatrix, RationalField, kernel_basis, rank, rref
from .fundforms import LinearSystem, fundamental_form
from .jets import (
    DEFAULT_SEED,
    ImplicitVariety,
    NonImmersivePoint,
    Parameterization,
    jet_matrix,
)
from .polyring import (
    Polynomial,
    QuotientRingElement,
    RationalFunction,
    binary_form_gcd,
    resultant_binary,
    solve_series_system,
    split_rational_linear_factors,
    truncated_compose,
    truncated_inverse,
    truncated_multiply,
)


class ScrollSpec:
    """Splitting type of a rational normal scroll."""

    __slots__ = ("degrees",)

    def __init__(self, degrees: Sequence[int]):
        degrees = tuple(sorted(int(d) for d in degrees))
        if not degrees:
            raise DomainError("at least one degree is required")
        if degrees[0] < 1:
            raise DomainError(f"degrees must be positive, got {degrees}")
        object.__setattr__(self, "degrees", degrees)

    def __setattr__(self, name, value):
        raise AttributeError("ScrollSpec is immutable")

    @property
    def fiber_count(self) -> int:
        """e: the number of fiber parameters."""
        return len(self.degrees) - 1

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def ambient_dim(self) -> int:
        return sum(d + 1 for d in self.degrees) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, ScrollSpec) and self.degrees == other.degrees

    def __repr__(self) -> str:
        return f"ScrollSpec{self.degrees}"


class RuledParameterization:
    """Parameterization whose coordinates are affine-linear in the fiber

    parameters.  Base parameters come first in the combined tuple, so
    the fiber tangent subspace is {first n tangent coordinates = 0}."""

    __slots__ = ("base_params", "fiber_params", "underlying", "label")

    def __init__(self, base_params: Sequence[str], fiber_params: Sequence[str],
                 coords: Sequence, label: str | None = None):
        base_params = tuple(base_params)
        fiber_params = tuple(fiber_params)
        params = base_params + fiber_params
        underlying = Parameterization(params, coords, label=label)
        fiber_positions = [params.index(t) for t in fiber_params]
        for c in underlying.coords:
            for exps in c.denominator.terms:
                if any(exps[i] for i in fiber_positions):
                    raise DomainError(
                        f"coordinate denominator {c.denominator} involves fiber parameters"
                    )
            for exps in c.numerator.terms:
                if sum(exps[i] for i in fiber_positions) > 1:
                    raise DomainError(
                        f"coordinate {c} is not affine-linear in the fiber parameters"
                    )
        object.__setattr__(self, "base_params", base_params)
        object.__setattr__(self, "fiber_params", fiber_params)
        object.__setattr__(self, "underlying", underlying)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("RuledParameterization is immutable")

    @property
    def base_count(self) -> int:
        return len(self.base_params)

    @property
    def fiber_count(self) -> int:
        return len(self.fiber_params)

    def tangent_vars(self) -> tuple[str, ...]:
        n = self.base_count
        if n == 1:
            base = ("v",)
        else:
            base = tuple(f"v{k + 1}" for k in range(n))
        fiber = tuple(f"w{k + 1}" for k in range(self.fiber_count))
        return base + fiber

    def __repr__(self) -> str:
        return (f"RuledParameterization({self.label or 'ruled'}: base "
                f"{self.base_params}, fiber {self.fiber_params})")


def scroll(spec: ScrollSpec) -> RuledParameterization:
    """The standard chart (t, s_1..s_e) -> (1 : t : ... : t^d0 : s_1 : s_1 t : ...)."""
    e = spec.fiber_count
    if e == 0:
        warnings.warn(
            f"scroll{spec.degrees} has no fiber parameters; this is the "
            "rational normal curve, a degenerate scroll",
            UserWarning,
            stacklevel=2,
        )
    base = ("t",)
    fibers = tuple(f"s{i}" for i in range(1, e + 1))
    params = base + fibers
    t = Polynomial.variable(params, "t")
    coords: list[Polynomial] = []
    for j in range(spec.degrees[0] + 1):
        coords.append(t ** j)
    for i, d in enumerate(spec.degrees[1:], start=1):
        s = Polynomial.variable(params, f"s{i}")
        for j in range(d + 1):
            coords.append(s * t ** j)
    label = "scroll" + "-".join(str(d) for d in spec.degrees)
    return RuledParameterization(base, fibers, coords, label=label)


@dataclass
class ScrollRankReport:
    degrees: tuple[int, ...]
    order: int
    rank: int
    expected: int
    match: bool


def scroll_rank_check(spec: ScrollSpec, m: int) -> ScrollRankReport:
    """Generic jet rank of a scroll against the closed formula m(e+1)+1.

    The formula is stated for 2 <= m <= d0 but also holds at m = 1
    (immersion rank r + 1 = e + 2); orders above d0 are rejected.
    """
    if m < 1 or m > spec.degrees[0]:
        raise DomainError(
            f"order {m} outside the valid range 1..{spec.degrees[0]} for {spec}"
        )
    f = scroll(spec)
    jm = jet_matrix(f.underlying, m, None)
    r = rank(jm.matrix)
    expected = m * (spec.fiber_count + 1) + 1
    return ScrollRankReport(spec.degrees, m, r, expected, r == expected)


@dataclass
class RulingReport:
    order: int
    all_members_contain_ruling: bool
    monomial_support_ok: bool
    singular_along_ruling: bool | None
    fixed_component: str | None
    generator_count: int
    system: LinearSystem


def ruling_fixed_component_check(f: RuledParameterization, m: int,
                                 point: Sequence | None = None) -> RulingReport:
    """Structure of |Phi_m| for a ruled variety.

    (a) every generator vanishes on the fiber subspace {v = 0}; for a
    one-dimensional base this is divisibility by v, the fixed component;
    (b) the monomial support satisfies v-degree >= m-1 and fiber-degree
    <= 1; (c) for base dimension >= 2 and m >= 3 the generators are
    additionally singular along the fiber subspace.
    """
    if m < 2:
        raise DomainError(f"fundamental forms start at m = 2, got {m}")
    tangent = f.tangent_vars()
    system = fundamental_form(f.underlying, m, point, tangent_vars=tangent)
    n = f.base_count
    base_indices = list(range(n))
    contains = all(g.restrict_zero(base_indices).is_zero for g in system.generators)
    support_ok = True
    for g in system.generators:
        for exps in g.coeffs:
            v_deg = sum(exps[:n])
            w_deg = sum(exps[n:])
            if v_deg < m - 1 or w_deg > 1:
                support_ok = False
    singular: bool | None = None
    if n >= 2 and m >= 3:
        singular = True
        for g in system.generators:
            for k in range(len(tangent)):
                if not g.partial(k).restrict_zero(base_indices).is_zero:
                    singular = False
    fixed = None
    if n == 1 and contains and system.generators:
        fixed = tangent[0]
    return RulingReport(m, contains, support_ok, singular, fixed,
                        system.generator_count, system)


@dataclass
class DimBoundReport:
    order: int
    dim: int
    bound: int
    ok: bool


def dim_bound_check(f: RuledParameterization, m: int) -> DimBoundReport:
    """dim |Phi_m| against the ruled-variety bound

    C(n+m-1, m) + e*C(n+m-2, m-1) - 1."""
    if m < 2:
        raise DomainError(f"fundamental forms start at m = 2, got {m}")
    tangent = f.tangent_vars()
    system = fundamental_form(f.underlying, m, None, tangent_vars=tangent)
    n = f.base_count
    e = f.fiber_count
    bound = comb(n + m - 1, m) + e * comb(n + m - 2, m - 1) - 1
    dim = system.projective_dim
    return DimBoundReport(m, dim, bound, dim <= bound)


def _m_row(d: int, k: int, t: Polynomial) -> list[Polynomial]:
    """Row of order-k divided derivatives of (1, t, ..., t^d)."""
    out = []
    variables = t.variables
    for j in range(d + 1):
        if j < k:
            out.append(Polynomial.zero(variables))
        else:
            out.append(comb(j, k) * t ** (j - k))
    return out


@dataclass
class PushdownReport:
    degrees: tuple[int, ...]
    order: int
    block_ranks: list[int]
    expected_ranks: list[int]
    total_rank: int
    expected_total: int
    structure_ok: bool
    match: bool


def pushdown_rank_check(spec: ScrollSpec, m: int) -> PushdownReport:
    """Block structure of the scroll jet matrix along the base line.

    The pure-t derivative rows, split into the coordinate blocks of the
    splitting type, must have block ranks min(m+1, d_i+1) — the jet
    ranks of the line bundles O(d_i) on the base — and the |I| = m rows
    must reproduce the binomial rows C(j,k) t^{j-k} blockwise.
    """
    if m < 1 or m > spec.degrees[0]:
        raise DomainError(
            f"order {m} outside the valid range 1..{spec.degrees[0]} for {spec}"
        )
    f = scroll(spec)
    jm = jet_matrix(f.underlying, m, None)
    params = f.underlying.params
    t = Polynomial.variable(params, "t")
    e = spec.fiber_count
    offsets = []
    start = 0
    for d in spec.degrees:
        offsets.append((start, start + d + 1))
        start += d + 1

    pure_rows = []
    for i, I in enumerate(jm.row_indices):
        if all(I[k] == 0 for k in range(1, len(I))):
            pure_rows.append(i)
    block_ranks = []
    expected_ranks = []
    for lo, hi in offsets:
        block = [[jm.matrix[i, j] for j in range(lo, hi)] for i in pure_rows]
        block_ranks.append(rank(ExactMatrix(block, field=jm.matrix.field)))
    for d in spec.degrees:
        expected_ranks.append(min(m + 1, d + 1))

    structure_ok = True
    field = jm.matrix.field
    s_vars = [Polynomial.variable(params, f"s{i}") for i in range(1, e + 1)]
    for i, I in enumerate(jm.row_indices):
        k = I[0]
        fiber_part = I[1:]
        fiber_total = sum(fiber_part)
        row = jm.matrix.row(i)
        if fiber_total > 1:
            if any(entry for entry in row):
                structure_ok = False
            continue
        if fiber_total == 1:
            which = fiber_part.index(1)
            for b, (lo, hi) in enumerate(offsets):
                expected_block = (_m_row(spec.degrees[b], k, t)
                                  if b == which + 1
                                  else [Polynomial.zero(params)] * (hi - lo))
                for j, p in zip(range(lo, hi), expected_block):
                    if row[j] != field.coerce(p):
                        structure_ok = False
        else:
            for b, (lo, hi) in enumerate(offsets):
                base_row = _m_row(spec.degrees[b], k, t)
                scale = Polynomial.constant(params, 1) if b == 0 else s_vars[b - 1]
                for j, p in zip(range(lo, hi), base_row):
                    if row[j] != field.coerce(scale * p):
                        structure_ok = False
    total = sum(block_ranks)
    expected_total = sum(expected_ranks)
    return PushdownReport(spec.degrees, m, block_ranks, expected_ranks,
                          total, expected_total, structure_ok,
                          block_ranks == expected_ranks and structure_ok)


# -- Monge charts and the ruledness diagnostic -------------------------------


@dataclass
class MongeData:
    ambient_point: tuple[Fraction, ...]
    parameter_point: tuple[Fraction, ...] | None
    chart: ExactMatrix
    order: int
    variables: tuple[str, str]
    f_series: Polynomial
    f2: Polynomial
    f3: Polynomial
    f4: Polynomial

    def piece(self, m: int) -> Polynomial:
        return self.f_series.homogeneous_component(m)


def _complete_basis(rows: list[list[Fraction]]) -> list[Fraction]:
    """First standard basis vector extending the rows to a basis."""
    n = len(rows[0])
    base = ExactMatrix(rows, field=RationalField())
    base_rank = rank(base)
    for k in range(n):
        candidate = [Fraction(0)] * n
        candidate[k] = Fraction(1)
        if rank(ExactMatrix(rows + [candidate], field=RationalField())) > base_rank:
            return candidate
    raise SingularPoint("cannot complete the tangent frame to a basis")


def _invert_rational(matrix: ExactMatrix) -> ExactMatrix:
    n = matrix.nrows
    one = Fraction(1)
    zero = Fraction(0)
    augmented = ExactMatrix(
        [list(matrix.row(i)) + [one if j == i else zero for j in range(n)]
         for i in range(n)],
        field=RationalField(),
    )
    reduced = rref(augmented)
    if reduced.rank < n:
        raise SingularPoint("chart matrix is singular")
    return ExactMatrix([list(reduced.matrix.row(i))[n:] for i in range(n)],
                       field=RationalField())


def _shifted_series(value: RationalFunction, point: tuple[Fraction, ...],
                    order: int, series_vars: tuple[str, ...]) -> Polynomial:
    """Taylor series of the function around the point, truncated past

    `order`, in offset variables.  Composition with the shift is exact
    polynomial arithmetic and the denominator is inverted as a series,
    so nothing ever leaves the polynomial ring."""
    shift = [Polynomial.variable(series_vars, v) + p
             for v, p in zip(series_vars, point)]

    def compose(p: Polynomial) -> Polynomial:
        out = p.evaluate_in(shift)
        if not isinstance(out, Polynomial):
            out = Polynomial.constant(series_vars, out)
        return out.truncate(order)

    return truncated_multiply(compose(value.numerator),
                              truncated_inverse(compose(value.denominator), order),
                              order)


def _monge_from_parameterization(f: Parameterization, point: Sequence,
                                 order: int) -> MongeData:
    if f.ambient_dim != 3 or f.source_dim != 2:
        raise NotASurfaceInP3(
            f"Monge charts need a surface in P^3; got source {f.source_dim}, "
            f"ambient {f.ambient_dim}"
        )
    point = tuple(Fraction(v) for v in point)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonImmersivePoint)
        jm = jet_matrix(f, 1, point)
    frame = [list(jm.matrix.row(i)) for i in range(3)]
    if rank(ExactMatrix(frame, field=RationalField())) < 3:
        raise SingularPoint(f"the parameterization is not immersive at {point}")
    frame.append(_complete_basis(frame))
    chart = ExactMatrix(frame, field=RationalField())
    inverse = _invert_rational(chart.transpose())
    u_vars = ("u1", "u2")
    coord_series = [_shifted_series(c, point, order, u_vars) for c in f.coords]
    z = []
    for i in range(4):
        total = Polynomial.zero(u_vars)
        for j in range(4):
            c = inverse[i, j]
            if c:
                total = total + coord_series[j] * c
        z.append(total)
    if not z[0].constant_term():
        raise SingularPoint("chart normalization failed at the point")
    inverse_z0 = truncated_inverse(z[0], order)
    taylors = [truncated_multiply(z[i], inverse_z0, order) for i in (1, 2, 3)]
    x_vars = ("x1", "x2")
    combined = ("x1", "x2", "u1", "u2")
    equations = []
    for i in range(2):
        ti = taylors[i].extend_variables(combined)
        xi = Polynomial.variable(combined, x_vars[i])
        equations.append(ti - xi)
    inverse_series = solve_series_system(equations, free=[0, 1], dep=[2, 3],
                                         point=[Fraction(0)] * 4, order=order,
                                         series_vars=x_vars)
    f_series = truncated_compose(taylors[2], inverse_series, order)
    if f_series.constant_term() or not f_series.homogeneous_component(1).is_zero:
        raise SingularPoint("Monge chart has unexpected constant or linear part")
    ambient = tuple(c.evaluate(point) for c in f.coords)
    return MongeData(ambient, point, chart, order, x_vars, f_series,
                     f_series.homogeneous_component(2),
                     f_series.homogeneous_component(3),
                     f_series.homogeneous_component(4))


def _monge_from_implicit(iv: ImplicitVariety, order: int) -> MongeData:
    if iv.ambient_dim != 3 or iv.codim != 1:
        raise NotASurfaceInP3(
            f"Monge charts need a hypersurface in P^3; got {iv.codim} "
            f"equations in P^{iv.ambient_dim}"
        )
    g = iv.equations[0]
    point = list(iv.point)
    gradient = [g.partial(j).evaluate(point) for j in range(4)]
    normal = ExactMatrix([gradient], field=RationalField())
    tangent = kernel_basis(normal)
    frame_rows = [point]
    for vector in tangent.basis:
        if rank(ExactMatrix(frame_rows + [list(vector)], field=RationalField())) \
                > len(frame_rows):
            frame_rows.append(list(vector))
        if len(frame_rows) == 3:
            break
    if len(frame_rows) < 3:
        raise SingularPoint(f"tangent plane is degenerate at {tuple(point)}")
    frame_rows.append(_complete_basis(frame_rows))
    chart = ExactMatrix(frame_rows, field=RationalField())
    z_vars = ("z0", "x1", "x2", "x3")
    substituted = g.evaluate_in([
        sum((Polynomial.variable(z_vars, z_vars[i]) * chart[i, j]
             for i in range(4)), Polynomial.zero(z_vars))
        for j in range(4)
    ])
    affine = substituted.substitute_subset({"z0": 1})
    x_vars = ("x1", "x2")
    solution = solve_series_system([affine], free=[0, 1], dep=[2],
                                   point=[Fraction(0)] * 3, order=order,
                                   series_vars=x_vars)
    f_series = solution[0]
    if f_series.constant_term() or not f_series.homogeneous_component(1).is_zero:
        raise SingularPoint("Monge chart has unexpected constant or linear part")
    return MongeData(tuple(iv.point), None, chart, order, x_vars, f_series,
                     f_series.homogeneous_component(2),
                     f_series.homogeneous_component(3),
                     f_series.homogeneous_component(4))


def monge_form(surface: Union[Parameterization, ImplicitVariety],
               point: Sequence | None = None, order: int = 4) -> MongeData:
    """Local graph x3 = f(x1, x2) of a surface in P^3 at a smooth point.

    A rational linear change of coordinates moves the point to
    (1:0:0:0) and the tangent plane to x3 = 0; the quadratic piece f2 is
    kept as computed, with no further normalization, so all arithmetic
    stays rational.
    """
    if order < 3:
        raise DomainError(f"Monge order must be at least 3, got {order}")
    if isinstance(surface, Parameterization):
        if point is None:
            raise DomainError("a parameter-space point is required")
        return _monge_from_parameterization(surface, point, order)
    if isinstance(surface, ImplicitVariety):
        if point is not None and tuple(Fraction(v) for v in point) != surface.point:
            surface = ImplicitVariety(surface.equations, point, label=surface.label)
        return _monge_from_implicit(surface, order)
    raise TypeError(f"cannot build a Monge chart from {type(surface).__name__}")


@dataclass
class FubiniReport:
    resultant: Fraction | None
    intersects: bool
    note: str


def fubini_intersection_test(md: MongeData) -> FubiniReport:
    """Common zeros of f2 and the Fubini cubic f3, via the resultant."""
    if md.f2.is_zero:
        raise DegenerateSecondForm("f2 vanishes; the second-order test is undefined")
    if md.f3.is_zero:
        return FubiniReport(Fraction(0), True,
                            "f3 is identically zero: every direction is common")
    value = resultant_binary(md.f2, md.f3)
    return FubiniReport(value, value == 0,
                        "resultant of f2 and f3 over the tangent directions")


ContactOrder = Union[int, str]


def line_contact_order(md: MongeData, direction: Sequence) -> ContactOrder:
    """Vanishing order of the surface along a tangent direction.

    Returns the smallest m >= 2 with f_m(direction) != 0, or the string
    ">= order" when every computed piece vanishes.  Direction entries
    may be rationals or quotient-ring elements (conjugate algebraic
    directions share their contact order, so one ring evaluation covers
    both).
    """
    if len(direction) != 2:
        raise DomainError("a tangent direction in the Monge chart has two entries")
    if not any(bool(d) for d in direction):
        raise DomainError("the zero vector is not a direction")
    for m in range(2, md.order + 1):
        piece = md.f_series.homogeneous_component(m)
        if piece.is_zero:
            continue
        value = piece.evaluate_in(tuple(direction))
        if bool(value):
            return m
    return f">= {md.order}"


def contact_at_least(contact: ContactOrder, threshold: int) -> bool:
    if isinstance(contact, int):
        return contact >= threshold
    return int(contact.split()[-1]) >= threshold


@dataclass
class DirectionContact:
    direction: str
    contact: ContactOrder | None
    evaluated: bool


@dataclass
class PointDiagnostic:
    point: tuple
    intersects: bool | None
    resultant: Fraction | None
    directions: list[DirectionContact]
    has_contact_4: bool
    error: str | None


@dataclass
class RuledDiagnostic:
    verdict: str
    points: list[PointDiagnostic]
    order: int
    projection: ExactMatrix | None
    disclaimer: str


def _candidate_directions(md: MongeData) -> tuple[list[DirectionContact], bool]:
    """Contact orders along the common zeros of f2 and f3."""
    if md.f3.is_zero:
        shared = md.f2
    else:
        shared = binary_form_gcd(md.f2, md.f3)
    if shared.total_degree() < 1:
        return [], False
    rational_dirs, remainder = split_rational_linear_factors(shared)
    out: list[DirectionContact] = []
    seen = set()
    found4 = False
    for a, b in rational_dirs:
        if (a, b) in seen:
            continue
        seen.add((a, b))
        contact = line_contact_order(md, (a, b))
        found4 = found4 or contact_at_least(contact, 4)
        out.append(DirectionContact(f"({a}:{b})", contact, True))
    degree = remainder.total_degree()
    if degree == 2:
        # Irreducible quadratic factor: both conjugate directions are
        # (1 : root); contact orders agree, so evaluate once in Q[s]/(p).
        coeffs = [remainder.coefficient((2, 0)), remainder.coefficient((1, 1)),
                  remainder.coefficient((0, 2))]
        lead = coeffs[2]
        modulus = [coeffs[0] / lead, coeffs[1] / lead, Fraction(1)]
        root = QuotientRingElement.generator(modulus)
        contact = line_contact_order(md, (QuotientRingElement.from_scalar(modulus, 1), root))
        found4 = found4 or contact_at_least(contact, 4)
        p_text = f"s^2 + ({modulus[1]})*s + ({modulus[0]})"
        out.append(DirectionContact(f"(1:s) mod {p_text}", contact, True))
    elif degree > 2:
        out.append(DirectionContact(
            f"zeros of degree-{degree} factor without rational roots", None, False))
    return out, found4


def project_to_p3(f: Parameterization, matrix: Sequence[Sequence] | None = None,
                  rng: random.Random | int | None = None
                  ) -> tuple[Parameterization, ExactMatrix]:
    """Linear projection of a parameterized surface into P^3."""
    if f.ambient_dim < 3:
        raise NotASurfaceInP3(f"ambient dimension {f.ambient_dim} is below 3")
    width = f.ambient_dim + 1
    if matrix is None:
        if rng is None:
            rng = random.Random(DEFAULT_SEED)
        elif isinstance(rng, int):
            rng = random.Random(rng)
        matrix = [[Fraction(rng.randint(-9, 9)) for _ in range(width)]
                  for _ in range(4)]
    projection = ExactMatrix(matrix, field=RationalField())
    if projection.nrows != 4 or projection.ncols != width:
        raise DomainError(
            f"projection matrix must be 4x{width}, got "
            f"{projection.nrows}x{projection.ncols}"
        )
    if rank(projection) < 4:
        raise DomainError("projection matrix does not have full rank")
    new_coords = []
    for i in range(4):
        total = None
        for j, c in enumerate(f.coords):
            value = projection[i, j]
            if value:
                term = c * value
                total = term if total is None else total + term
        new_coords.append(total if total is not None
                          else RationalFunction.from_scalar(f.params, 0))
    label = f"{f.label or 'surface'} projected to P^3"
    return (Parameterization(f.params, new_coords, label=label,
                             truncated_order=f.truncated_order), projection)


def ruled_surface_diagnostic(surface: Union[Parameterization, ImplicitVariety],
                             sample_points: Sequence[Sequence],
                             order: int = 4,
                             projection: Sequence[Sequence] | None = None,
                             rng: random.Random | int | None = None,
                             jobs: int = 1) -> RuledDiagnostic:
    """Evidence-gathering ruledness test at finitely many sample points.

    At each point: build the Monge chart, test whether f2 and f3 share a
    zero, and compute contact orders along the shared zeros.  Verdict
    "ruled-evidence" requires a contact-4 direction at every point;
    "not-ruled-evidence" requires an empty intersection somewhere;
    anything else is "inconclusive".  This samples a generic condition
    at finitely many points: it is evidence, never a proof.  Points are
    independent; jobs > 1 runs them on a thread pool, with the report
    order fixed by the input order either way.
    """
    used_projection = None
    if isinstance(surface, Parameterization) and surface.ambient_dim > 3:
        surface, used_projection = project_to_p3(surface, projection, rng)

    def examine(sample) -> PointDiagnostic:
        sample = tuple(Fraction(v) for v in sample)
        try:
            md = monge_form(surface, sample, order=order)
            fubini = fubini_intersection_test(md)
            directions, found4 = _candidate_directions(md)
            return PointDiagnostic(sample, fubini.intersects, fubini.resultant,
                                   directions, found4, None)
        except DomainError as exc:
            return PointDiagnostic(sample, None, None, [], False,
                                   f"{type(exc).__name__}: {exc}")

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(examine, sample_points))
    else:
        reports = [examine(sample) for sample in sample_points]
    if reports and all(r.error is None and r.has_contact_4 for r in reports):
        verdict = "ruled-evidence"
    elif any(r.intersects is False for r in reports):
        verdict = "not-ruled-evidence"
    else:
        verdict = "inconclusive"
    disclaimer = ("finite sampling of a generic condition: this report is "
                  "evidence, not a proof")
    return RuledDiagnostic(verdict, reports, order, used_projection, disclaimer)


def heat_equation_check(f: Parameterization, phi,
                        x_var: str | None = None,
                        y_var: str | None = None) -> bool:
    """Whether every coordinate satisfies D_yy x_j = phi * d x_j / dx.

    The second derivative is the divided (Hasse) operator, i.e. half the
    ordinary repeated derivative; with that Taylor-coefficient
    normalization the classical examples satisfy the equation with
    phi = 1.
    """
    if f.source_dim != 2:
        raise DomainError("the heat-equation pattern applies to surfaces (r = 2)")
    x_name = x_var or f.params[0]
    y_name = y_var or f.params[1]
    if x_name not in f.params or y_name not in f.params or x_name == y_name:
        raise DomainError(f"variables {x_name!r}, {y_name!r} must be distinct parameters")
    x_index = f.params.index(x_name)
    y_index = f.params.index(y_name)
    if isinstance(phi, (int, Fraction)):
        phi = RationalFunction.from_scalar(f.params, phi)
    elif isinstance(phi, Polynomial):
        phi = RationalFunction(phi)
    order = [0] * f.source_dim
    order[y_index] = 2
    for c in f.coords:
        left = c.hasse_derivative(tuple(order))
        right = phi * c.partial(x_index)
        if left != right:
            return False
    return True
