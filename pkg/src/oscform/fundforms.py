"""Pointwise fundamental forms as linear systems on the tangent space.

The m-th fundamental form at x is spanned by the degree-m forms
sum_{|I|=m} (sum_j g_j D_I x_j) v^I, one for each kernel vector g of
the order-(m-1) jet matrix.  At a rational point the coefficients are
rationals; at the generic point they are rational functions of the
parameters.  Both cases share one representation: a homogeneous form in
the tangent variables whose coefficients are field elements, plus the
canonical echelon basis of the coefficient span.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    DomainError,
    HyperplaneContainsAllOsculating,
    HyperplaneMissesPoint,
    InvariantViolation,
    UnsupportedAmbient,
)
from .exactla import (
    ExactMatrix,
    FunctionField,
    RationalField,
    Subspace,
    kernel_basis,
    span_contains,
)
from .jets import JetMatrix, Parameterization, jet_matrix
from .polyring import Exponents, Polynomial, RationalFunction, degree_block
from .polyring.binform import gen_gcd, rational_zeros

FieldElement = Union[Fraction, RationalFunction]


def default_tangent_vars(r: int) -> tuple[str, ...]:
    return tuple(f"v{k + 1}" for k in range(r))


class TangentForm:
    """Homogeneous form in the tangent variables over an exact field."""

    __slots__ = ("tangent_vars", "degree", "coeffs", "field")

    def __init__(self, tangent_vars: Sequence[str], degree: int,
                 coeffs: dict, field):
        tangent_vars = tuple(tangent_vars)
        clean = {}
        for exps, value in coeffs.items():
            exps = tuple(exps)
            if len(exps) != len(tangent_vars) or sum(exps) != degree:
                raise DomainError(
                    f"monomial {exps} is not degree {degree} in {len(tangent_vars)} variables"
                )
            value = field.coerce(value)
            if value:
                clean[exps] = value
        self.tangent_vars = tangent_vars
        self.degree = degree
        self.coeffs = clean
        self.field = field

    @classmethod
    def from_polynomial(cls, p: Polynomial, field, degree: int | None = None) -> "TangentForm":
        if not p.is_homogeneous():
            raise DomainError(f"{p} is not homogeneous")
        if degree is None:
            degree = max(p.total_degree(), 0)
        if not p.is_zero and p.total_degree() != degree:
            raise DomainError(f"{p} does not have degree {degree}")
        return cls(p.variables, degree, dict(p.terms), field)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monomial_basis(self) -> list[Exponents]:
        return degree_block(len(self.tangent_vars), self.degree)

    def coefficient_vector(self) -> list:
        zero = self.field.zero()
        return [self.coeffs.get(exps, zero) for exps in self.monomial_basis()]

    @classmethod
    def from_vector(cls, tangent_vars: Sequence[str], degree: int,
                    vector: Sequence, field) -> "TangentForm":
        basis = degree_block(len(tuple(tangent_vars)), degree)
        return cls(tangent_vars, degree,
                   {exps: value for exps, value in zip(basis, vector)}, field)

    def partial(self, k: int) -> "TangentForm":
        """Ordinary first derivative in the k-th tangent variable."""
        if self.degree == 0:
            raise DomainError("cannot differentiate a degree-0 form to negative degree")
        out = {}
        for exps, value in self.coeffs.items():
            e = exps[k]
            if e:
                key = exps[:k] + (e - 1,) + exps[k + 1:]
                out[key] = value * e
        return TangentForm(self.tangent_vars, self.degree - 1, out, self.field)

    def evaluate(self, direction: Sequence):
        """Value at a tangent direction; entries may be rationals,

        rational functions over the same field, or quotient-ring
        elements (rational-coefficient systems only)."""
        total = None
        for exps, value in self.coeffs.items():
            term = value
            for d, e in zip(direction, exps):
                if e:
                    term = term * d ** e
            total = term if total is None else total + term
        if total is None:
            return self.field.zero()
        return total

    def restrict_zero(self, indices: Sequence[int]) -> "TangentForm":
        """Substitute zero for the given tangent variables."""
        index_set = set(indices)
        out = {exps: value for exps, value in self.coeffs.items()
               if all(exps[i] == 0 for i in index_set)}
        return TangentForm(self.tangent_vars, self.degree, out, self.field)

    def block_degrees(self, indices: Sequence[int]) -> set[int]:
        """Total degrees in the given variable block across the support."""
        return {sum(exps[i] for i in indices) for exps in self.coeffs}

    def as_polynomial(self) -> Polynomial:
        """Conversion for rational-coefficient forms."""
        terms = {}
        for exps, value in self.coeffs.items():
            if isinstance(value, RationalFunction):
                value = value.as_scalar()
            terms[exps] = value
        return Polynomial(self.tangent_vars, terms)

    def scaled_monic(self) -> "TangentForm":
        """Divide by the leading coefficient (graded-lex leading monomial)."""
        if self.is_zero:
            return self
        lead = max(self.coeffs, key=lambda e: (sum(e), e))
        inv = self.coeffs[lead] ** (-1)
        return TangentForm(self.tangent_vars, self.degree,
                           {e: v * inv for e, v in self.coeffs.items()}, self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TangentForm):
            return NotImplemented
        if (self.tangent_vars, self.degree) != (other.tangent_vars, other.degree):
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        zero = self.field.zero()
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    def _format_monomial(self, exps: Exponents) -> str:
        parts = []
        for name, e in zip(self.tangent_vars, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda t: t[0], reverse=True)
        parts = []
        for exps, value in items:
            mono = self._format_monomial(exps)
            text = str(value)
            simple = text.lstrip("-").replace("/", "").isdigit() or (
                isinstance(value, RationalFunction) and len(value.numerator.terms) <= 1
                and value.is_polynomial())
            if not simple:
                text = f"({text})"
            if mono:
                if text == "1":
                    text = mono
                elif text == "-1":
                    text = f"-{mono}"
                else:
                    text = f"{text}*{mono}"
            if not parts:
                parts.append(text)
            elif text.startswith("-"):
                parts.append("- " + text[1:])
            else:
                parts.append("+ " + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TangentForm({self})"


class LinearSystem:
    """Canonicalized linear system of degree-m forms on the tangent space."""

    __slots__ = ("degree", "tangent_vars", "generators", "point", "field",
                 "coefficient_span")

    def __init__(self, degree: int, tangent_vars: Sequence[str],
                 vectors: Sequence[Sequence], point, field):
        tangent_vars = tuple(tangent_vars)
        basis_size = len(degree_block(len(tangent_vars), degree))
        for v in vectors:
            if len(v) != basis_size:
                raise DomainError(
                    f"coefficient vector of length {len(v)}; degree-{degree} "
                    f"basis has {basis_size} monomials"
                )
        span = Subspace(basis_size, [list(v) for v in vectors], field=field)
        generators = tuple(
            TangentForm.from_vector(tangent_vars, degree, row, field)
            for row in span.basis
        )
        self.degree = degree
        self.tangent_vars = tangent_vars
        self.generators = generators
        self.point = point
        self.field = field
        self.coefficient_span = span

    @classmethod
    def from_forms(cls, degree: int, tangent_vars: Sequence[str],
                   forms: Sequence, point, field) -> "LinearSystem":
        vectors = []
        for f in forms:
            if isinstance(f, Polynomial):
                f = TangentForm.from_polynomial(
                    f.extend_variables(tangent_vars), field, degree)
            vectors.append(f.coefficient_vector())
        return cls(degree, tangent_vars, vectors, point, field)

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @property
    def projective_dim(self) -> int:
        """dim |L| as a projective linear system (-1 when empty)."""
        return len(self.generators) - 1

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def monomial_basis(self) -> list[Exponents]:
        return degree_block(len(self.tangent_vars), self.degree)

    def span_equals(self, other: "LinearSystem") -> bool:
        return (self.degree == other.degree
                and span_contains(self.coefficient_span, other.coefficient_span)
                and span_contains(other.coefficient_span, self.coefficient_span))

    def span_equals_forms(self, forms: Sequence) -> bool:
        """Span comparison against explicitly given forms (Polynomials

        over the tangent variables or TangentForms)."""
        other = LinearSystem.from_forms(self.degree, self.tangent_vars, forms,
                                        self.point, self.field)
        return self.span_equals(other)

    def __repr__(self) -> str:
        return (f"LinearSystem(degree {self.degree}, {self.generator_count} "
                f"generators, at {self.point})")


def fundamental_form(f: Parameterization, m: int,
                     point: Sequence | None = None,
                     tangent_vars: Sequence[str] | None = None) -> LinearSystem:
    """The m-th fundamental form |Phi_m| at a point or generically.

    Applies the |I| = m jet rows to a kernel basis of the order-(m-1)
    jet matrix.  The generator count always equals s(m) - s(m-1); this
    dimension law is asserted on every call.
    """
    if m < 2:
        raise DomainError(
            f"fundamental forms start at m = 2 (the first form is the identity); got {m}"
        )
    jm = jet_matrix(f, m, point)
    upper_rows = [i for i, I in enumerate(jm.row_indices) if sum(I) <= m - 1]
    upper = jm.matrix.submatrix_rows(upper_rows)
    kernel_prev = kernel_basis(upper)
    kernel_full = kernel_basis(jm.matrix)
    top_indices = jm.top_block_indices()
    top = [jm.matrix.row(i) for i in top_indices]
    field = jm.matrix.field
    vectors = []
    for g in kernel_prev.basis:
        vec = []
        for row in top:
            total = field.zero()
            for a, b in zip(row, g):
                if a and b:
                    total = total + a * b
            vec.append(total)
        vectors.append(vec)
    if tangent_vars is None:
        tangent_vars = default_tangent_vars(f.source_dim)
    system = LinearSystem(m, tangent_vars, vectors,
                          "generic" if point is None else tuple(Fraction(v) for v in point),
                          field)
    expected = kernel_prev.dim - kernel_full.dim
    if system.generator_count != expected:
        raise InvariantViolation(
            f"|Phi_{m}| has {system.generator_count} independent generators but "
            f"s({m}) - s({m - 1}) = {expected}; dimension law violated"
        )
    return system


def jacobian_system(system: LinearSystem) -> LinearSystem:
    """Linear system spanned by all first partials of the generators."""
    if system.degree < 1:
        raise DomainError("Jacobian of a degree-0 system is undefined")
    forms = []
    for g in system.generators:
        for k in range(len(system.tangent_vars)):
            forms.append(g.partial(k))
    return LinearSystem.from_forms(system.degree - 1, system.tangent_vars,
                                   forms, system.point, system.field)


@dataclass
class JacobianReport:
    order: int
    contained: bool
    equal: bool
    jacobian_dim: int
    previous_dim: int
    note: str

    @property
    def ok(self) -> bool:
        return self.contained


def check_jacobian_containment(f: Parameterization, m: int,
                               point: Sequence | None = None) -> JacobianReport:
    """Check Jacobian(|Phi_m|) inside |Phi_{m-1}|; true by theorem, so a

    failure indicates an arithmetic bug or an invalid evaluation point."""
    if m < 3:
        raise DomainError(f"containment Jacobian(Phi_m) in Phi_(m-1) needs m >= 3, got {m}")
    current = fundamental_form(f, m, point)
    previous = fundamental_form(f, m - 1, point)
    jac = jacobian_system(current)
    contained = span_contains(previous.coefficient_span, jac.coefficient_span)
    equal = contained and jac.generator_count == previous.generator_count
    if contained:
        note = "containment holds"
    else:
        note = ("containment FAILED: the theorem guarantees it, so this "
                "signals an arithmetic bug or an invalid point")
    return JacobianReport(m, contained, equal, jac.generator_count,
                          previous.generator_count, note)


@dataclass
class PhibarReport:
    order: int
    holds: bool
    lower_order_vanishes: bool
    symmetric_part_matches: bool
    kernel_dim: int
    max_order_checked: int
    point_checked: tuple | None


def verify_phibar_relation(f: Parameterization, m: int,
                           point: Sequence | None = None) -> PhibarReport:
    """Verify that differentiating kernel vectors reproduces -m times the

    fundamental form.

    For every kernel basis vector g of the order-(m-1) jet matrix, two
    identities are checked symbolically over the function field:

      (a) sum_j d(g_j)/du_k * D_I x_j = 0 for all |I| <= m-2 (the map
          factors through the symmetric-power inclusion);
      (b) collecting the |I| = m-1 terms as coefficients of v_k v^I
          yields exactly -m times sum_j g_j D_I x_j on |I| = m.

    The multiset monomial du^I maps to v^I with coefficient 1; with that
    convention the -m identity is exact.  When a point is supplied, both
    sides are additionally specialized there.
    """
    if m < 2:
        raise DomainError(f"the relation starts at m = 2, got {m}")
    jm = jet_matrix(f, m, None)
    field = jm.matrix.field
    r = f.source_dim
    upper_rows = [i for i, I in enumerate(jm.row_indices) if sum(I) <= m - 1]
    kernel_prev = kernel_basis(jm.matrix.submatrix_rows(upper_rows))
    rows_by_index = {I: jm.matrix.row(i) for i, I in enumerate(jm.row_indices)}

    lower_ok = True
    symmetric_ok = True
    point_tuple = None if point is None else tuple(Fraction(v) for v in point)
    if point_tuple is not None:
        # The identity is established symbolically below, hence at every
        # point where the kernel specializes; evaluating the kernel here
        # surfaces DenominatorVanishes for invalid points.
        for g in kernel_prev.basis:
            for entry in g:
                entry.evaluate(point_tuple)

    for g in kernel_prev.basis:
        dg = [[entry.partial(k) for entry in g] for k in range(r)]
        # (a) lower-order components vanish identically.
        for I in jm.row_indices:
            if sum(I) > m - 2:
                continue
            row = rows_by_index[I]
            for k in range(r):
                total = field.zero()
                for a, b in zip(row, dg[k]):
                    total = total + a * b
                if not total.is_zero:
                    lower_ok = False
        # (b) the symmetric component equals -m times the fundamental form.
        phibar: dict[tuple[int, ...], RationalFunction] = {}
        for I in jm.row_indices:
            if sum(I) != m - 1:
                continue
            row = rows_by_index[I]
            for k in range(r):
                total = field.zero()
                for a, b in zip(row, dg[k]):
                    total = total + a * b
                J = I[:k] + (I[k] + 1,) + I[k + 1:]
                phibar[J] = phibar.get(J, field.zero()) + total
        for J in jm.row_indices:
            if sum(J) != m:
                continue
            row = rows_by_index[J]
            phi = field.zero()
            for a, b in zip(row, g):
                phi = phi + a * b
            difference = phibar.get(J, field.zero()) + phi * m
            if not difference.is_zero:
                symmetric_ok = False
    holds = lower_ok and symmetric_ok
    return PhibarReport(m, holds, lower_ok, symmetric_ok,
                        kernel_prev.dim, m, point_tuple)


@dataclass
class BaseLocusReport:
    has_base_point: bool
    common_factor: TangentForm | None
    factor_degree: int
    base_points: list[tuple[Fraction, Fraction]]
    note: str


def base_locus_pencil(system: LinearSystem) -> BaseLocusReport:
    """Base locus of a system of binary forms via the generator gcd."""
    if len(system.tangent_vars) != 2:
        raise UnsupportedAmbient(
            f"base locus detection needs binary forms; tangent space has "
            f"{len(system.tangent_vars)} variables"
        )
    if system.is_empty:
        return BaseLocusReport(True, None, -1, [],
                               "empty system: every direction is a base point")
    field = system.field
    # Common powers of the two tangent variables across all generators.
    val1 = min(min(e[0] for e in g.coeffs) for g in system.generators)
    val2 = min(min(e[1] for e in g.coeffs) for g in system.generators)
    stripped_degree = system.degree - val1 - val2
    lists = []
    for g in system.generators:
        coeffs = [field.zero()] * (stripped_degree + 1)
        for (e1, e2), value in g.coeffs.items():
            coeffs[e2 - val2] = value
        lists.append(coeffs)
    common = lists[0]
    for other in lists[1:]:
        common = gen_gcd(common, other)
        if len(common) == 1:
            break
    gcd_degree = len(common) - 1
    factor_coeffs = {}
    for i, value in enumerate(common):
        factor_coeffs[(val1 + gcd_degree - i, val2 + i)] = value
    factor = TangentForm(system.tangent_vars, val1 + val2 + gcd_degree,
                         factor_coeffs, field).scaled_monic()
    base_points: list[tuple[Fraction, Fraction]] = []
    if val1:
        base_points.append((Fraction(0), Fraction(1)))
    if val2:
        base_points.append((Fraction(1), Fraction(0)))
    note_parts = []
    if gcd_degree > 0:
        constant = all(
            not isinstance(v, RationalFunction) or v.is_constant()
            for v in common
        )
        if constant:
            scalar = [Fraction(v.as_scalar()) if isinstance(v, RationalFunction)
                      else Fraction(v) for v in common]
            inner = Polynomial(system.tangent_vars,
                               {(gcd_degree - i, i): c for i, c in enumerate(scalar)})
            for z in rational_zeros(inner):
                if z not in base_points:
                    base_points.append(z)
            note_parts.append("non-monomial gcd factor with constant coefficients")
        else:
            note_parts.append("gcd factor varies with the base point")
    has_base = factor.degree > 0
    note = "; ".join(note_parts) if note_parts else (
        "nontrivial common factor" if has_base else "generators share no factor")
    return BaseLocusReport(has_base, factor if has_base else None,
                           factor.degree if has_base else 0, base_points, note)


def contains_candidate_point(system: LinearSystem, direction: Sequence) -> bool:
    """True when every generator vanishes at the tangent direction."""
    if len(direction) != len(system.tangent_vars):
        raise DomainError(
            f"direction of length {len(direction)}, tangent space has "
            f"{len(system.tangent_vars)} variables"
        )
    if not any(bool(d) for d in direction):
        raise DomainError("the zero vector is not a tangent direction")
    for g in system.generators:
        if bool(g.evaluate(direction)):
            return False
    return True


@dataclass
class TangentConeReport:
    order: int
    form: TangentForm
    point: tuple | str


def hyperplane_tangent_cone(f: Parameterization, h: Sequence,
                            point: Sequence | None = None,
                            max_order: int = 12) -> TangentConeReport:
    """Initial form of a hyperplane section at the point.

    Finds the first order m at which the jet rows applied to h are not
    all zero and returns sum_{|I|=m} (sum_j h_j D_I x_j) v^I, the
    projectivized tangent cone of the section; it is a member of
    |Phi_m|.  The order-0 value must vanish (the hyperplane must pass
    through the point).
    """
    if len(h) != len(f.coords):
        raise DomainError(
            f"hyperplane vector of length {len(h)}; ambient space has "
            f"{len(f.coords)} coordinates"
        )
    cap = max_order
    if f.truncated_order is not None:
        cap = min(cap, f.truncated_order - 1)
    jm = jet_matrix(f, cap, point)
    field = jm.matrix.field
    hv = [field.coerce(e) for e in h]
    tangent_vars = default_tangent_vars(f.source_dim)

    def pairing(I: Exponents):
        row = jm.row_for(I)
        total = field.zero()
        for a, b in zip(row, hv):
            total = total + a * b
        return total

    zero_value = pairing((0,) * f.source_dim)
    if zero_value:
        raise HyperplaneMissesPoint(
            "the hyperplane does not vanish at the point (order-0 pairing nonzero)"
        )
    for m in range(1, cap + 1):
        coeffs = {}
        any_nonzero = False
        for I in jm.row_indices:
            if sum(I) != m:
                continue
            value = pairing(I)
            if value:
                any_nonzero = True
            coeffs[I] = value
        if any_nonzero:
            form = TangentForm(tangent_vars, m, coeffs, field)
            return TangentConeReport(m, form,
                                     "generic" if point is None
                                     else tuple(Fraction(v) for v in point))
    raise HyperplaneContainsAllOsculating(
        f"the hyperplane annihilates every jet up to order {cap}; it may "
        "contain the whole variety",
        max_order=cap,
    )
