"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, tagged with an ordered tuple of variable names.  The term
order used throughout is graded lexicographic: terms are compared first
by total degree, then lexicographically on the exponent tuple in the
declared variable order.  Enumerations of multi-indices (jet rows,
monomial bases of forms) list each degree block in descending
lexicographic order, so for variables (x, y) the degree-2 block is
x^2, x*y, y^2.

Derivatives come in two flavours: ordinary partials and divided (Hasse)
derivatives D_I = (1/I!) * d^I.  Divided derivatives are the primitive;
they extract Taylor coefficients without factorial denominators and
compose as D_I D_J = binom(I+J, I) D_{I+J}.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from ..errors import (
    InexactDivision,
    NotHomogeneous,
    VariableMismatch,
    ZeroDivisionRequested,
)

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(exps: Exponents) -> tuple:
    """Sort key realizing graded lexicographic order (max is leading)."""
    return (sum(exps), exps)


def degree_block(nvars: int, degree: int) -> list[Exponents]:
    """All exponent tuples of the given total degree, lex descending."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    block: list[Exponents] = []
    for first in range(degree, -1, -1):
        for rest in degree_block(nvars - 1, degree - first):
            block.append((first,) + rest)
    return block


def multi_indices_upto(nvars: int, max_degree: int) -> list[Exponents]:
    """Exponent tuples of degree 0..max_degree, degree-major order."""
    out: list[Exponents] = []
    for d in range(max_degree + 1):
        out.extend(degree_block(nvars, d))
    return out


def multi_index_factorial(exps: Exponents) -> int:
    result = 1
    for e in exps:
        result *= math.factorial(e)
    return result


def _coerce_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


class Polynomial:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, Scalar]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ValueError(
                    f"exponent tuple {exps} does not match {len(variables)} variables"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = _coerce_scalar(coeff)
            if coeff:
                clean[exps] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables, {})

    @classmethod
    def constant(cls, variables: Sequence[str], value: Scalar) -> "Polynomial":
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: value})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "Polynomial":
        variables = tuple(variables)
        if name not in variables:
            raise ValueError(f"{name!r} is not among variables {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Exponents, coeff: Scalar = 1) -> "Polynomial":
        return cls(variables, {tuple(exps): coeff})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def total_degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, index: int) -> int:
        """Largest exponent of the index-th variable; -1 for zero."""
        if not self.terms:
            return -1
        return max(e[index] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degrees = {sum(e) for e in self.terms}
        return len(degrees) <= 1

    def homogeneous_component(self, degree: int) -> "Polynomial":
        return Polynomial(
            self.variables,
            {e: c for e, c in self.terms.items() if sum(e) == degree},
        )

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop all terms of total degree exceeding max_degree."""
        return Polynomial(
            self.variables,
            {e: c for e, c in self.terms.items() if sum(e) <= max_degree},
        )

    def leading_term(self) -> tuple[Exponents, Fraction]:
        """Leading term under graded lexicographic order."""
        if not self.terms:
            raise ZeroDivisionRequested("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def sorted_terms(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(
                f"variables {self.variables} vs {other.variables}"
            )

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, Fraction(0)) + coeff
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _coerce_scalar(other)
            if not c:
                return Polynomial.zero(self.variables)
            return Polynomial(self.variables, {e: co * c for e, co in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(key, Fraction(0)) + c1 * c2
                if new:
                    terms[key] = new
                else:
                    terms.pop(key, None)
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = Polynomial.constant(self.variables, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _coerce_scalar(other)
            if not c:
                raise ZeroDivisionRequested("division by zero scalar")
            return self * (Fraction(1) / c)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- derivatives ---------------------------------------------------

    def partial(self, index: int) -> "Polynomial":
        """Ordinary first partial derivative by variable position."""
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e:
                key = exps[:index] + (e - 1,) + exps[index + 1:]
                terms[key] = terms.get(key, Fraction(0)) + coeff * e
        return Polynomial(self.variables, terms)

    def hasse_derivative(self, order: Exponents) -> "Polynomial":
        """Divided derivative D_I = (1/I!) d^I.

        Computed directly on exponents: the monomial u^E maps to
        binom(E, I) u^{E-I}, so no factorial denominators appear.
        """
        order = tuple(order)
        if len(order) != self.nvars:
            raise ValueError(f"order tuple {order} does not match {self.nvars} variables")
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            if any(e < o for e, o in zip(exps, order)):
                continue
            factor = 1
            for e, o in zip(exps, order):
                factor *= math.comb(e, o)
            key = tuple(e - o for e, o in zip(exps, order))
            new = terms.get(key, Fraction(0)) + coeff * factor
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return Polynomial(self.variables, terms)

    # -- evaluation and substitution ------------------------------------

    def evaluate(self, values: Sequence[Scalar]) -> Fraction:
        """Evaluate at a rational point."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        vals = [_coerce_scalar(v) for v in values]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for v, e in zip(vals, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def evaluate_in(self, values: Sequence):
        """Evaluate with values from any commutative ring.

        The values must support +, *, integer powers, and multiplication
        by Fraction.  Substituting polynomials performs composition.
        """
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        total = None
        power_cache: dict[tuple[int, int], object] = {}
        for exps, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = values[i] ** e
                    term = power_cache[key] * term
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def substitute_subset(self, assignment: Mapping[str, Scalar]) -> "Polynomial":
        """Substitute rational values for a subset of the variables.

        The result lives over the remaining variables, in declared order.
        """
        for name in assignment:
            if name not in self.variables:
                raise ValueError(f"{name!r} is not among variables {self.variables}")
        keep = [i for i, v in enumerate(self.variables) if v not in assignment]
        new_vars = tuple(self.variables[i] for i in keep)
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            c = coeff
            for i, v in enumerate(self.variables):
                if v in assignment and exps[i]:
                    c *= _coerce_scalar(assignment[v]) ** exps[i]
            key = tuple(exps[i] for i in keep)
            new = terms.get(key, Fraction(0)) + c
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
        return Polynomial(new_vars, terms)

    def rename_variables(self, new_names: Sequence[str]) -> "Polynomial":
        new_names = tuple(new_names)
        if len(new_names) != self.nvars:
            raise ValueError("variable count mismatch in rename")
        return Polynomial(new_names, self.terms)

    def extend_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Reinterpret over a larger variable tuple containing the current one."""
        variables = tuple(variables)
        positions = []
        for v in self.variables:
            if v not in variables:
                raise ValueError(f"{v!r} missing from extended variables {variables}")
            positions.append(variables.index(v))
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self.terms.items():
            new_exps = [0] * len(variables)
            for pos, e in zip(positions, exps):
                new_exps[pos] = e
            terms[tuple(new_exps)] = coeff
        return Polynomial(variables, terms)

    # -- content and exact division --------------------------------------

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators.

        Sign is chosen so that content(p) > 0; content(0) = 0.
        """
        if not self.terms:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for coeff in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(coeff.numerator))
            den_lcm = den_lcm * coeff.denominator // math.gcd(den_lcm, coeff.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive_part(self) -> "Polynomial":
        c = self.content()
        if not c:
            return self
        return self / c

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient self / divisor; raises InexactDivision otherwise.

        Standard leading-term division under the graded lex order: any
        true divisibility implies each intermediate leading term is
        divisible, so failure is detected at the first obstruction.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero:
            raise ZeroDivisionRequested("exact division by zero polynomial")
        quotient: dict[Exponents, Fraction] = {}
        remainder = self
        d_exps, d_coeff = divisor.leading_term()
        while not remainder.is_zero:
            r_exps, r_coeff = remainder.leading_term()
            q_exps = tuple(a - b for a, b in zip(r_exps, d_exps))
            if any(e < 0 for e in q_exps):
                raise InexactDivision("polynomial division leaves a remainder")
            q_coeff = r_coeff / d_coeff
            quotient[q_exps] = q_coeff
            remainder = remainder - divisor * Polynomial.monomial(self.variables, q_exps, q_coeff)
        return Polynomial(self.variables, quotient)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except InexactDivision:
            return False

    # -- printing --------------------------------------------------------

    def _format_term(self, exps: Exponents, coeff: Fraction) -> str:
        factors = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        if not factors:
            return str(coeff)
        body = "*".join(factors)
        if coeff == 1:
            return body
        if coeff == -1:
            return f"-{body}"
        return f"{coeff}*{body}"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            text = self._format_term(exps, coeff)
            if not parts:
                parts.append(text)
            elif text.startswith("-"):
                parts.append("- " + text[1:])
            else:
                parts.append("+ " + text)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


# -- univariate helpers ------------------------------------------------

def univariate_coefficients(p: Polynomial, index: int = 0) -> list[Fraction]:
    """Coefficient list (low to high degree) of a polynomial using only

    the index-th variable.  Raises if any other variable appears."""
    for exps in p.terms:
        for i, e in enumerate(exps):
            if e and i != index:
                raise ValueError(f"polynomial is not univariate in {p.variables[index]!r}")
    if p.is_zero:
        return []
    coeffs = [Fraction(0)] * (p.degree_in(index) + 1)
    for exps, coeff in p.terms.items():
        coeffs[exps[index]] = coeff
    return coeffs


def polynomial_from_coefficients(variables: Sequence[str], index: int,
                                 coeffs: Sequence[Scalar]) -> Polynomial:
    variables = tuple(variables)
    n = len(variables)
    terms = {}
    for e, c in enumerate(coeffs):
        exps = tuple(e if i == index else 0 for i in range(n))
        terms[exps] = c
    return Polynomial(variables, terms)


def _uni_trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def uni_divmod(f: list[Fraction], g: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder on coefficient lists (low to high)."""
    f = _uni_trim(list(f))
    g = _uni_trim(list(g))
    if not g:
        raise ZeroDivisionRequested("univariate division by zero")
    if len(f) < len(g):
        return [], f
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    r = list(f)
    inv_lead = Fraction(1) / g[-1]
    for i in range(len(q) - 1, -1, -1):
        coeff = r[i + len(g) - 1] * inv_lead
        q[i] = coeff
        if coeff:
            for j, gj in enumerate(g):
                r[i + j] -= coeff * gj
    return _uni_trim(q), _uni_trim(r)


def uni_gcd(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    """Monic greatest common divisor of coefficient lists."""
    a = _uni_trim(list(f))
    b = _uni_trim(list(g))
    while b:
        _, r = uni_divmod(a, b)
        a, b = b, r
    if a:
        inv = Fraction(1) / a[-1]
        a = [c * inv for c in a]
    return a


def uni_gcdex(f: list[Fraction], g: list[Fraction]) -> tuple[list[Fraction], list[Fraction], list[Fraction]]:
    """Extended Euclid: returns (s, t, d) with s*f + t*g = d, d monic gcd."""

    def add(a, b):
        out = [Fraction(0)] * max(len(a), len(b))
        for i, c in enumerate(a):
            out[i] += c
        for i, c in enumerate(b):
            out[i] += c
        return _uni_trim(out)

    def mul(a, b):
        if not a or not b:
            return []
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return _uni_trim(out)

    def scale(a, c):
        return _uni_trim([x * c for x in a])

    r0, r1 = _uni_trim(list(f)), _uni_trim(list(g))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = uni_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, add(s0, scale(mul(q, s1), Fraction(-1)))
        t0, t1 = t1, add(t0, scale(mul(q, t1), Fraction(-1)))
    if r0:
        inv = Fraction(1) / r0[-1]
        r0, s0, t0 = scale(r0, inv), scale(s0, inv), scale(t0, inv)
    return s0, t0, r0
