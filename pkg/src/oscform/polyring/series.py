"""Truncated multivariate power series built on sparse polynomials.

A series truncated at total degree d is just a Polynomial with no terms
above degree d; the helpers here keep that invariant through products,
composition, and inversion.  solve_series_system runs Newton iteration
for an implicit system g(x_free, x_dep) = 0 around a point with
invertible dependent Jacobian; each sweep doubles the correct order, so
reaching order d costs O(log d) sweeps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import DomainError, InvariantViolation, ZeroDivisionRequested
from .binform import _fraction_determinant
from .poly import Polynomial


def truncated_multiply(a: Polynomial, b: Polynomial, max_degree: int) -> Polynomial:
    """Product with all terms above max_degree dropped.

    Terms that cannot contribute are skipped before multiplying.
    """
    terms: dict[tuple[int, ...], Fraction] = {}
    b_items = [(e, c, sum(e)) for e, c in b.terms.items()]
    for e1, c1 in a.terms.items():
        d1 = sum(e1)
        if d1 > max_degree:
            continue
        budget = max_degree - d1
        for e2, c2, d2 in b_items:
            if d2 > budget:
                continue
            key = tuple(x + y for x, y in zip(e1, e2))
            new = terms.get(key, Fraction(0)) + c1 * c2
            if new:
                terms[key] = new
            else:
                terms.pop(key, None)
    return Polynomial(a.variables, terms)


def truncated_power(a: Polynomial, exponent: int, max_degree: int) -> Polynomial:
    result = Polynomial.constant(a.variables, 1)
    for _ in range(exponent):
        result = truncated_multiply(result, a, max_degree)
    return result


def truncated_compose(g: Polynomial, args: Sequence[Polynomial], max_degree: int) -> Polynomial:
    """Substitute a series for each variable of g, truncating throughout."""
    if len(args) != g.nvars:
        raise ValueError(f"expected {g.nvars} series, got {len(args)}")
    target_vars = args[0].variables if args else ()
    for a in args:
        if a.variables != target_vars:
            raise ValueError("substituted series use different variables")
    total = Polynomial.zero(target_vars)
    power_cache: dict[tuple[int, int], Polynomial] = {}

    def arg_power(i: int, e: int) -> Polynomial:
        if e == 0:
            return Polynomial.constant(target_vars, 1)
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = truncated_multiply(arg_power(i, e - 1), args[i], max_degree)
        return power_cache[key]

    for exps, coeff in g.terms.items():
        term = Polynomial.constant(target_vars, coeff)
        for i, e in enumerate(exps):
            if e:
                term = truncated_multiply(term, arg_power(i, e), max_degree)
                if term.is_zero:
                    break
        total = total + term
    return total


def truncated_inverse(a: Polynomial, max_degree: int) -> Polynomial:
    """Multiplicative inverse of a series with nonzero constant term."""
    c = a.constant_term()
    if not c:
        raise ZeroDivisionRequested("series with zero constant term has no inverse")
    result = Polynomial.constant(a.variables, Fraction(1) / c)
    precision = 1
    while precision <= max_degree:
        precision *= 2
        cut = min(precision - 1, max_degree)
        correction = 2 - truncated_multiply(a.truncate(cut), result, cut)
        result = truncated_multiply(result, correction, cut)
    return result


def _solve_linear_series(matrix: list[list[Polynomial]], rhs: list[Polynomial],
                         max_degree: int) -> list[Polynomial]:
    """Solve M x = rhs over truncated series; M(0) must be invertible."""
    n = len(rhs)
    m = [row[:] for row in matrix]
    b = rhs[:]
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k].constant_term()), None)
        if pivot is None:
            raise DomainError("linear series system is singular at the base point")
        m[k], m[pivot] = m[pivot], m[k]
        b[k], b[pivot] = b[pivot], b[k]
        inv = truncated_inverse(m[k][k], max_degree)
        m[k] = [truncated_multiply(inv, e, max_degree) for e in m[k]]
        b[k] = truncated_multiply(inv, b[k], max_degree)
        for i in range(n):
            if i != k and not m[i][k].is_zero:
                factor = m[i][k]
                m[i] = [e - truncated_multiply(factor, p, max_degree)
                        for e, p in zip(m[i], m[k])]
                b[i] = b[i] - truncated_multiply(factor, b[k], max_degree)
    return b


def solve_series_system(equations: Sequence[Polynomial],
                        free: Sequence[int],
                        dep: Sequence[int],
                        point: Sequence[Fraction],
                        order: int,
                        series_vars: Sequence[str] | None = None) -> list[Polynomial]:
    """Solve g_i(x) = 0 for the dependent coordinates as truncated series.

    The equations live over one variable tuple; `free` and `dep` are
    disjoint index lists covering it, and `point` is a solution of the
    system.  The result expresses each dependent coordinate as a series
    in offsets u_k = x_{free_k} - point_{free_k}, truncated past total
    degree `order`; the constant terms are the point values.
    """
    if not equations:
        raise ValueError("no equations supplied")
    variables = equations[0].variables
    free = list(free)
    dep = list(dep)
    if sorted(free + dep) != list(range(len(variables))):
        raise ValueError("free and dependent indices must partition the variables")
    if len(dep) != len(equations):
        raise DomainError(
            f"{len(equations)} equations cannot determine {len(dep)} coordinates"
        )
    point = [Fraction(v) for v in point]
    if series_vars is None:
        series_vars = tuple(variables[i] for i in free)
    else:
        series_vars = tuple(series_vars)

    for g in equations:
        if g.evaluate(point):
            raise DomainError(f"base point does not satisfy {g}")

    jacobian = [[g.partial(j) for j in dep] for g in equations]
    j0 = [[Fraction(row[j].evaluate(point)) for j in range(len(dep))]
          for row in jacobian]
    if not _fraction_determinant([row[:] for row in j0]):
        raise DomainError("dependent Jacobian is singular at the base point")

    def offsets() -> list[Polynomial]:
        out = []
        for k, idx in enumerate(free):
            u = Polynomial.variable(series_vars, series_vars[k])
            out.append(u + point[idx])
        return out

    free_series = offsets()
    solution = [Polynomial.constant(series_vars, point[i]) for i in dep]

    def assemble() -> list[Polynomial]:
        args: list[Polynomial] = [None] * len(variables)  # type: ignore[list-item]
        for k, idx in enumerate(free):
            args[idx] = free_series[k]
        for k, idx in enumerate(dep):
            args[idx] = solution[k]
        return args

    max_sweeps = max(order, 1).bit_length() + 2
    for _ in range(max_sweeps):
        args = assemble()
        residual = [truncated_compose(g, args, order) for g in equations]
        if all(r.is_zero for r in residual):
            return solution
        jac = [[truncated_compose(entry, args, order) for entry in row]
               for row in jacobian]
        delta = _solve_linear_series(jac, [-r for r in residual], order)
        solution = [(s + d).truncate(order) for s, d in zip(solution, delta)]
    args = assemble()
    residual = [truncated_compose(g, args, order) for g in equations]
    if all(r.is_zero for r in residual):
        return solution
    raise InvariantViolation("series Newton iteration failed to converge")
