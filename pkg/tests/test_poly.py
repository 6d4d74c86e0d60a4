"""Unit tests for the exact polynomial rings.

Expected values come from independent oracles: hand-computed examples,
dictionary-level derivative code local to this file, or construction
(multiply first, then check division recovers the factor).
"""

import math
import random
from fractions import Fraction

import pytest

from oscform.errors import (
    DomainError,
    InexactDivision,
    NotHomogeneous,
    NotInvertible,
    ParseError,
    ZeroDivisionRequested,
)
from oscform.polyring import (
    Polynomial,
    QuotientRingElement,
    RationalFunction,
    binary_form_gcd,
    degree_block,
    form_from_coefficients,
    multi_indices_upto,
    parse_polynomial,
    parse_rational,
    rational_zeros,
    resultant_binary,
    solve_series_system,
    split_rational_linear_factors,
    truncated_compose,
    truncated_inverse,
    truncated_multiply,
    uni_divmod,
    uni_gcd,
    uni_gcdex,
)

VARS = ("x", "y")


def random_polynomial(rng, variables=VARS, max_degree=4, terms=5):
    out = {}
    n = len(variables)
    for _ in range(terms):
        exps = tuple(rng.randint(0, max_degree) for _ in range(n))
        out[exps] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Polynomial(variables, out)


# -- dictionary-level derivative oracle, independent of Polynomial ----------

def naive_partial(terms, index):
    out = {}
    for exps, coeff in terms.items():
        e = exps[index]
        if e:
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            out[key] = out.get(key, Fraction(0)) + coeff * e
    return {k: v for k, v in out.items() if v}


def naive_iterated(terms, order):
    for index, count in enumerate(order):
        for _ in range(count):
            terms = naive_partial(terms, index)
    return terms


def test_constructor_drops_zero_coefficients():
    p = Polynomial(VARS, {(1, 0): 2, (0, 1): 0})
    assert p.terms == {(1, 0): Fraction(2)}


def test_constructor_rejects_bad_exponents():
    with pytest.raises(ValueError):
        Polynomial(VARS, {(1,): 1})
    with pytest.raises(ValueError):
        Polynomial(VARS, {(-1, 0): 1})
    with pytest.raises(ValueError):
        Polynomial(("x", "x"), {})


def test_arithmetic_ring_laws():
    rng = random.Random(11)
    for _ in range(25):
        a = random_polynomial(rng)
        b = random_polynomial(rng)
        c = random_polynomial(rng)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Polynomial.zero(VARS)
        assert a * 1 == a and a * 0 == Polynomial.zero(VARS)


def test_power_matches_repeated_multiplication():
    p = parse_polynomial("x - 2*y + 1", VARS)
    explicit = Polynomial.constant(VARS, 1)
    for e in range(5):
        assert p ** e == explicit
        explicit = explicit * p


def test_str_parse_round_trip():
    rng = random.Random(23)
    for _ in range(40):
        p = random_polynomial(rng)
        assert parse_polynomial(str(p), VARS) == p
    assert parse_polynomial("0", VARS) == Polynomial.zero(VARS)


def test_parse_rejects_negative_exponent_with_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x^-1", VARS)
    assert info.value.line == 1
    assert info.value.column == 3


def test_parse_rejects_unknown_variable_and_trailing_input():
    with pytest.raises(ParseError):
        parse_polynomial("x + z", VARS)
    with pytest.raises(ParseError):
        parse_polynomial("2 x", VARS)
    with pytest.raises(ParseError):
        parse_polynomial("", VARS)


def test_parse_rejects_division_by_zero():
    with pytest.raises(ParseError):
        parse_rational("1/0", VARS)
    with pytest.raises(ParseError):
        parse_rational("1/(x - x)", VARS)


def test_parse_rational_reduces():
    f = parse_rational("(x^2 - y^2)/(x - y)", VARS)
    assert f == parse_rational("x + y", VARS)
    assert f.is_polynomial()


def test_parse_polynomial_rejects_true_quotient():
    with pytest.raises(ParseError):
        parse_polynomial("1/x", VARS)


def test_degree_block_order_is_lex_descending():
    assert degree_block(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert degree_block(3, 2)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]
    assert multi_indices_upto(2, 2) == [
        (0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_hasse_derivative_known_values():
    p = parse_polynomial("x^3*y^2", VARS)
    # D_(2,1) x^3 y^2 = C(3,2) C(2,1) x y = 6 x y.
    assert p.hasse_derivative((2, 1)) == parse_polynomial("6*x*y", VARS)
    assert p.hasse_derivative((4, 0)) == Polynomial.zero(VARS)
    assert p.hasse_derivative((0, 0)) == p


def test_hasse_matches_iterated_derivative_oracle():
    rng = random.Random(37)
    for _ in range(30):
        p = random_polynomial(rng)
        order = (rng.randint(0, 3), rng.randint(0, 3))
        factorial = math.factorial(order[0]) * math.factorial(order[1])
        expected = naive_iterated(dict(p.terms), order)
        assert (p.hasse_derivative(order) * factorial).terms == expected


def test_hasse_composition_law():
    rng = random.Random(41)
    for _ in range(30):
        p = random_polynomial(rng)
        i = (rng.randint(0, 2), rng.randint(0, 2))
        j = (rng.randint(0, 2), rng.randint(0, 2))
        k = tuple(a + b for a, b in zip(i, j))
        factor = math.comb(k[0], i[0]) * math.comb(k[1], i[1])
        assert p.hasse_derivative(j).hasse_derivative(i) == \
            p.hasse_derivative(k) * factor


def test_evaluate_and_substitute():
    p = parse_polynomial("x^2*y - 3*y + 1", VARS)
    assert p.evaluate((2, Fraction(1, 2))) == 2 - Fraction(3, 2) + 1
    q = p.substitute_subset({"x": 2})
    assert q.variables == ("y",)
    assert q == parse_polynomial("y + 1", ("y",))


def test_evaluate_in_composes_polynomials():
    p = parse_polynomial("x^2 + y", VARS)
    u = parse_polynomial("x + 1", VARS)
    v = parse_polynomial("x*y", VARS)
    assert p.evaluate_in([u, v]) == parse_polynomial("x^2 + 2*x + x*y + 1", VARS)


def test_exact_div_inverts_multiplication():
    rng = random.Random(53)
    for _ in range(25):
        a = random_polynomial(rng)
        b = random_polynomial(rng)
        if b.is_zero:
            continue
        assert (a * b).exact_div(b) == a


def test_exact_div_detects_remainder():
    with pytest.raises(InexactDivision):
        parse_polynomial("x*y + 1", VARS).exact_div(parse_polynomial("x", VARS))
    with pytest.raises(ZeroDivisionRequested):
        parse_polynomial("x", VARS).exact_div(Polynomial.zero(VARS))


def test_homogeneous_components_sum_to_polynomial():
    rng = random.Random(59)
    p = random_polynomial(rng, terms=8)
    total = Polynomial.zero(VARS)
    for d in range(p.total_degree() + 1):
        piece = p.homogeneous_component(d)
        assert piece.is_homogeneous()
        total = total + piece
    assert total == p
    assert p.truncate(2) == sum(
        (p.homogeneous_component(d) for d in range(3)), Polynomial.zero(VARS))


def test_uni_gcd_and_gcdex_identities():
    rng = random.Random(61)
    for _ in range(20):
        f = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 5))]
        g = [Fraction(rng.randint(-5, 5)) for _ in range(rng.randint(1, 5))]
        if not any(f) or not any(g):
            continue
        d = uni_gcd(f, g)
        s, t, d2 = uni_gcdex(f, g)
        assert d == d2
        assert d[-1] == 1
        # s*f + t*g = d, checked coefficientwise.
        acc = [Fraction(0)] * (len(f) + len(g) + len(d))
        for i, a in enumerate(s):
            for j, b in enumerate(f):
                acc[i + j] += a * b
        for i, a in enumerate(t):
            for j, b in enumerate(g):
                acc[i + j] += a * b
        while acc and not acc[-1]:
            acc.pop()
        assert acc == list(d)
        _, rf = uni_divmod(f, d)
        _, rg = uni_divmod(g, d)
        assert rf == [] and rg == []


# -- binary forms -------------------------------------------------------------

V = ("v1", "v2")


def test_rational_zeros_of_constructed_product():
    # (v1 - 2 v2)(3 v1 + v2) v2 vanishes at (1:1/2), (1:-3), (1:0).
    p = parse_polynomial("(x - 2*y)*(3*x + y)*y", ("x", "y")).rename_variables(V)
    assert rational_zeros(p) == [
        (Fraction(1), Fraction(0)),
        (Fraction(1), Fraction(-3)),
        (Fraction(1), Fraction(1, 2)),
    ]


def test_rational_zeros_at_both_coordinate_points():
    p = parse_polynomial("x*y", ("x", "y")).rename_variables(V)
    assert rational_zeros(p) == [
        (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]


def test_resultant_hand_value_and_common_factor():
    f = parse_polynomial("v1*v2", V)
    g = parse_polynomial("v1^2 + v2^2", V)
    # Sylvester determinant of [0,1,0] and [1,0,1], expanded by hand.
    assert resultant_binary(f, g) == 1
    h = parse_polynomial("(v1 - v2)*(v1 + 2*v2)", V)
    k = parse_polynomial("(v1 - v2)*v2", V)
    assert resultant_binary(h, k) == 0


def test_resultant_multiplicative_in_linear_factors():
    # res(prod (v1 - a_i v2), prod (v1 - b_j v2)) = prod (b_j - a_i).
    rng = random.Random(67)
    v1 = Polynomial.variable(V, "v1")
    v2 = Polynomial.variable(V, "v2")
    for _ in range(10):
        roots_a = [Fraction(rng.randint(-4, 4)) for _ in range(2)]
        roots_b = [Fraction(rng.randint(-4, 4)) for _ in range(2)]
        f = Polynomial.constant(V, 1)
        for a in roots_a:
            f = f * (v1 - v2 * a)
        g = Polynomial.constant(V, 1)
        for b in roots_b:
            g = g * (v1 - v2 * b)
        expected = Fraction(1)
        for a in roots_a:
            for b in roots_b:
                expected *= b - a
        assert resultant_binary(f, g) == expected


def test_resultant_rejects_non_forms():
    with pytest.raises(NotHomogeneous):
        resultant_binary(parse_polynomial("v1 + 1", V), parse_polynomial("v2", V))


def test_binary_form_gcd_recovers_common_factor():
    common = parse_polynomial("v1 - 2*v2", V)
    f = common * common * parse_polynomial("v1 + v2", V)
    g = common * parse_polynomial("v1 - v2", V) * 3
    assert binary_form_gcd(f, g) == common
    coprime = binary_form_gcd(parse_polynomial("v1", V), parse_polynomial("v2", V))
    assert coprime == Polynomial.constant(V, 1)


def test_split_rational_linear_factors():
    p = parse_polynomial("(v1^2 + v2^2)*(v1 - v2)", V)
    zeros, remainder = split_rational_linear_factors(p)
    assert zeros == [(Fraction(1), Fraction(1))]
    assert remainder == parse_polynomial("v1^2 + v2^2", V)
    squared = parse_polynomial("(v1 - v2)^2*v2", V)
    zeros, remainder = split_rational_linear_factors(squared)
    assert sorted(zeros) == [(Fraction(1), Fraction(0)),
                             (Fraction(1), Fraction(1)),
                             (Fraction(1), Fraction(1))]
    assert remainder == Polynomial.constant(V, 1)


def test_form_from_coefficients_round_trip():
    p = form_from_coefficients(V, [Fraction(2), Fraction(0), Fraction(-1)])
    assert p == parse_polynomial("2*v1^2 - v2^2", V)


# -- rational functions -------------------------------------------------------

def test_rational_function_equality_is_cross_multiplication():
    a = parse_rational("(x + y)/(x - y)", VARS)
    b = parse_rational("(x^2 + 2*x*y + y^2)/(x^2 - y^2)", VARS)
    assert a == b


def test_rational_function_field_laws():
    rng = random.Random(71)
    for _ in range(10):
        num = random_polynomial(rng, terms=3)
        den = random_polynomial(rng, terms=3)
        if num.is_zero or den.is_zero:
            continue
        f = RationalFunction(num, den)
        assert f - f == 0
        assert f * (1 / f) == 1
        assert (f + 1) - 1 == f


def test_rational_function_quotient_rule():
    f = parse_rational("x/(y + 1)", VARS)
    assert f.partial(0) == parse_rational("1/(y + 1)", VARS)
    assert f.partial(1) == parse_rational("0 - x/((y + 1)^2)", VARS)


def test_rational_hasse_derivative_divides_by_factorial():
    f = parse_rational("x^4/(y + 1)", VARS)
    ordinary = f
    for _ in range(3):
        ordinary = ordinary.partial(0)
    assert f.hasse_derivative((3, 0)) == ordinary * Fraction(1, 6)


def test_rational_evaluate_raises_on_vanishing_denominator():
    from oscform.errors import DenominatorVanishes
    f = parse_rational("x/(x - y)", VARS)
    with pytest.raises(DenominatorVanishes):
        f.evaluate((1, 1))
    assert f.evaluate((2, 1)) == 2


# -- truncated series ---------------------------------------------------------

def test_truncated_multiply_drops_high_degrees():
    a = parse_polynomial("1 + x + x^2", VARS)
    b = parse_polynomial("1 - x", VARS)
    assert truncated_multiply(a, b, 2) == Polynomial.constant(VARS, 1)
    assert truncated_multiply(a, b, 10) == a * b


def test_truncated_inverse_is_a_series_inverse():
    rng = random.Random(73)
    for _ in range(10):
        p = random_polynomial(rng, terms=4)
        p = p - Polynomial.constant(VARS, p.constant_term()) + 1
        inv = truncated_inverse(p, 5)
        assert truncated_multiply(p, inv, 5) == Polynomial.constant(VARS, 1)
    with pytest.raises(ZeroDivisionRequested):
        truncated_inverse(parse_polynomial("x", VARS), 3)


def test_truncated_compose_matches_full_composition():
    g = parse_polynomial("x^2 + 3*y", VARS)
    u = parse_polynomial("x + y^2", VARS)
    v = parse_polynomial("x*y", VARS)
    full = g.evaluate_in([u, v])
    assert truncated_compose(g, [u, v], 3) == full.truncate(3)


def test_solve_series_system_explicit_graph():
    # x3 = x1^2 + x1 x2 solved from its own implicit equation.
    names = ("x1", "x2", "x3")
    g = parse_polynomial("x3 - x1^2 - x1*x2", names)
    sol = solve_series_system([g], free=[0, 1], dep=[2],
                              point=[0, 0, 0], order=4)
    assert sol[0] == parse_polynomial("x1^2 + x1*x2", ("x1", "x2"))


def test_solve_series_system_square_root_series():
    # w^2 = 1 + u around (0, 1): binomial series computed in the test.
    names = ("u", "w")
    g = parse_polynomial("w^2 - u - 1", names)
    sol = solve_series_system([g], free=[0], dep=[1], point=[0, 1], order=5)
    expected = {}
    half = Fraction(1, 2)
    for k in range(6):
        coeff = Fraction(1)
        for i in range(k):
            coeff *= (half - i) / (i + 1)
        expected[(k,)] = coeff
    assert sol[0] == Polynomial(("u",), expected)


def test_solve_series_system_rejects_singular_base():
    names = ("u", "w")
    g = parse_polynomial("w^2 - u", names)
    with pytest.raises(DomainError):
        solve_series_system([g], free=[0], dep=[1], point=[0, 0], order=3)


# -- quotient rings -----------------------------------------------------------

def test_quotient_ring_square_root_of_two():
    mod = [-2, 0, 1]
    s = QuotientRingElement.generator(mod)
    assert s * s == 2
    assert (1 + s) * (s - 1) == 1
    assert (1 + s).inverse() == s - 1
    assert (s ** 4) == 4


def test_quotient_ring_division_and_powers():
    mod = [1, 0, 1]
    s = QuotientRingElement.generator(mod)
    assert s * s == -1
    assert 1 / s == -s
    assert s ** (-2) == -1


def test_quotient_ring_reports_non_invertible():
    mod = [-1, 0, 1]
    s = QuotientRingElement.generator(mod)
    with pytest.raises(NotInvertible):
        (s + 1).inverse()
    with pytest.raises(ZeroDivisionRequested):
        QuotientRingElement(mod, [0]).inverse()


def test_quotient_ring_validates_modulus():
    with pytest.raises(DomainError):
        QuotientRingElement([0, 0, 1], [1])
    with pytest.raises(DomainError):
        QuotientRingElement([1, 2], [1])
    with pytest.raises(DomainError):
        QuotientRingElement([3], [1])
