"""Cyclotomic arithmetic tests.

The oracle here is naive dense polynomial arithmetic modulo the n-th
cyclotomic polynomial (coefficients from sympy), which is independent of the
sparse canonical-form machinery under test.  Values are compared through
their power-basis coordinate vectors.
"""

import math
import random
from fractions import Fraction

import pytest
from sympy import cyclotomic_poly, Symbol

from sympref.cyclo import (
    Cyclotomic,
    ParseError,
    format_literal,
    parse_literal,
    root_of_unity,
    zumbroich_exponents,
)


def phi_coeffs(n: int) -> list[Fraction]:
    x = Symbol("x")
    poly = cyclotomic_poly(n, x).as_poly(x)
    return [Fraction(int(c)) for c in reversed(poly.all_coeffs())]


def poly_mod_phi(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    """Reduce a dense polynomial in E(n) modulo phi_n by long division."""
    phi = phi_coeffs(n)
    d = len(phi) - 1
    work = list(coeffs) + [Fraction(0)] * max(0, d - len(coeffs))
    for k in range(len(work) - 1, d - 1, -1):
        c = work[k]
        if c:
            for i, p in enumerate(phi):
                work[k - d + i] -= c * p
    return tuple(work[:d])


def power_coords(value: Cyclotomic, n: int) -> tuple[Fraction, ...]:
    assert n % value.conductor == 0
    scale = n // value.conductor
    dense = [Fraction(0)] * n
    for j, c in value.items:
        dense[(j * scale) % n] += c
    return poly_mod_phi(dense, n)


def oracle_product(a: Cyclotomic, b: Cyclotomic, n: int) -> tuple[Fraction, ...]:
    ca = power_coords(a, n)
    cb = power_coords(b, n)
    out = [Fraction(0)] * (len(ca) + len(cb))
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                if y:
                    out[i + j] += x * y
    return poly_mod_phi(out, n)


def random_value(rng: random.Random, conductors=(1, 3, 4, 5, 8, 9, 12, 15, 20)) -> Cyclotomic:
    n = rng.choice(conductors)
    coeffs = {}
    for _ in range(rng.randint(0, 4)):
        coeffs[rng.randrange(n)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Cyclotomic(n, coeffs)


# -- frozen expected values --------------------------------------------------


def test_sqrt5_squares_to_five():
    sqrt5 = 1 + 2 * root_of_unity(5) + 2 * root_of_unity(5, 4)
    assert sqrt5.conductor == 5
    assert sqrt5.items == ((1, 1), (2, -1), (3, -1), (4, 1))
    square = sqrt5 * sqrt5
    assert square == 5
    assert power_coords(square, 5) == oracle_product(sqrt5, sqrt5, 5)


def test_alpha_times_minus_two_i():
    i = root_of_unity(4)
    alpha = (i - 1) / 2
    assert alpha * (-2 * i) == 1 + i
    assert (alpha * (-2 * i)).items == ((0, 1), (1, 1))


def test_inverse_of_one_minus_i():
    i = root_of_unity(4)
    value = (1 - i).inverse()
    assert value == (1 + i) / 2
    assert value.items == ((0, Fraction(1, 2)), (1, Fraction(1, 2)))
    assert value * (1 - i) == 1


def test_sixth_root_is_minus_third_root_squared():
    z6 = root_of_unity(6)
    assert z6.conductor == 3
    assert z6.items == ((2, -1),)
    assert abs(z6.numeric() - complex(0.5, 3**0.5 / 2)) < 1e-9


def test_conductor_minimality_spot_checks():
    assert root_of_unity(12, 3).conductor == 4   # E(12)^3 = i
    assert root_of_unity(8, 2).conductor == 4
    assert (root_of_unity(4) ** 2).conductor == 1
    assert root_of_unity(4) ** 2 == -1
    assert sum((root_of_unity(3, k) for k in range(3)), Cyclotomic()) == 0
    assert sum((root_of_unity(5, k) for k in range(1, 5)), Cyclotomic()) == -1
    assert root_of_unity(9).items == ((4, -1), (7, -1))


def test_zumbroich_basis_sizes_and_known_exponents():
    from sympy import totient

    assert zumbroich_exponents(12) == [4, 7, 8, 11]
    for n in (1, 3, 4, 5, 8, 9, 12, 16, 15, 20, 24, 45):
        assert len(zumbroich_exponents(n)) == int(totient(n))
    with pytest.raises(ValueError):
        zumbroich_exponents(6)


def test_root_of_unity_rejects_nonpositive_order():
    with pytest.raises(ValueError):
        root_of_unity(0, 1)
    with pytest.raises(ValueError):
        root_of_unity(-5)


# -- algebraic properties -----------------------------------------------------


def test_field_axioms_on_seeded_samples():
    rng = random.Random(0)
    for _ in range(200):
        a, b, c = (random_value(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        assert a * 1 == a
        if not b.is_zero():
            assert (a / b) * b == a
            assert b * b.inverse() == 1


def test_products_match_polynomial_oracle():
    rng = random.Random(1)
    for _ in range(120):
        a, b = random_value(rng), random_value(rng)
        prod = a * b
        n = 1
        for v in (a, b, prod):
            n = n * v.conductor // math.gcd(n, v.conductor)
        assert power_coords(prod, n) == oracle_product(a, b, n)


def test_sums_match_polynomial_oracle():
    rng = random.Random(2)
    for _ in range(120):
        a, b = random_value(rng), random_value(rng)
        total = a + b
        n = 1
        for v in (a, b, total):
            n = n * v.conductor // math.gcd(n, v.conductor)
        ca, cb = power_coords(a, n), power_coords(b, n)
        assert power_coords(total, n) == tuple(x + y for x, y in zip(ca, cb))


def test_canonical_form_has_no_zero_coefficients_and_basis_support():
    rng = random.Random(3)
    for _ in range(150):
        a = random_value(rng)
        basis = set(zumbroich_exponents(a.conductor))
        for j, c in a.items:
            assert c != 0
            assert j in basis


def test_equal_values_from_different_routes_are_identical():
    # the same number reached along different arithmetic routes must agree
    # structurally, not just numerically
    i = root_of_unity(4)
    z3 = root_of_unity(3)
    lhs = (1 + i) * (1 + z3)
    rhs = 1 + i + z3 + i * z3
    assert lhs.conductor == rhs.conductor
    assert lhs.items == rhs.items
    assert hash(lhs) == hash(rhs)
    assert root_of_unity(12, 4) == z3
    assert root_of_unity(20, 5) == root_of_unity(4)


def test_conjugation_is_an_involutive_automorphism():
    rng = random.Random(4)
    for _ in range(100):
        a, b = random_value(rng), random_value(rng)
        assert a.conjugate().conjugate() == a
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert abs(a.conjugate().numeric() - a.numeric().conjugate()) < 1e-9


def test_galois_action():
    a = root_of_unity(5) + 2
    assert a.galois(-1) == a.conjugate()
    assert a.galois(2).galois(3) == a.galois(6 % 5)
    with pytest.raises(ValueError):
        a.galois(5)


def test_numeric_shadow_is_multiplicative_and_additive():
    rng = random.Random(5)
    for _ in range(100):
        a, b = random_value(rng), random_value(rng)
        assert abs((a * b).numeric() - a.numeric() * b.numeric()) < 1e-9
        assert abs((a + b).numeric() - (a.numeric() + b.numeric())) < 1e-9


def test_power_and_negative_power():
    z = root_of_unity(7)
    assert z**7 == 1
    assert z**-1 == z.conjugate()
    assert (2 * z) ** 3 == 8 * root_of_unity(7, 3)


def test_rational_hash_agreement():
    assert Cyclotomic.from_rational(Fraction(3, 2)) == Fraction(3, 2)
    assert hash(Cyclotomic.from_rational(Fraction(3, 2))) == hash(Fraction(3, 2))
    assert hash(Cyclotomic.from_rational(7)) == hash(7)
    assert Cyclotomic() == 0


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        root_of_unity(3) / Cyclotomic()
    with pytest.raises(ZeroDivisionError):
        Cyclotomic().inverse()


# -- literals -----------------------------------------------------------------


def test_parse_format_round_trip_on_samples():
    rng = random.Random(6)
    for _ in range(150):
        a = random_value(rng)
        assert parse_literal(format_literal(a)) == a


def test_parse_known_literals():
    assert parse_literal("1/2") == Fraction(1, 2)
    assert parse_literal("-1/2*(E(4)-1)") == (1 - root_of_unity(4)) / 2
    assert parse_literal("E(5)^4") == root_of_unity(5, 4)
    assert parse_literal("2+3*E(8)^-1") == 2 + 3 * root_of_unity(8, 7)
    assert parse_literal(" ( E(3) + E(3)^2 ) ") == -1
    assert format_literal(Cyclotomic()) == "0"
    assert format_literal(parse_literal("E(6)")) == "-E(3)^2"


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_literal("1+")
    assert err.value.position == 2
    with pytest.raises(ParseError):
        parse_literal("E(0)")
    with pytest.raises(ParseError):
        parse_literal("2*'x'")
    with pytest.raises(ParseError):
        parse_literal("(1+2")
    with pytest.raises(ParseError):
        parse_literal("1/0")
