from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from intcomb.exact import (
    InexactDivision,
    LaurentPolynomial,
    NonInvertibleSeries,
    NotSymmetric,
    RationalFunction,
    TruncatedSeries,
    mpoly_exact_div,
    partitions,
    schur_expand,
    schur_polynomial,
    series_arith,
    series_sqrt,
    symbol,
    xgens,
)
from intcomb.exact.mpoly import determinant, vandermonde


def series(coeffs, order, var="g"):
    return TruncatedSeries([Fraction(c) for c in coeffs], order, 0, var)


# -- scalars ----------------------------------------------------------------


def test_rational_function_normal_form():
    q = symbol("q")
    assert (q * q - 1) / (q - 1) == q + 1
    assert q / q == Fraction(1)
    assert (q + 1) / (2 * q + 2) == Fraction(1, 2)
    assert isinstance((q + 1) / (2 * q + 2), Fraction)
    assert isinstance(q - q, Fraction)
    assert hash((q * q - 1) / (q - 1)) == hash(q + 1)


def test_rational_function_variant_tags():
    q, t = symbol("q"), symbol("t")
    assert (q / (1 - q)).variant == "q"
    assert (q * t / (1 - t)).variant == "qt"
    assert RationalFunction.constant(3).variant == "rational"


def test_denominator_sign_is_fixed():
    q = symbol("q")
    a = 1 / (1 - q)
    b = -1 / (q - 1)
    assert a == b and str(a) == str(b)


def test_zero_denominator_rejected():
    q = symbol("q")
    with pytest.raises(ZeroDivisionError):
        q / (q - q)


def test_invert_params():
    q, t = symbol("q"), symbol("t")
    assert (q * t + 1).invert_params() == (1 + q * t) / (q * t)


small = st.integers(-3, 3)


@st.composite
def scalars(draw):
    q, t = symbol("q"), symbol("t")
    a, b, c, d = (draw(small) for _ in range(4))
    num = a + b * q + c * t * q
    den = 1 + d * d * q * t
    return num / den


@settings(max_examples=40, deadline=None)
@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


# -- series -----------------------------------------------------------------


def test_geometric_series_division():
    out = series_arith(series([1], 3), series([1, -1], 3), "div")
    assert out.coefficient_list() == [1, 1, 1, 1]


def test_series_product_truncates():
    out = series_arith(series([1, 1], 2), series([1, -1], 2), "mul")
    assert out.coefficient_list() == [1, 0, -1]


def test_identity_divisor():
    out = series_arith(series([1, -12], 1), series([1], 1), "div")
    assert out.coefficient_list() == [1, -12]


def test_non_invertible_series():
    with pytest.raises(NonInvertibleSeries, match="non-invertible series"):
        series([1], 3) / series([0], 3)


def test_sqrt_examples():
    assert series_sqrt(series([1, -2], 2)).coefficient_list() == [1, -1, Fraction(-1, 2)]
    assert series_sqrt(series([1], 5)).coefficient_list() == [1, 0, 0, 0, 0, 0]
    s = series_sqrt(series([1, -12], 3))
    assert s.coefficient_list() == [1, -6, -18, -108]
    # oracle: square back
    assert (s * s).truncate(3) == series([1, -12], 3)


def test_sqrt_rejects_non_square_constant():
    with pytest.raises(ValueError, match="no series square root"):
        series_sqrt(series([2, 1], 3))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.integers(1, 8))
def test_sqrt_squares_back(tail, order):
    a = series([1] + tail, order)
    s = series_sqrt(a)
    assert (s * s).truncate(order) == a.truncate(order)


def test_laurent_series_inverse():
    g = series([0, 1], 4)
    inv = 1 / (g * series([1, 1], 4))
    assert inv.val == -1
    assert inv[-1] == 1 and inv[0] == -1


# -- Laurent polynomials --------------------------------------------------------


G2 = xgens(2)


def x(i, gens=G2):
    return LaurentPolynomial.gen(gens, f"x{i}")


def test_exact_division_examples():
    assert mpoly_exact_div(x(1) ** 2 - x(2) ** 2, x(1) - x(2)) == x(1) + x(2)
    p = x(1) ** 3 + 2 * x(2)
    assert mpoly_exact_div(p, LaurentPolynomial.constant(G2, 1)) == p
    num = determinant([[x(1) ** 2, 1], [x(2) ** 2, 1]], G2)
    assert mpoly_exact_div(num, vandermonde(G2, G2)) == x(1) + x(2)


def test_inexact_division_raises():
    with pytest.raises(InexactDivision, match="remainder"):
        mpoly_exact_div(x(1) + 1, x(1) - x(2))


def test_laurent_exponents():
    m = LaurentPolynomial.monomial(G2, (-2, 1))
    assert (m * x(1) ** 2) == x(2)
    assert mpoly_exact_div(x(1) ** -1 - x(2) ** -1, x(2) - x(1)) == LaurentPolynomial.monomial(G2, (-1, -1))


def test_canonical_serialization():
    a = x(1) * 2 + x(2) ** 2 - 3
    b = LaurentPolynomial(G2, {(0, 0): -3, (0, 2): 1, (1, 0): 2})
    assert a.to_text() == b.to_text() == "[x1,x2]{1*[0,2], 2*[1,0], -3*[0,0]}"


def test_no_stored_zeros():
    p = x(1) - x(1)
    assert not p.terms


poly_terms = st.dictionaries(
    st.tuples(st.integers(-2, 3), st.integers(-2, 3)), st.integers(-4, 4), min_size=1, max_size=5
)


@settings(max_examples=40, deadline=None)
@given(poly_terms, poly_terms)
def test_division_inverts_multiplication(a, b):
    A, B = LaurentPolynomial(G2, a), LaurentPolynomial(G2, b)
    if not B:
        return
    assert mpoly_exact_div(A * B, B) == A


# -- symmetric functions --------------------------------------------------------------


def test_schur_examples():
    assert schur_polynomial((1,), 2) == x(1) + x(2)
    assert schur_polynomial((), 3) == LaurentPolynomial.constant(xgens(3), 1)
    assert schur_polynomial((2, 1), 2) == x(1) ** 2 * x(2) + x(1) * x(2) ** 2


def test_schur_too_many_parts():
    with pytest.raises(ValueError, match="partition exceeds variable count"):
        schur_polynomial((1, 1, 1), 2)


def test_schur_expand_examples():
    assert schur_expand(schur_polynomial((2, 1), 2)) == [((2, 1), 1)]
    assert schur_expand((x(1) + x(2)) ** 2) == [((2,), 1), ((1, 1), 1)]
    assert schur_expand(LaurentPolynomial(G2, {})) == []


def test_schur_expand_rejects_non_symmetric():
    with pytest.raises(NotSymmetric, match="not symmetric"):
        schur_expand(x(1) ** 2 + x(2))


def test_schur_expand_parametric_coefficients():
    gens = xgens(2, ("q",))
    q = LaurentPolynomial.gen(gens, "q")
    f = schur_polynomial((2,), 2, gens) + q * schur_polynomial((1, 1), 2, gens)
    assert schur_expand(f, gens[:2]) == [((2,), 1), ((1, 1), symbol("q"))]


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_schur_expand_idempotent(N):
    for d in range(6):
        for lam in partitions(d, N):
            assert schur_expand(schur_polynomial(lam, N)) == [(lam, 1)]
