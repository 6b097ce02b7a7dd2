"""Exact arithmetic kernel shared by every experiment."""
from .mpoly import InexactDivision, LaurentPolynomial, vandermonde, xgens
from .scalar import ExactScalar, RationalFunction, as_scalar, scalar_str, symbol
from .series import NonInvertibleSeries, TruncatedSeries
from .symmetric import (
    NotSymmetric,
    dominates,
    monomial_symmetric,
    partitions,
    rect_schur,
    schur_expand,
    schur_polynomial,
    schur_reconstruct,
)


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    """Binary series arithmetic by name (``add``, ``sub``, ``mul``, ``div``)."""
    if a.var != b.var:
        raise ValueError("series in different variables")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return (a * b).truncate(min(a.order, b.order))
    if op == "div":
        return a / b
    raise ValueError(f"unknown series operation {op!r}")


def series_sqrt(a: TruncatedSeries) -> TruncatedSeries:
    return a.sqrt()


def mpoly_exact_div(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    return num.exact_div(den)
