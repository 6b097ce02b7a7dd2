"""Two-point function of tetravalent planar maps as truncated series in ``g``.

``R_n(g)`` counts maps whose two marked univalent vertices are at geodesic
distance at most ``n``.  It obeys

    R_n = 1 + g R_n (R_{n+1} + R_n + R_{n-1}),   R_{-1} = 0,

tends to ``R = (1 - sqrt(1 - 12 g)) / (6 g)`` and has the closed form

    R_n = R (1 - x^{n+1})(1 - x^{n+4}) / ((1 - x^{n+2})(1 - x^{n+3}))

with ``x + 1/x + 1 = 1/(g R^2)``, ``x = g + O(g^2)``.  (The constant 1 is
forced by the recursion: already at order ``g^2`` any other constant gives
``[g^2] R_0 != 9``.)
"""
from __future__ import annotations

import time
from fractions import Fraction

from .exact.series import TruncatedSeries
from .reports import FAIL, PASS, ExperimentReport

__all__ = [
    "GeodesicSeriesFamily",
    "limit_gf",
    "limit_gf_fixed_point",
    "soliton_x",
    "tau",
    "r_n_closed",
    "r_n_tau",
    "recursion_residual",
    "conserved_phi",
    "conserved_phi_check",
    "fixed_point_oracle",
    "coefficient_table",
    "soliton_report",
]


class OracleFailure(ArithmeticError):
    pass


def _series(coeffs, order, val=0):
    return TruncatedSeries([Fraction(c) for c in coeffs], order, val, "g")


def limit_gf(order: int) -> TruncatedSeries:
    """``R(g) = (1 - sqrt(1 - 12 g)) / (6 g)`` through ``g^order``.

    The numerator is expanded one order further and its constant term is
    checked to vanish before dividing by ``g``.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    root = _series([1, -12], order + 1).sqrt()
    numerator = 1 - root
    if numerator[0] != 0:
        raise ArithmeticError("numerator does not vanish at g = 0")
    return (numerator.shift(-1) * Fraction(1, 6)).truncate(order)


def limit_gf_fixed_point(order: int) -> TruncatedSeries:
    """Independent route: iterate ``R <- 1 + 3 g R^2``."""
    R = _series([1], order)
    g = _series([0, 1], order)
    for _ in range(order + 1):
        R = 1 + 3 * g * R * R
    return R


SOLITON_CONSTANT = 1


def soliton_x(order: int, R: TruncatedSeries | None = None, constant=SOLITON_CONSTANT) -> TruncatedSeries:
    """Power series ``x(g) = g + O(g^2)`` with ``x + 1/x + c = 1/(g R^2)``.

    Uses the fixed point ``x = g (x^2 + 1) / (1/R^2 - c g)``; the divisor has
    constant term 1, and each pass fixes one more coefficient.  ``constant``
    other than 1 is only useful for showing that it breaks the recursion.
    """
    R = limit_gf(order) if R is None else R
    g = _series([0, 1], order)
    divisor = 1 / (R * R) - constant * g
    x = _series([], order)
    for _ in range(order + 1):
        x = g * (x * x + 1) / divisor
    residual = x + 1 / x + constant - 1 / (g * R * R)
    # x has valuation 1, so 1/x is only known through g^(order-2)
    if any(residual[k] for k in range(residual.val, min(residual.order, order - 2) + 1)):
        raise ArithmeticError("soliton solve failed")
    return x


def tau(x: TruncatedSeries, n: int) -> TruncatedSeries:
    """Tau function ``1 - x^n``."""
    return 1 - x**n


def r_n_closed(n: int, order: int, R=None, x=None) -> TruncatedSeries:
    if n < -1:
        raise ValueError("n must be >= -1")
    R = limit_gf(order) if R is None else R
    x = soliton_x(order, R) if x is None else x
    num = (1 - x ** (n + 1)) * (1 - x ** (n + 4))
    den = (1 - x ** (n + 2)) * (1 - x ** (n + 3))
    return (R * num / den).truncate(order)


def r_n_tau(n: int, order: int, R=None, x=None) -> TruncatedSeries:
    """Same series written as ``R tau_{n+1} tau_{n+4} / (tau_{n+2} tau_{n+3})``."""
    R = limit_gf(order) if R is None else R
    x = soliton_x(order, R) if x is None else x
    return (R * tau(x, n + 1) * tau(x, n + 4) / (tau(x, n + 2) * tau(x, n + 3))).truncate(order)


class GeodesicSeriesFamily:
    """``R``, ``x`` and ``R_n`` for ``-1 <= n <= n_max`` at a fixed order."""

    def __init__(
        self,
        order: int,
        n_max: int,
        x_shift: TruncatedSeries | None = None,
        constant=SOLITON_CONSTANT,
    ):
        self.order = order
        self.R = limit_gf(order)
        self.x = soliton_x(order, self.R, constant)
        if x_shift is not None:
            self.x = self.x + x_shift
        self.n_max = n_max
        self.Rn = {n: r_n_closed(n, order, self.R, self.x) for n in range(-1, n_max + 1)}

    def __getitem__(self, n: int) -> TruncatedSeries:
        if n not in self.Rn:
            self.Rn[n] = r_n_closed(n, self.order, self.R, self.x)
        return self.Rn[n]


def recursion_residual(n: int, order: int, family: GeodesicSeriesFamily | None = None) -> TruncatedSeries:
    """``R_n - 1 - g R_n (R_{n+1} + R_n + R_{n-1})``; identically zero."""
    if n < 0:
        raise ValueError("n must be >= 0")
    fam = GeodesicSeriesFamily(order, n + 1) if family is None else family
    g = _series([0, 1], order)
    Rm, R0, Rp = fam[n - 1], fam[n], fam[n + 1]
    return (R0 - 1 - g * R0 * (Rp + R0 + Rm)).truncate(order)


def conserved_phi(x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
    """``x y (1 - g (x + y)) - x - y``."""
    g = _series([0, 1], min(x.order, y.order))
    return x * y * (1 - g * (x + y)) - x - y


def conserved_phi_check(n_max: int, order: int, family=None, replace: dict | None = None) -> ExperimentReport:
    """``phi(R_n, R_{n+1})`` is the same series for all ``0 <= n < n_max``.

    ``replace`` substitutes given members (a negative control).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    start = time.perf_counter()
    fam = GeodesicSeriesFamily(max(order, 1), n_max) if family is None else family
    members = {n: fam[n].truncate(order) for n in range(0, n_max + 1)}
    for n, s in (replace or {}).items():
        members[n] = s.truncate(order)
    R = fam.R.truncate(order)
    target = conserved_phi(R, R)
    first = None
    for n in range(n_max):
        value = conserved_phi(members[n], members[n + 1])
        k = value.first_difference(target)
        if k is not None:
            first = {"n": n, "order": k, "value": value[k], "expected": target[k]}
            break
    details = {"common_value": target}
    if first:
        details["first_failure"] = first
    return ExperimentReport(
        "geodesic-conserve",
        {"order": order, "nmax": n_max, "replaced": sorted(replace or {})},
        FAIL if first else PASS,
        details,
        time.perf_counter() - start,
    )


def fixed_point_oracle(n_max: int, order: int) -> dict[int, TruncatedSeries]:
    """Solve the recursion order by order from the boundary data alone.

    ``[g^k] R_n`` only involves order ``k-1`` coefficients of ``R_{n-1}``,
    ``R_n`` and ``R_{n+1}``.  The top member ``R_{n_max+1}`` is taken equal to
    the limit ``R`` (from ``R = 1 + 3 g R^2``), which is exact through order
    ``n_max + 1``; the stabilization ``[g^k] R_n = [g^k] R`` for ``n >= k``
    is then checked on every computed coefficient.
    """
    if n_max < order:
        raise ValueError("oracle needs n_max >= order")
    R = limit_gf_fixed_point(order)
    top = n_max + 1
    coeffs = {n: [Fraction(1)] for n in range(0, top)}
    coeffs[-1] = [Fraction(0)] * (order + 1)
    coeffs[top] = [R[k] for k in range(order + 1)]

    def conv(a, b, k):
        return sum(a[i] * b[k - i] for i in range(k + 1))

    for k in range(1, order + 1):
        new = {}
        for n in range(0, top):
            a = coeffs[n]
            s = [coeffs[n + 1][i] + a[i] + coeffs[n - 1][i] for i in range(k)]
            new[n] = conv(a, s, k - 1)
        for n, c in new.items():
            coeffs[n].append(c)
            if n >= k and c != R[k]:
                raise OracleFailure("oracle failure: stabilization violated")
    return {n: _series(coeffs[n], order) for n in range(-1, n_max + 1)}


def coefficient_table(order: int, n_max: int) -> list[list]:
    """Rows ``[n, [g^0]R_n, ..., [g^order]R_n]`` for the CSV export."""
    fam = GeodesicSeriesFamily(order, n_max)
    return [[n] + [fam[n][k] for k in range(order + 1)] for n in range(-1, n_max + 1)]


def soliton_report(order: int, n_max: int) -> ExperimentReport:
    """Recursion residuals, closed form vs oracle, and stabilization."""
    start = time.perf_counter()
    fam = GeodesicSeriesFamily(order, n_max + 1)
    failures = []
    for n in range(0, n_max + 1):
        res = recursion_residual(n, order, fam)
        if not res.is_zero():
            failures.append({"check": "recursion", "n": n, "order": res.val})
    oracle_order = min(order, 12)
    oracle = fixed_point_oracle(max(n_max, oracle_order), oracle_order)
    for n in range(-1, n_max + 1):
        k = oracle[n].first_difference(fam[n].truncate(oracle_order))
        if k is not None:
            failures.append({"check": "oracle", "n": n, "order": k})
    for n in range(0, n_max + 1):
        for k in range(0, min(n, order) + 1):
            if fam[n][k] != fam.R[k]:
                failures.append({"check": "stabilization", "n": n, "order": k})
    details = {
        "R": fam.R,
        "x": fam.x,
        "R_first_coefficients": [fam.R[k] for k in range(min(order, 3) + 1)],
        "oracle_order": oracle_order,
    }
    if failures:
        details["failures"] = failures[:10]
    return ExperimentReport(
        "geodesic-soliton",
        {"order": order, "nmax": n_max},
        FAIL if failures else PASS,
        details,
        time.perf_counter() - start,
    )
