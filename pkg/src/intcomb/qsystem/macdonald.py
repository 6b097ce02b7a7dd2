"""Generalized Macdonald operators: t-limit, eigenvectors and DIM exchange."""
from __future__ import annotations

import time
from fractions import Fraction
from typing import Sequence

from ..exact.mpoly import LaurentPolynomial, xgens
from ..exact.scalar import RationalFunction, symbol
from ..exact.symmetric import dominates, monomial_symmetric, partitions
from ..reports import FAIL, PASS, ExperimentReport
from .msystem import probe_family
from .operators import MOperator, OpCache, ring_gens

__all__ = [
    "t_limit_check",
    "macdonald_polynomial",
    "macdonald_eigencheck",
    "exchange_kernel",
    "dim_exchange_check",
    "psi_series",
    "EigencheckFailed",
]


class EigencheckFailed(ArithmeticError):
    def __init__(self, msg="eigencheck failed"):
        super().__init__(msg)


def t_limit_check(N: int, degree_cap: int, ns: Sequence[int] = (-2, -1, 0, 1, 2)) -> ExperimentReport:
    """``t^{-a(N-a)} Mq_{a,n} f -> M_{a,n} f``: top t-degree and its coefficient."""
    start = time.perf_counter()
    cache = OpCache()
    failure = None
    checked = 0
    for lam, f in probe_family(N, degree_cap):
        for a in range(N + 1):
            top = a * (N - a)
            for n in ns:
                deformed = cache.apply(MOperator(a, n, N, deformed=True), f)
                plain = cache.apply(MOperator(a, n, N), f)
                checked += 1
                degree = deformed.degree("t")
                lead = deformed.coefficient({"t": top})
                # t^{-top} Mq - M must vanish as t -> oo
                if (degree is not None and degree > top) or lead != plain:
                    failure = {"alpha": a, "n": n, "test_polynomial": list(lam), "t_degree": degree, "expected_degree": top}
                    break
            if failure:
                break
        if failure:
            break
    details = {"cases": checked}
    if failure:
        details["first_failure"] = failure
    return ExperimentReport(
        "macdonald-tlimit",
        {"nvars": N, "degree_cap": degree_cap, "n_values": list(ns)},
        FAIL if failure else PASS,
        details,
        time.perf_counter() - start,
    )


def _eigenvalue(lam: Sequence[int], N: int):
    q, t = symbol("q"), symbol("t")
    lam = tuple(lam) + (0,) * (N - len(lam))
    return sum((q ** lam[i] * t ** (N - 1 - i) for i in range(N)), Fraction(0))


def _pad(lam, N):
    return tuple(lam) + (0,) * (N - len(lam))


def macdonald_polynomial(lam: Sequence[int], N: int, cache: OpCache | None = None):
    """Monic ``P_lam`` as ``{mu: coefficient}`` on monomial symmetric functions.

    Solves ``(D - e_lam) P = 0`` with ``D = Mq_{1,0}`` going down a linear
    extension of dominance.  Also returns the matrix entries ``[m_nu] D m_mu``.
    """
    lam = tuple(p for p in lam if p)
    if len(lam) > N:
        raise ValueError("partition exceeds variable count")
    cache = cache or OpCache()
    gens = ring_gens(N)
    names = gens[:N]
    basis = sorted(partitions(sum(lam), N), reverse=True)
    basis = [mu for mu in basis if _pad(mu, N) <= _pad(lam, N)]
    D = {}
    for mu in basis:
        image = cache.apply(MOperator(1, 0, N, deformed=True), monomial_symmetric(mu, N, gens))
        coeffs = image.coefficients(names)
        for nu in basis:
            c = coeffs.get(_pad(nu, N), Fraction(0))
            if c and not dominates(mu, nu):
                raise EigencheckFailed("eigencheck failed: operator is not triangular")
            D[nu, mu] = c
    e_lam = _eigenvalue(lam, N)
    if D[lam, lam] != e_lam:
        raise EigencheckFailed()
    a = {lam: Fraction(1)}
    for nu in basis[1:]:
        s = sum((D[nu, mu] * a[mu] for mu in a), Fraction(0))
        gap = D[nu, nu] - e_lam
        if not gap:
            if s:
                raise EigencheckFailed()
            a[nu] = Fraction(0)
            continue
        a[nu] = -s / gap
    return {mu: c for mu, c in a.items() if c}, D


def _clear_denominators(coeffs: dict, gens) -> LaurentPolynomial:
    """``L * sum a_mu m_mu`` with ``L`` the product of the distinct denominators."""
    dens = []
    for c in coeffs.values():
        if isinstance(c, RationalFunction) and not c.is_laurent():
            d = RationalFunction(c.den)
            if d not in dens:
                dens.append(d)
    L = Fraction(1)
    for d in dens:
        L = L * d
    N = sum(1 for g in gens if g.startswith("x"))
    out = LaurentPolynomial(gens, {})
    for mu, c in coeffs.items():
        scaled = c * L
        if isinstance(scaled, RationalFunction) and not scaled.is_laurent():
            raise EigencheckFailed()
        out = out + LaurentPolynomial.from_scalar(gens, scaled) * monomial_symmetric(mu, N, gens)
    return out, L


def macdonald_eigencheck(lam: Sequence[int], N: int) -> ExperimentReport:
    if N > 3 or sum(lam) > 4:
        raise ValueError("eigencheck supports |lam| <= 4 and N <= 3")
    start = time.perf_counter()
    cache = OpCache()
    gens = ring_gens(N)
    coeffs, _ = macdonald_polynomial(lam, N, cache)
    P, L = _clear_denominators(coeffs, gens)
    e = _eigenvalue(lam, N)
    image = cache.apply(MOperator(1, 0, N, deformed=True), P)
    ok = image == P * LaurentPolynomial.from_scalar(gens, e)
    details = {"eigenvalue": e, "coefficients": {",".join(map(str, mu)) or "()": c for mu, c in coeffs.items()}}
    if not ok:
        details["reason"] = "eigencheck failed"
    return ExperimentReport(
        "macdonald-eigen",
        {"partition": list(lam), "nvars": N},
        PASS if ok else FAIL,
        details,
        time.perf_counter() - start,
    )


# -- DIM exchange -------------------------------------------------------------------------


def exchange_kernel(inverted: bool = False) -> dict[tuple[int, int], LaurentPolynomial]:
    """``{(k, l): [z^k w^l] g(z, w)}`` for ``g = (z - q w)(z - w/t)(z - t w/q)``."""
    gens = ("z", "w", "q", "t")
    z, w = LaurentPolynomial.gen(gens, "z"), LaurentPolynomial.gen(gens, "w")
    q = LaurentPolynomial.gen(gens, "q")
    t = LaurentPolynomial.gen(gens, "t")
    tinv = LaurentPolynomial.monomial(gens, {"t": -1})
    qinv = LaurentPolynomial.monomial(gens, {"q": -1})
    g = (z - q * w) * (z - tinv * w) * (z - qinv * t * w)
    if inverted:
        g = g.invert(["q", "t"])
    out = {}
    for e, c in g.terms.items():
        out.setdefault((e[0], e[1]), {})[(0, 0, e[2], e[3])] = c
    return {k: LaurentPolynomial(gens, v) for k, v in out.items()}


def _kernel_in(N: int, inverted: bool):
    gens = ring_gens(N)
    return {
        k: LaurentPolynomial(gens, {(0,) * N + e[2:]: c for e, c in v.terms.items()})
        for k, v in exchange_kernel(inverted).items()
    }


def _t_to_q(f: LaurentPolynomial) -> LaurentPolynomial:
    iq, it = f.gens.index("q"), f.gens.index("t")
    out = {}
    for e, c in f.terms.items():
        e2 = list(e)
        e2[iq] += e2[it]
        e2[it] = 0
        out[tuple(e2)] = out.get(tuple(e2), 0) + c
    return LaurentPolynomial(f.gens, out)


def dim_exchange_check(
    window: int,
    N: int,
    degree_cap: int,
    inverted: bool = False,
    swapped: bool = False,
    t_equals_q: bool = False,
) -> ExperimentReport:
    """Mode form of ``g(z,w) e(z) e(w) + g(w,z) e(w) e(z) = 0``.

    The coefficient of ``z^m w^n`` is
    ``sum_{k+l=3} g_kl (E_{m-k} E_{n-l} + E_{n-k} E_{m-l})`` with
    ``E_j = Mq_{1,j}``; the ``q^{j/2}`` mode factors are common to all terms
    and drop out.  ``inverted`` runs the f-current; ``swapped`` uses
    ``g(z,w)`` in both terms (a negative control).
    """
    if window > 2 or N > 3:
        raise ValueError("DIM check supports window <= 2 and N <= 3")
    start = time.perf_counter()
    gens = ring_gens(N)
    cache = OpCache()
    g = _kernel_in(N, inverted)
    family = probe_family(N, degree_cap)

    def E(j):
        return MOperator(1, j, N, deformed=True, inverted=inverted)

    failure = None
    checked = 0
    for m in range(-window, window + 1):
        for n in range(-window, window + 1):
            for lam, f in family:
                residual = LaurentPolynomial(gens, {})
                for (k, l), c in g.items():
                    first = cache.word([E(m - k), E(n - l)], f)
                    if swapped:
                        second = cache.word([E(n - l), E(m - k)], f)
                    else:
                        second = cache.word([E(n - k), E(m - l)], f)
                    residual = residual + c * (first + second)
                if t_equals_q:
                    residual = _t_to_q(residual)
                checked += 1
                if residual:
                    failure = {"m": m, "n": n, "test_polynomial": list(lam), "residual_terms": len(residual)}
                    break
            if failure:
                break
        if failure:
            break
    details = {"cases": checked, "current": "f" if inverted else "e"}
    if failure:
        details["first_failure"] = failure
    return ExperimentReport(
        "dim-exchange",
        {"window": window, "nvars": N, "degree_cap": degree_cap, "inverted": inverted, "swapped": swapped, "t_equals_q": t_equals_q},
        FAIL if failure else PASS,
        details,
        time.perf_counter() - start,
    )


def psi_series(N: int, order: int, sign: int = 1) -> list[LaurentPolynomial]:
    """Coefficients of ``z^{sign k}``, ``0 <= k <= order``, in ``psi^{sign}(z)``.

    Half-integer powers of ``q`` are written with ``s = q^{1/2}``; the
    generators are ``x1..xN, s, t``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    gens = xgens(N, ("s", "t"))
    s = LaurentPolynomial.gen(gens, "s")
    sinv = LaurentPolynomial.monomial(gens, {"s": -1})
    t = LaurentPolynomial.gen(gens, "t")
    tinv = LaurentPolynomial.monomial(gens, {"t": -1})

    def geometric(c, y):
        # 1/(1 - c y) through y^order
        out, p = [], LaurentPolynomial.constant(gens, 1)
        for _ in range(order + 1):
            out.append(p)
            p = p * c * y
        return out

    def mul(a, b):
        return [sum((a[i] * b[k - i] for i in range(k + 1)), LaurentPolynomial(gens, {})) for k in range(order + 1)]

    series = [LaurentPolynomial.constant(gens, 1)] + [LaurentPolynomial(gens, {})] * order
    for i in range(N):
        y = LaurentPolynomial.monomial(gens, {gens[i]: sign})
        zero = LaurentPolynomial(gens, {})
        num1 = [LaurentPolynomial.constant(gens, 1), -(sinv * t * y)] + [zero] * (order - 1)
        num2 = [LaurentPolynomial.constant(gens, 1), -(s * tinv * y)] + [zero] * (order - 1)
        factor = mul(mul(num1[: order + 1], num2[: order + 1]), mul(geometric(sinv, y), geometric(s, y)))
        series = mul(series, factor)
    return series
