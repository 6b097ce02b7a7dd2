"""Transfer matrices of 1+1 dimensional Lorentzian triangulations.

``T(g, a)[i, j]`` weighs one time slice with ``i`` up-pointing and ``j``
down-pointing triangles (weight ``g`` per triangle, ``a`` per adjacent pair
pointing the same way).  Two such matrices commute exactly when the invariant
``phi(g, a) = (1 - g^2 (1 - a^2)) / (a g)`` agrees; this module provides the
entries, the double generating function check and a truncated commutator
with a rigorous bound on the truncation error.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

import mpmath

from .exact.mpoly import LaurentPolynomial
from .exact.scalar import RationalFunction
from .reports import FAIL, PASS, ExperimentReport

__all__ = [
    "LorentzParams",
    "TruncatedTransferMatrix",
    "transfer_entry",
    "transfer_matrix",
    "genfun_check",
    "phi_invariant",
    "conjugate_parameter",
    "commutation_residual",
    "entry_bound",
]

WORKING_DPS = 60


@dataclass(frozen=True)
class LorentzParams:
    """Weights ``g`` (per triangle) and ``a`` (per same-direction pair).

    ``numeric`` marks a member whose ``g`` is a high-precision float because
    the conjugate equation had an irrational root.
    """

    g: object
    a: object
    numeric: bool = False

    def __post_init__(self):
        if not self.numeric:
            object.__setattr__(self, "g", _exact(self.g))
        object.__setattr__(self, "a", _exact(self.a))
        if not self.a or not self.g:
            raise ValueError("phi undefined: g and a must be nonzero")

    @property
    def is_rational(self) -> bool:
        return isinstance(self.g, Fraction) and isinstance(self.a, Fraction)

    def as_dict(self):
        return {"g": self.g, "a": self.a, "numeric": self.numeric}


def _exact(v):
    if isinstance(v, (RationalFunction, mpmath.mpf)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def transfer_entry(p: LorentzParams, i: int, j: int):
    if i < 0 or j < 0:
        raise ValueError("invalid state")
    g, a = (_mp(p.g), _mp(p.a)) if p.numeric else (p.g, p.a)
    ag = a * g
    inv_a2 = 1 / (a * a)
    total = sum(comb(i, k) * comb(j, k) * inv_a2**k for k in range(min(i, j) + 1))
    return ag ** (i + j) * total


@dataclass
class TruncatedTransferMatrix:
    params: LorentzParams
    size: int
    entries: list

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))


def transfer_matrix(p: LorentzParams, size: int) -> TruncatedTransferMatrix:
    if p.numeric:
        with mpmath.workdps(WORKING_DPS):
            rows = [[transfer_entry(p, i, j) for j in range(size)] for i in range(size)]
    else:
        rows = [[transfer_entry(p, i, j) for j in range(size)] for i in range(size)]
    return TruncatedTransferMatrix(p, size, rows)


# -- generating function -------------------------------------------------------

_ZW = ("z", "w")


def _truncate_total(f: LaurentPolynomial, order: int) -> LaurentPolynomial:
    return LaurentPolynomial(f.gens, {e: c for e, c in f.terms.items() if sum(e) <= order})


def genfun_series(p: LorentzParams, order: int, perturb: bool = False) -> LaurentPolynomial:
    """Expansion of ``1 / (1 - g a (z + w) - g^2 (1 - a^2) z w)`` to total order.

    ``perturb`` flips the sign of the ``z w`` term (a negative control).
    """
    g, a = p.g, p.a
    z = LaurentPolynomial.gen(_ZW, "z")
    w = LaurentPolynomial.gen(_ZW, "w")
    cross = g * g * (1 - a * a)
    if perturb:
        cross = -cross
    d = (z + w) * (g * a) + z * w * cross
    out = LaurentPolynomial.constant(_ZW, 1)
    power = LaurentPolynomial.constant(_ZW, 1)
    for _ in range(order):
        power = _truncate_total(power * d, order)
        out = out + power
    return out


def genfun_check(p: LorentzParams, order: int, perturb: bool = False) -> ExperimentReport:
    """Compare ``sum T_ij z^i w^j`` with the rational generating function."""
    if order < 1:
        raise ValueError("order must be >= 1")
    start = time.perf_counter()
    rhs = genfun_series(p, order, perturb)
    first = None
    for total in range(order + 1):
        for i in range(total, -1, -1):
            j = total - i
            lhs = transfer_entry(p, i, j)
            r = rhs.terms.get((i, j), 0)
            if lhs != r:
                first = {"monomial": f"z^{i} w^{j}", "i": i, "j": j, "matrix_entry": lhs, "expansion": r}
                break
        if first:
            break
    details = {"terms_checked": (order + 1) * (order + 2) // 2}
    if first:
        details["first_discrepancy"] = first
    return ExperimentReport(
        "lorentzian-genfun",
        {"g": p.g, "a": p.a, "order": order, "perturbed": perturb},
        FAIL if first else PASS,
        details,
        time.perf_counter() - start,
    )


# -- commuting family --------------------------------------------------------------


def phi_invariant(p: LorentzParams):
    g, a = (_mp(p.g), _mp(p.a)) if p.numeric else (p.g, p.a)
    if not g or not a:
        raise ValueError("phi undefined")
    return (1 - g * g * (1 - a * a)) / (a * g)


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def conjugate_parameter(p: LorentzParams, a_new) -> LorentzParams:
    """Member ``(g', a_new)`` of the commuting family through ``p``.

    Solves ``g'^2 (1 - a_new^2) + phi a_new g' - 1 = 0`` and keeps the smallest
    positive root (the branch with ``g' -> 0``).  Irrational roots come back as
    ``mpmath`` numbers with ``numeric=True``.
    """
    a_new = Fraction(a_new)
    if not a_new:
        raise ValueError("phi undefined: a must be nonzero")
    if a_new == p.a:
        return p
    if not p.is_rational:
        raise TypeError("conjugate_parameter needs rational (g, a)")
    phi = phi_invariant(p)
    A = 1 - a_new * a_new
    B = phi * a_new
    if A == 0:
        if B <= 0:
            raise ValueError("no conjugate in family")
        return LorentzParams(1 / B, a_new)
    disc = B * B + 4 * A
    if disc < 0:
        raise ValueError("no conjugate in family")
    root = _rational_sqrt(disc)
    if root is not None:
        roots = sorted(r for r in ((-B + root) / (2 * A), (-B - root) / (2 * A)) if r > 0)
        if not roots:
            raise ValueError("no conjugate in family")
        return LorentzParams(roots[0], a_new)
    with mpmath.workdps(WORKING_DPS):
        s = mpmath.sqrt(mpmath.mpf(disc.numerator) / disc.denominator)
        Am = mpmath.mpf(A.numerator) / A.denominator
        Bm = mpmath.mpf(B.numerator) / B.denominator
        roots = sorted(r for r in ((-Bm + s) / (2 * Am), (-Bm - s) / (2 * Am)) if r > 0)
    if not roots:
        raise ValueError("no conjugate in family")
    return LorentzParams(roots[0], a_new, numeric=True)


def _mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def entry_bound(p: LorentzParams, i: int, k: int):
    """Upper bound on ``|T_ik|``: ``|ag|^(i+k) (1 + max(i,k)/a^2)^min(i,k)``.

    Uses ``C(n, m) <= n^m`` on the larger binomial.
    """
    ag = abs(_mp(p.a) * _mp(p.g))
    inv_a2 = 1 / _mp(p.a) ** 2
    lo, hi = min(i, k), max(i, k)
    return ag ** (i + k) * (1 + hi * inv_a2) ** lo


def _tail(p1: LorentzParams, p2: LorentzParams, i: int, j: int, size: int):
    """Bound on ``sum_{k >= size} |T1_ik T2_kj|`` with a ratio-test remainder."""
    total = mpmath.mpf(0)
    k = size
    while True:
        term = entry_bound(p1, i, k) * entry_bound(p2, k, j)
        nxt = entry_bound(p1, i, k + 1) * entry_bound(p2, k + 1, j)
        total += term
        ratio = nxt / term if term else mpmath.mpf(0)
        # the term ratio decreases in k, so once below 1/2 the rest is geometric
        if ratio < mpmath.mpf(1) / 2 and nxt <= total * mpmath.mpf(10) ** (-WORKING_DPS):
            return total + nxt / (1 - ratio)
        k += 1
        if k > size + 100000:
            raise RuntimeError("tail bound did not converge")


def _matmul_window(A, B, rows, cols):
    n = len(B)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(cols)] for i in range(rows)]


def commutation_residual(
    p1: LorentzParams,
    p2: LorentzParams,
    size: int = 40,
    window: int = 10,
    tol: float = 1e-10,
) -> ExperimentReport:
    """Window of the commutator ``T1 T2 - T2 T1`` of ``size x size`` truncations.

    The truncated products differ from the infinite ones by at most the tail
    ``sum_{k >= size}``; the check passes when the window residual is within
    that bound plus ``tol``.
    """
    for p in (p1, p2):
        if abs(_mp(p.a) * _mp(p.g)) >= 1:
            raise ValueError("truncation not controlled: need |a g| < 1")
    if window > size // 2:
        raise ValueError("window must be at most size/2")
    start = time.perf_counter()
    exact = p1.is_rational and p2.is_rational
    with mpmath.workdps(WORKING_DPS):
        T1 = transfer_matrix(p1, size).entries
        T2 = transfer_matrix(p2, size).entries
        if not exact:
            T1 = [[_mp(x) for x in row] for row in T1]
            T2 = [[_mp(x) for x in row] for row in T2]
        AB = _matmul_window(T1, T2, window, window)
        BA = _matmul_window(T2, T1, window, window)
        residual = mpmath.mpf(0)
        worst = (0, 0)
        for i in range(window):
            for j in range(window):
                r = abs(_mp(AB[i][j] - BA[i][j]))
                if r > residual:
                    residual, worst = r, (i, j)
        tail = max(
            _tail(p1, p2, i, j, size) + _tail(p2, p1, i, j, size)
            for i in range(window)
            for j in range(window)
        )
        ok = residual <= tail + tol
        details = {
            "residual": residual,
            "tail_bound": tail,
            "tolerance": tol,
            "arithmetic": "exact" if exact else f"mpmath dps={WORKING_DPS}",
            "phi1": phi_invariant(p1),
            "phi2": phi_invariant(p2),
        }
        if not ok:
            details["counterexample"] = {"entry": list(worst), "value": residual}
    return ExperimentReport(
        "lorentzian-commute",
        {"p1": p1.as_dict(), "p2": p2.as_dict(), "size": size, "window": window},
        PASS if ok else FAIL,
        details,
        time.perf_counter() - start,
    )
