"""Classical Q-system on Kirillov-Reshetikhin characters.

In ``N = r + 1`` variables ``Q_{alpha,n} = s_{(n^alpha)}(x)`` satisfies

    Q_{alpha,n+1} Q_{alpha,n-1} = Q_{alpha,n}^2 - Q_{alpha+1,n} Q_{alpha-1,n}

with ``Q_{0,n} = 1`` and ``Q_{N,n} = (x_1 ... x_N)^n`` (gl_N normalization;
the sl boundary ``Q_{N,n} = 1`` is the specialization ``x_1 ... x_N = 1``).
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

from ..exact.mpoly import LaurentPolynomial, xgens
from ..exact.symmetric import rect_schur
from ..reports import FAIL, PASS, ExperimentReport

__all__ = ["kr_character", "classical_qsystem_check", "a1_orbit", "a1_conserved_quantity", "DegenerateOrbit"]


class DegenerateOrbit(ZeroDivisionError):
    def __init__(self, msg="degenerate orbit"):
        super().__init__(msg)


def kr_character(alpha: int, n: int, N: int) -> LaurentPolynomial:
    gens = xgens(N)
    if alpha == 0:
        return LaurentPolynomial.constant(gens, 1)
    if n < 0:
        raise ValueError("KR characters need n >= 0")
    return rect_schur(alpha, n, N, gens)


def classical_qsystem_check(N: int, n_max: int) -> ExperimentReport:
    """Check the recursion for ``1 <= alpha <= N-1`` and ``1 <= n <= n_max``."""
    if not 2 <= N <= 4:
        raise ValueError("classical check supports 2 <= N <= 4")
    if not 1 <= n_max <= 4:
        raise ValueError("classical check supports 1 <= n_max <= 4")
    start = time.perf_counter()
    gens = xgens(N)
    Q = {(a, n): kr_character(a, n, N) for a in range(N + 1) for n in range(n_max + 2)}
    # boundary: the top character is the n-th power of the determinant variable
    boundary_ok = all(
        Q[N, n] == LaurentPolynomial.monomial(gens, [n] * N) for n in range(n_max + 2)
    )
    failure = None
    checked = 0
    for n in range(1, n_max + 1):
        for a in range(1, N):
            lhs = Q[a, n + 1] * Q[a, n - 1]
            rhs = Q[a, n] * Q[a, n] - Q[a + 1, n] * Q[a - 1, n]
            checked += 1
            if lhs != rhs:
                e, c = (lhs - rhs).sorted_terms()[0]
                failure = {"alpha": a, "n": n, "monomial": list(e), "lhs": lhs.terms.get(e, 0), "rhs": rhs.terms.get(e, 0)}
                break
        if failure:
            break
    details = {"relations_checked": checked, "boundary_ok": boundary_ok}
    if failure:
        details["first_failure"] = failure
    return ExperimentReport(
        "qsystem-classical",
        {"nvars": N, "nmax": n_max},
        PASS if failure is None and boundary_ok else FAIL,
        details,
        time.perf_counter() - start,
    )


def a1_orbit(q0, q1, n_max: int) -> list[Fraction]:
    """``Q_{n+1} = (Q_n^2 - 1) / Q_{n-1}`` from ``(Q_0, Q_1)``."""
    Q = [Fraction(q0), Fraction(q1)]
    for n in range(1, n_max):
        if Q[n - 1] == 0:
            raise DegenerateOrbit()
        Q.append((Q[n] ** 2 - 1) / Q[n - 1])
    return Q


def a1_conserved_quantity(n_max: int, q0=None, q1=None, seed: int = 0) -> ExperimentReport:
    """``(Q_{n+1} + Q_{n-1}) / Q_n`` is constant along an ``A_1`` orbit.

    Without explicit initial data a rational pair is drawn from ``seed``.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    start = time.perf_counter()
    if q0 is None or q1 is None:
        # redraw until the orbit avoids zero; deterministic in the seed
        rng = random.Random(seed)
        while True:
            q0 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            q1 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            try:
                Q = a1_orbit(q0, q1, n_max)
            except DegenerateOrbit:
                continue
            if all(Q[1:n_max]):
                break
    else:
        Q = a1_orbit(q0, q1, n_max)
    values = []
    for n in range(1, n_max):
        if Q[n] == 0:
            raise DegenerateOrbit()
        values.append((Q[n + 1] + Q[n - 1]) / Q[n])
    ok = all(v == values[0] for v in values)
    details = {"orbit": Q, "values": values, "constant": values[0] if ok else None}
    return ExperimentReport(
        "qsystem-a1-conserved",
        {"q0": Fraction(q0), "q1": Fraction(q1), "nmax": n_max},
        PASS if ok else FAIL,
        details,
        time.perf_counter() - start,
    )
