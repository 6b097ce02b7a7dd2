"""Difference operators ``M_{alpha,n}`` and their t-deformation.

Both families have the shape

    sum_{|I| = alpha} x_I^n  prod_{i in I, j not in I} K(x_i, x_j) / (x_i - x_j)  Gamma_I

with ``K = x_i`` (the M-system operators) or ``K = t x_i - x_j`` (generalized
Macdonald operators), and ``Gamma_i`` the shift ``x_i -> q x_i``.  Each term is
brought over the Vandermonde ``prod_{a<b} (x_a - x_b)``; the sum of numerators
is divided exactly, so a nonzero remainder means the input was not symmetric
or the operator identity failed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ..exact.mpoly import InexactDivision, LaurentPolynomial, vandermonde, xgens

__all__ = [
    "MOperator",
    "OperatorIdentityViolated",
    "ring_gens",
    "m_apply",
    "mac_apply",
    "apply_op",
    "apply_word",
    "OpCache",
]

PARAMS = ("q", "t")


class OperatorIdentityViolated(ArithmeticError):
    def __init__(self, msg="operator identity violated"):
        super().__init__(msg)


@lru_cache(maxsize=None)
def ring_gens(N: int) -> tuple[str, ...]:
    """Generators ``x1..xN, q, t`` shared by every operator computation."""
    return xgens(N, PARAMS)


@dataclass(frozen=True)
class MOperator:
    """``M_{alpha,n}`` (``deformed=False``) or the t-deformed operator.

    ``inverted`` applies ``q -> 1/q`` and ``t -> 1/t`` to the whole operator,
    shift included.
    """

    alpha: int
    n: int
    N: int
    deformed: bool = False
    inverted: bool = False

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("need at least one variable")
        if not 0 <= self.alpha <= self.N:
            raise ValueError("alpha must lie in [0, N]")

    def __str__(self):
        name = "Mq" if self.deformed else "M"
        inv = "'" if self.inverted else ""
        return f"{name}{inv}[{self.alpha},{self.n}]"


@lru_cache(maxsize=None)
def _term_prefactors(N: int, alpha: int, deformed: bool, inverted: bool):
    """``(I, numerator prefactor)`` pairs, excluding the ``x_I^n`` factor."""
    gens = ring_gens(N)
    xs = [LaurentPolynomial.gen(gens, g) for g in gens[:N]]
    t = LaurentPolynomial.monomial(gens, {"t": -1 if inverted else 1})
    out = []
    for I in combinations(range(N), alpha):
        inside = set(I)
        pre = LaurentPolynomial.constant(gens, 1)
        sign = 1
        for a in range(N):
            for b in range(a + 1, N):
                if (a in inside) == (b in inside):
                    pre = pre * (xs[a] - xs[b])
                elif b in inside:
                    sign = -sign
        for i in I:
            for j in range(N):
                if j in inside:
                    continue
                pre = pre * (t * xs[i] - xs[j] if deformed else xs[i])
        out.append((I, pre * sign))
    return tuple(out)


@lru_cache(maxsize=None)
def _vandermonde(N: int) -> LaurentPolynomial:
    gens = ring_gens(N)
    return vandermonde(gens, gens[:N])


def _shift(f: LaurentPolynomial, I, power: int) -> LaurentPolynomial:
    for i in I:
        f = f.scale_variable(f.gens[i], "q", power)
    return f


def apply_op(op: MOperator, f: LaurentPolynomial) -> LaurentPolynomial:
    N = op.N
    gens = ring_gens(N)
    f = f.embed(gens)
    if op.alpha == 0:
        return f
    power = -1 if op.inverted else 1
    if op.alpha == N:
        # no cross pairs: x_I^n Gamma_I with I everything
        return LaurentPolynomial.monomial(gens, [op.n] * N + [0, 0]) * _shift(f, range(N), power)
    total = LaurentPolynomial(gens, {})
    for I, pre in _term_prefactors(N, op.alpha, op.deformed, op.inverted):
        mono = LaurentPolynomial.monomial(gens, {gens[i]: op.n for i in I})
        total = total + mono * pre * _shift(f, I, power)
    try:
        return total.exact_div(_vandermonde(N))
    except InexactDivision as exc:
        raise OperatorIdentityViolated() from exc


def m_apply(alpha: int, n: int, f: LaurentPolynomial, N: int, inverted: bool = False) -> LaurentPolynomial:
    return apply_op(MOperator(alpha, n, N, False, inverted), f)


def mac_apply(alpha: int, n: int, f: LaurentPolynomial, N: int, inverted: bool = False) -> LaurentPolynomial:
    return apply_op(MOperator(alpha, n, N, True, inverted), f)


class OpCache:
    """Memoized single-operator applications keyed by operator and input."""

    def __init__(self):
        self._memo: dict = {}
        self.hits = 0

    def apply(self, op: MOperator, f: LaurentPolynomial) -> LaurentPolynomial:
        key = (op, f)
        out = self._memo.get(key)
        if out is None:
            out = apply_op(op, f)
            self._memo[key] = out
        else:
            self.hits += 1
        return out

    def word(self, ops, f: LaurentPolynomial) -> LaurentPolynomial:
        """Apply ``ops[0] ops[1] ... ops[-1]`` (rightmost first)."""
        for op in reversed(ops):
            if not f:
                return f
            f = self.apply(op, f)
        return f


def apply_word(ops, f: LaurentPolynomial, cache: OpCache | None = None) -> LaurentPolynomial:
    return (cache or OpCache()).word(ops, f)
