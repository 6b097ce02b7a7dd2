"""Symmetric polynomials: partitions, Schur and monomial bases, Schur expansion."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .mpoly import LaurentPolynomial, determinant, vandermonde, xgens

__all__ = [
    "NotSymmetric",
    "partitions",
    "dominates",
    "monomial_symmetric",
    "schur_polynomial",
    "schur_expand",
    "rect_schur",
]


class NotSymmetric(ValueError):
    pass


def partitions(n: int, max_parts: int | None = None, max_part: int | None = None):
    """Partitions of ``n`` as weakly decreasing tuples, in reverse lex order."""
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in partitions(n - first, rest_parts, first):
            yield (first,) + rest


def dominates(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam >= mu`` in dominance order (same size assumed)."""
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


def _pad(lam, n):
    lam = tuple(lam)
    if len(lam) > n:
        raise ValueError("partition exceeds variable count")
    return lam + (0,) * (n - len(lam))


def monomial_symmetric(lam: Sequence[int], n: int, gens: Sequence[str] | None = None) -> LaurentPolynomial:
    """``m_lam(x_1..x_n)``: sum of distinct permutations of ``x^lam``."""
    gens = xgens(n) if gens is None else tuple(gens)
    lam = _pad(lam, n)
    extra = (0,) * (len(gens) - n)
    return LaurentPolynomial(gens, {e + extra: 1 for e in set(permutations(lam))})


@lru_cache(maxsize=None)
def _schur_cached(lam: tuple, n: int, gens: tuple) -> LaurentPolynomial:
    names = gens[:n]
    xs = [LaurentPolynomial.gen(gens, g) for g in names]
    lam = _pad(lam, n)
    mat = [[xs[i] ** (lam[j] + n - 1 - j) for j in range(n)] for i in range(n)]
    num = determinant(mat, gens)
    return num.exact_div(vandermonde(gens, names))


def schur_polynomial(lam: Sequence[int], n: int, gens: Sequence[str] | None = None) -> LaurentPolynomial:
    """Schur polynomial ``s_lam(x_1..x_n)`` as a ratio of alternants.

    ``gens`` may carry extra parameter generators after the first ``n``.
    """
    gens = xgens(n) if gens is None else tuple(gens)
    lam = tuple(p for p in lam if p)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    if len(lam) > n:
        raise ValueError("partition exceeds variable count")
    return _schur_cached(lam, n, gens)


def rect_schur(alpha: int, n: int, nvars: int, gens: Sequence[str] | None = None) -> LaurentPolynomial:
    """``s_{(n^alpha)}``; equals 1 for ``alpha = 0`` or ``n = 0``."""
    return schur_polynomial((n,) * alpha, nvars, gens)


def schur_expand(f: LaurentPolynomial, names: Sequence[str] | None = None):
    """Expand a symmetric polynomial in ``names`` on Schur polynomials.

    Remaining generators of ``f`` are treated as coefficient parameters, so
    the returned coefficients are exact scalars (rationals or rational
    functions).  Returns ``[(partition, coefficient), ...]`` in decreasing
    lex order of partitions; the result is checked by reconstruction.
    """
    names = tuple(names) if names is not None else tuple(g for g in f.gens if g.startswith("x"))
    n = len(names)
    if not f:
        return []
    if not f.is_polynomial(names):
        raise ValueError("schur_expand needs a polynomial (no negative exponents)")
    if not f.is_symmetric(names):
        raise NotSymmetric("not symmetric")
    if tuple(f.gens[:n]) != names:
        raise ValueError("Schur variables must be the leading generators")
    ks = list(range(n))
    remainder = f
    out = []
    previous = None
    max_steps = 1 + sum(
        1 for d in range(f.total_degree(names) + 1) for _ in partitions(d, n)
    )
    for _ in range(max_steps):
        if not remainder:
            break
        lead = remainder.leading_term(names)
        lam = tuple(lead[k] for k in ks)
        if previous is not None and lam >= previous:
            raise ArithmeticError("Schur expansion did not terminate")
        previous = lam
        coeff = LaurentPolynomial(
            f.gens,
            {(0,) * n + e[n:]: c for e, c in remainder.terms.items() if e[:n] == lam},
        )
        remainder = remainder - coeff * schur_polynomial(lam, n, f.gens)
        scalar = coeff.coefficients(names)[(0,) * n]
        out.append((tuple(p for p in lam if p), scalar))
    else:
        raise ArithmeticError("Schur expansion exceeded its degree bound")
    if schur_reconstruct(out, n, f.gens) != f:
        raise ArithmeticError("Schur expansion failed its reconstruction check")
    return out


def schur_reconstruct(expansion, n: int, gens: Sequence[str]) -> LaurentPolynomial:
    """Inverse of :func:`schur_expand`."""
    gens = tuple(gens)
    total = LaurentPolynomial(gens, {})
    for lam, c in expansion:
        total = total + schur_polynomial(lam, n, gens) * LaurentPolynomial.from_scalar(gens, c)
    return total


__all__ += ["schur_reconstruct"]
