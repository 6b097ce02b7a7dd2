"""Whittaker vectors in Verma modules from the cone-path model.

A word ``f_{i_1} ... f_{i_k}|lambda>`` corresponds to the lattice path in the
positive root cone taking steps ``i_k, i_{k-1}, ..., i_1``.  The coefficient of
the word in the Whittaker vector is ``prod mu_i^{beta_i}`` times the product of
``1 / v(gamma)`` over the nonzero vertices ``gamma`` of that path, with
``v(gamma) = (lambda + rho | gamma) - (gamma | gamma) / 2``.

Words are not linearly independent in the Verma module, so the relation
``e_i v = mu_i v`` is certified through the contragredient pairing: every
e-word is paired against the defect, and a full-rank Gram matrix per weight
space shows the pairing detects every nonzero vector.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .reports import FAIL, INCONCLUSIVE, PASS, ExperimentReport

__all__ = [
    "CartanData",
    "HighestWeight",
    "ConePath",
    "NonGenericWeight",
    "cartan_type_a",
    "vertex_value",
    "path_weight",
    "whittaker_expansion",
    "e_action",
    "pairing",
    "positive_roots",
    "kostant_partition",
    "gram_certificate",
    "whittaker_defect",
]

Word = tuple[int, ...]
VermaElement = dict  # word -> Fraction


class NonGenericWeight(ValueError):
    def __init__(self, msg="non-generic weight"):
        super().__init__(msg)


@dataclass(frozen=True)
class CartanData:
    """Finite-type Cartan matrix with ``C[i][j] = <alpha_i^vee, alpha_j>``.

    Nodes are numbered from 1 in the public API.
    """

    cartan: tuple[tuple[int, ...], ...]
    sym: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        C = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", C)
        r = len(C)
        if r == 0 or any(len(row) != r for row in C):
            raise ValueError("Cartan matrix must be square and nonempty")
        if any(C[i][i] != 2 for i in range(r)):
            raise ValueError("Cartan matrix needs 2 on the diagonal")
        for i in range(r):
            for j in range(r):
                if i != j and (C[i][j] > 0 or (C[i][j] == 0) != (C[j][i] == 0)):
                    raise ValueError("not a generalized Cartan matrix")
        # d_i = (alpha_i|alpha_i)/2 with (alpha_i|alpha_j) = d_i C_ij symmetric
        d: list[Fraction | None] = [None] * r
        for start in range(r):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(r):
                    if j != i and C[i][j]:
                        dj = d[i] * C[i][j] / C[j][i]
                        if d[j] is None:
                            d[j] = dj
                            stack.append(j)
                        elif d[j] != dj:
                            raise ValueError("Cartan matrix is not symmetrizable")
        # normalize so the shortest root in each component has (a|a) = 2
        scale = 1 / min(d)
        sym = tuple(x * scale for x in d)
        if any(x.denominator != 1 for x in sym):
            raise ValueError("Cartan matrix is not symmetrizable with integer factors")
        object.__setattr__(self, "sym", tuple(int(x) for x in sym))
        G = [[Fraction(self.sym[i] * C[i][j]) for j in range(r)] for i in range(r)]
        for k in range(1, r + 1):
            if DomainMatrix([[QQ(x.numerator, x.denominator) for x in row[:k]] for row in G[:k]], (k, k), QQ).det() <= 0:
                raise ValueError("Cartan matrix is not of finite type")

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def form(self, i: int, j: int) -> int:
        """``(alpha_i | alpha_j)`` for 0-based node indices."""
        return self.sym[i] * self.cartan[i][j]

    def inner(self, beta: Sequence, gamma: Sequence):
        r = self.rank
        return sum(beta[i] * gamma[j] * self.form(i, j) for i in range(r) for j in range(r) if beta[i] and gamma[j])

    def rho_pairing(self, gamma: Sequence):
        """``(rho | gamma)`` with ``(rho | alpha_i) = (alpha_i | alpha_i) / 2``."""
        return sum(self.sym[i] * gamma[i] for i in range(self.rank))


def cartan_type_a(r: int) -> CartanData:
    if r < 1:
        raise ValueError("rank must be >= 1")
    return CartanData(tuple(tuple(2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)) for i in range(r)))


@dataclass(frozen=True)
class HighestWeight:
    """``lam[i] = <lambda, alpha_i^vee>`` and nonzero ``mu[i]``."""

    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(Fraction(x) for x in self.lam))
        object.__setattr__(self, "mu", tuple(Fraction(x) for x in self.mu))
        if len(self.lam) != len(self.mu):
            raise ValueError("lambda and mu must have the same length")
        if any(m == 0 for m in self.mu):
            raise ValueError("mu parameters must be nonzero")


@dataclass(frozen=True)
class ConePath:
    word: Word

    def endpoint(self, rank: int) -> tuple[int, ...]:
        return tuple(self.word.count(i) for i in range(1, rank + 1))

    def vertices(self, rank: int) -> list[tuple[int, ...]]:
        """Nonzero vertices, visiting the letters from the tail of the word."""
        if any(not 1 <= i <= rank for i in self.word):
            raise ValueError("letter outside [1, rank]")
        pt = [0] * rank
        out = []
        for i in reversed(self.word):
            pt[i - 1] += 1
            out.append(tuple(pt))
        return out


def _lam_pairing(cd: CartanData, hw: HighestWeight, gamma: Sequence):
    # (lambda | alpha_i) = d_i <lambda, alpha_i^vee>
    return sum(cd.sym[i] * hw.lam[i] * gamma[i] for i in range(cd.rank))


def vertex_value(cd: CartanData, hw: HighestWeight, gamma: Sequence[int]) -> Fraction:
    gamma = tuple(gamma)
    if len(gamma) != cd.rank or any(g < 0 for g in gamma) or not any(gamma):
        raise ValueError("gamma must be a nonzero point of the positive cone")
    v = _lam_pairing(cd, hw, gamma) + cd.rho_pairing(gamma) - Fraction(cd.inner(gamma, gamma), 2)
    if v == 0:
        raise NonGenericWeight()
    return Fraction(v)


def path_weight(cd: CartanData, hw: HighestWeight, p: ConePath | Word) -> Fraction:
    word = p.word if isinstance(p, ConePath) else tuple(p)
    w = Fraction(1)
    for gamma in ConePath(word).vertices(cd.rank):
        w /= vertex_value(cd, hw, gamma)
    return w


def _words(rank: int, length: int):
    return itertools.product(range(1, rank + 1), repeat=length)


def whittaker_expansion(cd: CartanData, hw: HighestWeight, K: int) -> VermaElement:
    """Coefficients of all words of length ``<= K``.

    The coefficient of ``f_w|lambda>`` is ``prod_i (d_i mu_i)^{beta_i} w(p(w))``;
    ``d_i = 1`` in the simply-laced case.
    """
    if K < 0:
        raise ValueError("depth must be >= 0")
    r = cd.rank
    if len(hw.lam) != r:
        raise ValueError("weight length does not match the rank")
    out: VermaElement = {}
    for k in range(K + 1):
        for word in _words(r, k):
            coeff = path_weight(cd, hw, word)
            # path weights use the symmetrized form; d_i converts to Chevalley f_i
            for i in word:
                coeff *= cd.sym[i - 1] * hw.mu[i - 1]
            out[word] = coeff
    return out


def _coroot_value(cd: CartanData, hw: HighestWeight, i: int, tail: Word) -> Fraction:
    """``<lambda - sum_{j in tail} alpha_j, alpha_i^vee>`` (``i`` is 1-based)."""
    C = cd.cartan
    return hw.lam[i - 1] - sum(C[i - 1][j - 1] for j in tail)


def e_action(cd: CartanData, hw: HighestWeight, i: int, word: Word) -> VermaElement:
    """``e_i f_{j_1} ... f_{j_k}|lambda>`` as a combination of shorter words."""
    out: VermaElement = {}
    for m, j in enumerate(word):
        if j != i:
            continue
        c = _coroot_value(cd, hw, i, word[m + 1:])
        if c:
            w = word[:m] + word[m + 1:]
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def apply_e(cd: CartanData, hw: HighestWeight, i: int, vec: VermaElement) -> VermaElement:
    out: VermaElement = {}
    for word, c in vec.items():
        for w, d in e_action(cd, hw, i, word).items():
            out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c}


def pairing(cd: CartanData, hw: HighestWeight, eword: Word, fword: Word) -> Fraction:
    """``<lambda| e_{u_1} ... e_{u_k} f_{w_1} ... f_{w_k} |lambda>``."""
    return _pairing_cached(cd, hw, tuple(eword), tuple(fword))


@lru_cache(maxsize=None)
def _pairing_cached(cd, hw, eword, fword) -> Fraction:
    if len(eword) != len(fword):
        return Fraction(0)
    if not eword:
        return Fraction(1)
    if sorted(eword) != sorted(fword):
        return Fraction(0)
    rest, i = eword[:-1], eword[-1]
    total = Fraction(0)
    for w, c in e_action(cd, hw, i, fword).items():
        total += c * _pairing_cached(cd, hw, rest, w)
    return total


def positive_roots(cd: CartanData) -> list[tuple[int, ...]]:
    r = cd.rank
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(r):
            n = sum(cd.cartan[i][j] * beta[j] for j in range(r))
            new = tuple(beta[j] - n * (i == j) for j in range(r))
            if all(x >= 0 for x in new) and any(new) and new not in seen:
                seen.add(new)
                frontier.append(new)
    return sorted(seen)


def kostant_partition(cd: CartanData, beta: Sequence[int]) -> int:
    """Number of ways to write ``beta`` as a sum of positive roots."""
    roots = positive_roots(cd)

    @lru_cache(maxsize=None)
    def count(b, k):
        if not any(b):
            return 1
        if k == len(roots):
            return 0
        total = 0
        root = roots[k]
        cur = b
        while all(x >= 0 for x in cur):
            total += count(cur, k + 1)
            cur = tuple(x - y for x, y in zip(cur, root))
        return total

    return count(tuple(beta), 0)


def _words_of_weight(beta: Sequence[int]) -> list[Word]:
    letters = [i + 1 for i, b in enumerate(beta) for _ in range(b)]
    return sorted(set(itertools.permutations(letters)))


def _rank(rows: list[list[Fraction]]) -> int:
    if not rows or not rows[0]:
        return 0
    m = DomainMatrix([[QQ(x.numerator, x.denominator) for x in row] for row in rows], (len(rows), len(rows[0])), QQ)
    return m.rank()


def _weights_up_to(rank: int, depth: int):
    for k in range(depth + 1):
        for beta in itertools.product(range(k + 1), repeat=rank):
            if sum(beta) == k:
                yield beta


def gram_certificate(cd: CartanData, hw: HighestWeight, depth: int) -> list[dict]:
    """Per weight ``beta`` with ``|beta| <= depth``: Gram rank vs weight-space dimension."""
    out = []
    for beta in _weights_up_to(cd.rank, depth):
        words = _words_of_weight(beta)
        gram = [[pairing(cd, hw, u, w) for w in words] for u in words]
        out.append({"weight": list(beta), "rank": _rank(gram), "dimension": kostant_partition(cd, beta)})
    return out


def whittaker_defect(
    cd: CartanData,
    hw: HighestWeight,
    K: int,
    perturb: Word | None = None,
) -> ExperimentReport:
    """Pair every e-word of length ``<= K-1`` against ``e_i v^(K) - mu_i v^(K-1)``.

    ``perturb`` doubles the coefficient of one word (a negative control).
    """
    if K < 1:
        raise ValueError("depth must be >= 1")
    start = time.perf_counter()
    r = cd.rank
    params = {"rank": r, "lambda": list(hw.lam), "mu": list(hw.mu), "depth": K}
    for beta in _weights_up_to(r, K):
        if any(beta):
            vertex_value(cd, hw, beta)  # genericity guard
    v = whittaker_expansion(cd, hw, K)
    if perturb is not None:
        perturb = tuple(perturb)
        if perturb not in v:
            raise ValueError("perturbed word is outside the expansion")
        v[perturb] *= 2
        params["perturbed_word"] = list(perturb)
    short = {w: c for w, c in v.items() if len(w) <= K - 1}

    certificate = gram_certificate(cd, hw, K - 1)
    degenerate = [c for c in certificate if c["rank"] != c["dimension"]]

    residuals = []
    nonzero = 0
    for i in range(1, r + 1):
        defect = apply_e(cd, hw, i, v)
        for w, c in short.items():
            defect[w] = defect.get(w, 0) - hw.mu[i - 1] * c
        defect = {w: c for w, c in defect.items() if c and len(w) <= K - 1}
        by_weight: dict[tuple, list] = {}
        for beta in _weights_up_to(r, K - 1):
            for u in _words_of_weight(beta):
                val = sum((c * pairing(cd, hw, u, w) for w, c in defect.items() if len(w) == len(u)), Fraction(0))
                by_weight.setdefault(beta, []).append(val)
        for beta, vals in by_weight.items():
            bad = sum(1 for x in vals if x)
            nonzero += bad
            residuals.append({
                "generator": i,
                "weight": list(beta),
                "pairings": len(vals),
                "nonzero": bad,
                "max_abs_residual": max((abs(x) for x in vals), default=Fraction(0)),
            })
    details = {
        "residuals": residuals,
        "nonzero_pairings": nonzero,
        "gram_certificate": certificate,
        "words": len(v),
    }
    if nonzero:
        status = FAIL
    elif degenerate:
        status = INCONCLUSIVE
        details["reason"] = "verification inconclusive at this λ"
    else:
        status = PASS
    return ExperimentReport("whittaker-verify", params, status, details, time.perf_counter() - start)
