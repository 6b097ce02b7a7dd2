"""M-system relations, graded characters and the quantum determinant."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ..asm import all_asms, asm_stats
from ..exact.mpoly import LaurentPolynomial
from ..exact.symmetric import monomial_symmetric, partitions, rect_schur, schur_expand
from ..reports import FAIL, PASS, ExperimentReport
from .operators import MOperator, OpCache, ring_gens

__all__ = [
    "probe_family",
    "msystem_relations_check",
    "GradedCharSpec",
    "grading_exponent",
    "graded_character",
    "graded_character_report",
    "qdet_product_terms",
    "qdet_asm_terms",
    "quantum_determinant",
    "GradingFailure",
    "qdet_report",
]


class GradingFailure(ArithmeticError):
    def __init__(self, msg="grading failure"):
        super().__init__(msg)


def probe_family(N: int, degree_cap: int) -> list[tuple[tuple[int, ...], LaurentPolynomial]]:
    """Monomial symmetric polynomials ``m_lam`` with ``|lam| <= degree_cap``."""
    gens = ring_gens(N)
    out = []
    for d in range(degree_cap + 1):
        for lam in partitions(d, N):
            out.append((lam, monomial_symmetric(lam, N, gens)))
    return out


def _q_power(gens, k: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(gens, {"q": k})


def _op_text(ops) -> str:
    return " ".join(str(o) for o in ops) or "1"


def msystem_relations_check(N: int, degree_cap: int, ns: Sequence[int] = (0, 1, 2)) -> ExperimentReport:
    """Exchange and quantum Q-system relations on every test polynomial.

    Exchange: ``M_{a,n} M_{b,n+1} = q^{min(a,b)} M_{b,n+1} M_{a,n}`` for
    ``0 <= a, b <= N``.  Quantum Q-system:
    ``q^a M_{a,n+1} M_{a,n-1} = M_{a,n}^2 - M_{a+1,n} M_{a-1,n}`` for
    ``1 <= a <= N`` with ``M_{N+1,n} = 0``.
    """
    if not 1 <= N <= 3:
        raise ValueError("M-system check supports N <= 3")
    start = time.perf_counter()
    gens = ring_gens(N)
    cache = OpCache()
    family = probe_family(N, degree_cap)

    def M(a, n):
        return MOperator(a, n, N)

    failure = None
    counts = {"exchange": 0, "quantum_qsystem": 0}
    for lam, f in family:
        for n in ns:
            for a in range(N + 1):
                for b in range(N + 1):
                    lhs = cache.word([M(a, n), M(b, n + 1)], f)
                    rhs = _q_power(gens, min(a, b)) * cache.word([M(b, n + 1), M(a, n)], f)
                    counts["exchange"] += 1
                    if lhs != rhs:
                        failure = {"relation": "exchange", "alpha": a, "beta": b, "n": n, "test_polynomial": list(lam)}
                        break
                if failure:
                    break
            if failure:
                break
            for a in range(1, N + 1):
                lhs = _q_power(gens, a) * cache.word([M(a, n + 1), M(a, n - 1)], f)
                rhs = cache.word([M(a, n), M(a, n)], f)
                if a < N:
                    rhs = rhs - cache.word([M(a + 1, n), M(a - 1, n)], f)
                counts["quantum_qsystem"] += 1
                if lhs != rhs:
                    failure = {"relation": "quantum_qsystem", "alpha": a, "n": n, "test_polynomial": list(lam)}
                    break
            if failure:
                break
        if failure:
            break
    details = {"relations_checked": counts, "test_polynomials": len(family)}
    if failure:
        details["first_failure"] = failure
    return ExperimentReport(
        "qsystem-operators",
        {"nvars": N, "degree_cap": degree_cap, "n_values": list(ns)},
        FAIL if failure else PASS,
        details,
        time.perf_counter() - start,
    )


# -- graded characters ---------------------------------------------------------------


@dataclass(frozen=True)
class GradedCharSpec:
    """Occupation numbers ``occ[alpha-1][j-1] = n_{alpha,j}`` for ``alpha <= N-1``."""

    N: int
    occ: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        occ = tuple(tuple(int(x) for x in row) for row in self.occ)
        object.__setattr__(self, "occ", occ)
        if self.N < 2:
            raise ValueError("graded characters need N >= 2")
        if len(occ) > self.N - 1:
            raise ValueError("occupation matrix has more rows than N - 1")
        if any(x < 0 for row in occ for x in row):
            raise ValueError("occupation numbers must be nonnegative")

    @property
    def k(self) -> int:
        return max((len(row) for row in self.occ), default=0)

    def n(self, alpha: int, j: int) -> int:
        if alpha > len(self.occ):
            return 0
        row = self.occ[alpha - 1]
        return row[j - 1] if j <= len(row) else 0

    def factors(self) -> list[tuple[int, int]]:
        return [(a, j) for a in range(1, len(self.occ) + 1) for j in range(1, self.k + 1) for _ in range(self.n(a, j))]

    @classmethod
    def from_factors(cls, N: int, factors: Sequence[tuple[int, int]]) -> "GradedCharSpec":
        """Build from a list of ``(alpha, n)`` KR factors."""
        k = max((j for _, j in factors), default=0)
        occ = [[0] * k for _ in range(N - 1)]
        for a, j in factors:
            occ[a - 1][j - 1] += 1
        return cls(N, tuple(tuple(r) for r in occ))


def grading_exponent(spec: GradedCharSpec) -> Fraction:
    """``a(n) = 1/2 sum n_{a,i} min(i,j) min(a,b) n_{b,j} - 1/2 sum i a n_{a,i}``."""
    idx = [(a, i) for a in range(1, len(spec.occ) + 1) for i in range(1, spec.k + 1)]
    quad = sum(
        spec.n(a, i) * min(i, j) * min(a, b) * spec.n(b, j) for (a, i) in idx for (b, j) in idx
    )
    lin = sum(i * a * spec.n(a, i) for (a, i) in idx)
    return Fraction(quad - lin, 2)


def _operator_sequence(spec: GradedCharSpec, alpha_descending: bool = False) -> list[MOperator]:
    ops = []
    alphas = range(1, len(spec.occ) + 1)
    if alpha_descending:
        alphas = reversed(alphas)
    alphas = list(alphas)
    for j in range(spec.k, 0, -1):
        for a in alphas:
            ops.extend([MOperator(a, j, spec.N)] * spec.n(a, j))
    return ops


def graded_character(spec: GradedCharSpec, alpha_descending: bool = False, cache: OpCache | None = None) -> LaurentPolynomial:
    """``chi(q; x) = q^{a} P(1/q; x)`` where ``P = prod M_{alpha,j}^{n_{alpha,j}} . 1``."""
    gens = ring_gens(spec.N)
    cache = cache or OpCache()
    one = LaurentPolynomial.constant(gens, 1)
    P = cache.word(_operator_sequence(spec, alpha_descending), one)
    a = grading_exponent(spec)
    if a.denominator != 1:
        raise GradingFailure()
    chi = P.invert(["q"]) * _q_power(gens, int(a))
    if not chi.is_polynomial(gens[: spec.N]):
        raise GradingFailure()
    return chi


def _rect_product(spec: GradedCharSpec) -> LaurentPolynomial:
    gens = ring_gens(spec.N)
    out = LaurentPolynomial.constant(gens, 1)
    for a, j in spec.factors():
        out = out * rect_schur(a, j, spec.N, gens)
    return out


def graded_character_report(spec: GradedCharSpec) -> ExperimentReport:
    """Checks q = 1 against the character product; reports the Schur expansion.

    Positivity of the q-coefficients is reported but does not decide the status.
    """
    start = time.perf_counter()
    N = spec.N
    gens = ring_gens(N)
    cache = OpCache()
    chi = graded_character(spec, cache=cache)
    at_one = chi.subs(q=1)
    ok = at_one == _rect_product(spec)
    expansion = schur_expand(chi, gens[:N])
    positive = True
    table = []
    for lam, c in expansion:
        poly = LaurentPolynomial.from_scalar(("q",), c)
        coeffs = poly.terms.values()
        positive &= all(isinstance(x, int) and x > 0 for x in coeffs)
        table.append({"partition": list(lam), "chi_q": poly.to_text(), "chi_q_inverse": poly.invert(["q"]).to_text()})
    single = len(spec.factors()) == 1
    if single:
        a, j = spec.factors()[0]
        ok &= chi == rect_schur(a, j, N, gens)
    reorder = graded_character(spec, alpha_descending=True, cache=cache)
    details = {
        "a": grading_exponent(spec),
        "q1_matches_product": at_one == _rect_product(spec),
        "schur_expansion": table,
        "positive_integer_coefficients": positive,
        "alpha_order_changes_result": reorder != chi,
    }
    return ExperimentReport(
        "qsystem-graded-char",
        {"nvars": N, "occupation": [list(r) for r in spec.occ]},
        PASS if ok else FAIL,
        details,
        time.perf_counter() - start,
    )


# -- quantum determinant ---------------------------------------------------------------------


def qdet_product_terms(a: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """``(power of -q, mode tuple)`` from ``prod_{i<j} (1 - q u_j/u_i) m(u_1)...m(u_k)``."""
    k = len(a)
    pairs = list(combinations(range(k), 2))
    out = []
    for mask in product((0, 1), repeat=len(pairs)):
        d = [0] * k
        for bit, (i, j) in zip(mask, pairs):
            if bit:
                d[j] += 1
                d[i] -= 1
        out.append((sum(mask), tuple(a[i] - d[i] for i in range(k))))
    return out


def qdet_asm_terms(a: Sequence[int]) -> list[tuple[int, int, tuple[int, ...]]]:
    """``(I - N, N, modes)`` per ASM, weighted ``(-q)^{I-N} (1-q)^N``."""
    k = len(a)
    out = []
    for A in all_asms(k):
        st = asm_stats(A)
        modes = tuple(a[i] + k - (i + 1) - st.m[i] for i in range(k))
        out.append((st.inversions - st.n_minus, st.n_minus, modes))
    return out


def _evaluate_terms(weighted, N, f, cache):
    gens = ring_gens(N)
    total = LaurentPolynomial(gens, {})
    for coeff, modes in weighted:
        total = total + coeff * cache.word([MOperator(1, b, N) for b in modes], f)
    return total


def quantum_determinant(a: Sequence[int], N: int, mode: str, degree_cap: int = 2, cache: OpCache | None = None):
    """Table ``{test partition: M_{a_1..a_k} m_lam}`` in the chosen expansion."""
    if not 1 <= len(a) <= 3 or N > 3:
        raise ValueError("quantum determinant supports alpha <= 3 and N <= 3")
    gens = ring_gens(N)
    q = LaurentPolynomial.gen(gens, "q")
    cache = cache or OpCache()
    if mode == "product":
        weighted = [((-q) ** s, modes) for s, modes in qdet_product_terms(a)]
    elif mode == "asm_sum":
        weighted = [((-q) ** e * (1 - q) ** nm, modes) for e, nm, modes in qdet_asm_terms(a)]
    else:
        raise ValueError("mode must be 'product' or 'asm_sum'")
    return {lam: _evaluate_terms(weighted, N, f, cache) for lam, f in probe_family(N, degree_cap)}


def qdet_report(alpha_max: int, N: int, degree_cap: int = 2, amax: int = 1) -> ExperimentReport:
    """Both expansions agree on every ``a`` in ``[-amax, amax]^alpha``; diagonal ``a`` give ``M_{alpha,n}``."""
    start = time.perf_counter()
    cache = OpCache()
    failure = None
    checked = 0
    for k in range(1, alpha_max + 1):
        for a in product(range(-amax, amax + 1), repeat=k):
            prod_table = quantum_determinant(a, N, "product", degree_cap, cache)
            asm_table = quantum_determinant(a, N, "asm_sum", degree_cap, cache)
            checked += 1
            if prod_table != asm_table:
                lam = next(l for l in prod_table if prod_table[l] != asm_table[l])
                failure = {"a": list(a), "test_polynomial": list(lam), "reason": "quantum determinant identity violated"}
                break
            if len(set(a)) == 1 and k <= N:
                for lam, f in probe_family(N, degree_cap):
                    if cache.apply(MOperator(k, a[0], N), f) != prod_table[lam]:
                        failure = {"a": list(a), "test_polynomial": list(lam), "reason": "does not reduce to M_{alpha,n}"}
                        break
            if failure:
                break
        if failure:
            break
    details = {"index_vectors_checked": checked}
    if failure:
        details["first_failure"] = failure
    return ExperimentReport(
        "qsystem-qdet",
        {"alpha_max": alpha_max, "nvars": N, "degree_cap": degree_cap, "amax": amax},
        FAIL if failure else PASS,
        details,
        time.perf_counter() - start,
    )
