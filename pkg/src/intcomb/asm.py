"""Alternating sign matrices and their six-vertex and osculating-path forms.

Conventions (fixed here, locked by the round-trip tests).  Rows are numbered
top to bottom, columns left to right.  For row ``i`` let ``s_j`` be the partial
sum of the first ``j`` entries, and for column ``j`` let ``c_i`` be the partial
sum of its first ``i`` entries (both are 0 or 1 for an ASM).

* Six-vertex: the horizontal edge right of column ``j`` points right iff
  ``s_j = 0``; the vertical edge below row ``i`` points up iff ``c_i = 0``.
  Domain wall boundaries then hold automatically (left/right boundary arrows
  point in, top/bottom point out), and an entry ``+1`` (``-1``) is the vertex
  whose horizontal arrows both point in (out).
* Osculating paths: occupied edges are the right- and up-pointing ones.  One
  path enters each row from the west and one leaves each column to the north.
  At a vertex with all four edges occupied two paths kiss: west turns north,
  south turns east.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterator, Sequence

from .exact.mpoly import LaurentPolynomial
from .reports import FAIL, PASS, ExperimentReport

__all__ = [
    "Asm",
    "AsmStats",
    "SixVertexConfig",
    "OsculatingPaths",
    "InvalidConfiguration",
    "enumerate_asms",
    "asm_count_formula",
    "asm_to_sixvertex",
    "sixvertex_to_asm",
    "asm_to_osculating",
    "osculating_to_asm",
    "asm_stats",
    "lambda_det_identity",
    "MAX_ENUMERATION_SIZE",
]

MAX_ENUMERATION_SIZE = 7


class InvalidConfiguration(ValueError):
    pass


@dataclass(frozen=True)
class Asm:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidConfiguration("ASM must be square")
        for line in list(rows) + [tuple(r[j] for r in rows) for j in range(n)]:
            s = 0
            for x in line:
                if x not in (-1, 0, 1):
                    raise InvalidConfiguration("entries must be -1, 0 or 1")
                s += x
                if s not in (0, 1):
                    raise InvalidConfiguration("partial sums must stay in {0, 1}")
            if s != 1:
                raise InvalidConfiguration("row and column sums must be 1")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "Asm":
        return Asm(tuple(zip(*self.entries)))

    def row_partial_sums(self) -> list[list[int]]:
        out = []
        for row in self.entries:
            s, acc = 0, [0]
            for x in row:
                s += x
                acc.append(s)
            out.append(acc)
        return out

    def col_partial_sums(self) -> list[list[int]]:
        return self.transpose().row_partial_sums()

    def monotone_triangle(self) -> tuple[tuple[int, ...], ...]:
        """Row ``k`` lists the columns (1-based) whose top-``k`` sum is 1."""
        n = self.n
        col = [0] * n
        rows = []
        for row in self.entries:
            for j, x in enumerate(row):
                col[j] += x
            rows.append(tuple(j + 1 for j in range(n) if col[j]))
        return tuple(rows)

    @classmethod
    def from_monotone_triangle(cls, tri: Sequence[Sequence[int]]) -> "Asm":
        n = len(tri)
        prev = [0] * n
        rows = []
        for k in range(n):
            cur = [0] * n
            for j in tri[k]:
                cur[j - 1] = 1
            rows.append(tuple(c - p for c, p in zip(cur, prev)))
            prev = cur
        return cls(tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Asm":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __str__(self):
        return "\n".join(" ".join({1: "+", -1: "-", 0: "."}[x] for x in r) for r in self.entries)


def _interlacing_rows(row: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Strictly increasing rows of length ``len(row)-1`` interlacing ``row``."""
    k = len(row) - 1

    def rec(i, lo, acc):
        if i == k:
            yield tuple(acc)
            return
        for v in range(max(row[i], lo), row[i + 1] + 1):
            acc.append(v)
            yield from rec(i + 1, v + 1, acc)
            acc.pop()

    yield from rec(0, -10**9, [])


def _triangles(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    bottom = tuple(range(1, n + 1))

    def rec(rows):
        if len(rows[0]) == 1:
            yield tuple(rows)
            return
        for r in _interlacing_rows(rows[0]):
            yield from rec([r] + rows)

    if n == 0:
        return
    yield from rec([bottom])


def enumerate_asms(n: int) -> Iterator[Asm]:
    """All ``n x n`` ASMs, sorted by their monotone-triangle encoding."""
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise ValueError("size too large for exhaustive enumeration")
    for tri in sorted(_triangles(n)):
        yield Asm.from_monotone_triangle(tri)


@lru_cache(maxsize=None)
def all_asms(n: int) -> tuple[Asm, ...]:
    return tuple(enumerate_asms(n))


def count_asms(n: int) -> int:
    """Number of monotone triangles with bottom row ``1..n`` (no matrices built)."""
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise ValueError("size too large for exhaustive enumeration")

    @lru_cache(maxsize=None)
    def below(row):
        if len(row) == 1:
            return 1
        return sum(below(r) for r in _interlacing_rows(row))

    return below(tuple(range(1, n + 1)))


def asm_count_formula(n: int) -> int:
    """``prod_{k=0}^{n-1} (3k+1)! / (n+k)!``."""
    num = den = 1
    for k in range(n):
        num *= factorial(3 * k + 1)
        den *= factorial(n + k)
    if num % den:
        raise ArithmeticError("product formula is not an integer")
    return num // den


# -- six-vertex ----------------------------------------------------------------------


@dataclass(frozen=True)
class SixVertexConfig:
    """Arrow orientations on the ``n x n`` grid with boundary stubs.

    ``horizontal[i][j]`` (``0 <= j <= n``) is the edge of row ``i`` to the
    right of column ``j-1`` (``j = 0`` is the west stub); ``True`` = points
    right.  ``vertical[i][j]`` (``0 <= i <= n``) is the edge of column ``j``
    below row ``i-1`` (``i = 0`` is the north stub); ``True`` = points up.
    """

    n: int
    horizontal: tuple[tuple[bool, ...], ...]
    vertical: tuple[tuple[bool, ...], ...]

    def in_arrows(self, i: int, j: int) -> int:
        return (
            int(self.horizontal[i][j])            # west edge points right
            + int(not self.horizontal[i][j + 1])  # east edge points left
            + int(not self.vertical[i][j])        # north edge points down
            + int(self.vertical[i + 1][j])        # south edge points up
        )

    def validate(self):
        n = self.n
        for i in range(n):
            if not self.horizontal[i][0] or self.horizontal[i][n]:
                raise InvalidConfiguration("not a DWBC configuration")
        for j in range(n):
            if not self.vertical[0][j] or self.vertical[n][j]:
                raise InvalidConfiguration("not a DWBC configuration")
        for i in range(n):
            for j in range(n):
                if self.in_arrows(i, j) != 2:
                    raise InvalidConfiguration("not a DWBC configuration (ice rule)")


def asm_to_sixvertex(A: Asm) -> SixVertexConfig:
    n = A.n
    rows = A.row_partial_sums()
    cols = A.col_partial_sums()
    horizontal = tuple(tuple(s == 0 for s in rows[i]) for i in range(n))
    vertical = tuple(tuple(cols[j][i] == 0 for j in range(n)) for i in range(n + 1))
    cfg = SixVertexConfig(n, horizontal, vertical)
    cfg.validate()
    return cfg


def sixvertex_to_asm(c: SixVertexConfig) -> Asm:
    c.validate()
    n = c.n
    rows = []
    for i in range(n):
        s = [0 if right else 1 for right in c.horizontal[i]]
        rows.append(tuple(s[j + 1] - s[j] for j in range(n)))
    A = Asm(tuple(rows))
    # the ice rule makes the column reading agree; check it anyway
    for j in range(n):
        for i in range(n):
            dc = int(not c.vertical[i + 1][j]) - int(not c.vertical[i][j])
            if dc != A[i, j]:
                raise InvalidConfiguration("not a DWBC configuration")
    return A


def all_sixvertex_configs(n: int) -> Iterator[SixVertexConfig]:
    """Brute force over all arrow assignments; only for tiny ``n``."""
    from itertools import product

    if n > 3:
        raise ValueError("brute-force six-vertex enumeration is limited to n <= 3")
    inner_h = n * (n - 1)
    inner_v = n * (n - 1)
    for bits in product((False, True), repeat=inner_h + inner_v):
        hb, vb = bits[:inner_h], bits[inner_h:]
        horizontal = tuple(
            (True,) + tuple(hb[i * (n - 1) + k] for k in range(n - 1)) + (False,) for i in range(n)
        )
        vertical = tuple(
            tuple(True for _ in range(n)) if i == 0
            else tuple(False for _ in range(n)) if i == n
            else tuple(vb[(i - 1) * n + j] for j in range(n))
            for i in range(n + 1)
        )
        cfg = SixVertexConfig(n, horizontal, vertical)
        try:
            cfg.validate()
        except InvalidConfiguration:
            continue
        yield cfg


# -- osculating paths ---------------------------------------------------------------


@dataclass(frozen=True)
class OsculatingPaths:
    """``n`` lattice paths in the plane, vertex ``(i, j)`` placed at ``(j+1, n-i)``.

    Path ``k`` starts on the west stub of row ``k`` at ``(0, n-k)``, moves by
    unit east/north steps and ends on a north stub at ``(j+1, n+1)``.
    """

    n: int
    paths: tuple[tuple[tuple[int, int], ...], ...]

    def edges(self) -> list[set]:
        return [set(zip(p, p[1:])) for p in self.paths]

    def osculations(self) -> list[tuple[int, int]]:
        seen = {}
        for k, p in enumerate(self.paths):
            for pt in p[1:-1]:
                seen.setdefault(pt, set()).add(k)
        return sorted(pt for pt, ks in seen.items() if len(ks) > 1)

    def validate(self):
        n = self.n
        all_edges = set()
        for k, p in enumerate(self.paths):
            if p[0] != (0, n - k) or p[-1][1] != n + 1:
                raise InvalidConfiguration("paths must run from the west to the north boundary")
            for (x0, y0), (x1, y1) in zip(p, p[1:]):
                if (x1 - x0, y1 - y0) not in ((1, 0), (0, 1)):
                    raise InvalidConfiguration("paths take unit east/north steps")
                e = ((x0, y0), (x1, y1))
                if e in all_edges:
                    raise InvalidConfiguration("paths share an edge")
                all_edges.add(e)
        ends = sorted(p[-1][0] for p in self.paths)
        if ends != list(range(1, n + 1)):
            raise InvalidConfiguration("each column must emit exactly one path")
        # crossing test at shared vertices: the west arrival must leave north
        shared = set(self.osculations())
        for p in self.paths:
            for a, b, c in zip(p, p[1:], p[2:]):
                if b in shared:
                    came_west = a[1] == b[1]
                    goes_north = c[0] == b[0]
                    if came_west != goes_north:
                        raise InvalidConfiguration("paths cross at a shared vertex")


def asm_to_osculating(A: Asm) -> OsculatingPaths:
    cfg = asm_to_sixvertex(A)
    n = A.n

    def pos(i, j):
        return (j + 1, n - i)

    paths = []
    for k in range(n):
        i, j = k, 0
        pts = [(0, n - k), pos(i, j)]
        heading = "E"
        while True:
            east = cfg.horizontal[i][j + 1]
            north = cfg.vertical[i][j]
            if heading == "E":
                # west arrival turns north whenever the north edge is occupied
                heading = "N" if north else "E"
            else:
                south_in_kiss = east and north and cfg.horizontal[i][j]
                heading = "E" if (south_in_kiss or not north) else "N"
            if heading == "N":
                if i == 0:
                    pts.append((j + 1, n + 1))
                    break
                i -= 1
            else:
                j += 1
            pts.append(pos(i, j))
        paths.append(tuple(pts))
    out = OsculatingPaths(n, tuple(paths))
    out.validate()
    return out


def osculating_to_asm(P: OsculatingPaths) -> Asm:
    P.validate()
    n = P.n
    occupied = set()
    for p in P.paths:
        occupied.update(zip(p, p[1:]))
    horizontal = []
    for i in range(n):
        y = n - i
        horizontal.append(tuple(((j, y), (j + 1, y)) in occupied for j in range(n + 1)))
    vertical = []
    for i in range(n + 1):
        y = n - i
        vertical.append(tuple(((j + 1, y), (j + 1, y + 1)) in occupied for j in range(n)))
    return sixvertex_to_asm(SixVertexConfig(n, tuple(horizontal), tuple(vertical)))


# -- statistics ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsmStats:
    inversions: int
    n_minus: int
    m: tuple[int, ...]


def asm_stats(A: Asm) -> AsmStats:
    """``I(A) = sum_{i>k, j<l} A_ij A_kl``, the number of -1s, and ``m = A v``."""
    n = A.n
    a = A.entries
    inv = 0
    for i in range(n):
        for j in range(n):
            if not a[i][j]:
                continue
            for k in range(i):
                for l in range(j + 1, n):
                    inv += a[i][j] * a[k][l]
    n_minus = sum(x == -1 for row in a for x in row)
    v = [n - 1 - j for j in range(n)]
    m = tuple(sum(a[i][j] * v[j] for j in range(n)) for i in range(n))
    return AsmStats(inv, n_minus, m)


# -- lambda-determinant ------------------------------------------------------------------------


def _vgens(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(1, n + 1)) + ("q",)


def lambda_det_lhs(n: int) -> LaurentPolynomial:
    """``prod_{i<j} (v_i - q v_j)``."""
    gens = _vgens(n)
    v = [LaurentPolynomial.gen(gens, f"v{i}") for i in range(1, n + 1)]
    q = LaurentPolynomial.gen(gens, "q")
    out = LaurentPolynomial.constant(gens, 1)
    for i in range(n):
        for j in range(i + 1, n):
            out = out * (v[i] - q * v[j])
    return out


def lambda_det_rhs(n: int) -> tuple[LaurentPolynomial, int]:
    """ASM sum ``sum_A (-q)^{I-N} (1-q)^N prod v_i^{m_i}``; also the term count."""
    gens = _vgens(n)
    q = LaurentPolynomial.gen(gens, "q")
    total = LaurentPolynomial(gens, {})
    count = 0
    for A in all_asms(n):
        st = asm_stats(A)
        e = st.inversions - st.n_minus
        if e < 0:
            raise ArithmeticError(f"negative exponent I-N for\n{A}")
        term = (-q) ** e * (1 - q) ** st.n_minus
        term = term * LaurentPolynomial.monomial(gens, tuple(st.m) + (0,))
        total = total + term
        count += 1
    return total, count


def lambda_det_identity(n: int) -> ExperimentReport:
    if not 1 <= n <= 5:
        raise ValueError("lambda-determinant check supports 1 <= n <= 5")
    start = time.perf_counter()
    lhs = lambda_det_lhs(n)
    rhs, count = lambda_det_rhs(n)
    diff = lhs - rhs
    details = {"asm_terms": count, "lhs_terms": len(lhs)}
    if diff:
        e, c = diff.sorted_terms()[0]
        details["first_mismatch"] = {
            "monomial": list(e),
            "lhs": lhs.terms.get(e, 0),
            "rhs": rhs.terms.get(e, 0),
        }
    return ExperimentReport(
        "asm-lambdadet",
        {"size": n},
        FAIL if diff else PASS,
        details,
        time.perf_counter() - start,
    )


def count_report(max_n: int) -> ExperimentReport:
    start = time.perf_counter()
    rows = []
    ok = True
    for n in range(1, max_n + 1):
        c = count_asms(n)
        f = asm_count_formula(n)
        rows.append({"n": n, "count": c, "formula": f})
        ok &= c == f
    return ExperimentReport(
        "asm-count", {"size": max_n}, PASS if ok else FAIL, {"table": rows}, time.perf_counter() - start
    )


def bijection_report(n: int) -> ExperimentReport:
    """Round trips ASM -> 6V -> ASM and ASM -> paths -> ASM for every ASM."""
    start = time.perf_counter()
    failures = []
    count = 0
    for A in all_asms(n):
        count += 1
        if sixvertex_to_asm(asm_to_sixvertex(A)) != A:
            failures.append({"asm": A.entries, "route": "sixvertex"})
        P = asm_to_osculating(A)
        if osculating_to_asm(P) != A:
            failures.append({"asm": A.entries, "route": "osculating"})
    configs = {asm_to_sixvertex(A) for A in all_asms(n)}
    paths = {asm_to_osculating(A) for A in all_asms(n)}
    details = {"objects": count, "distinct_sixvertex": len(configs), "distinct_paths": len(paths)}
    if failures:
        details["failures"] = failures[:5]
    ok = not failures and len(configs) == len(paths) == count
    return ExperimentReport(
        "asm-bijection", {"size": n}, PASS if ok else FAIL, details, time.perf_counter() - start
    )
