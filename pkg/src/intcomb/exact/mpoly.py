"""Sparse multivariate Laurent polynomials with exact coefficients.

A :class:`LaurentPolynomial` is a map from integer exponent vectors to
coefficients over a fixed tuple of named generators.  Formal parameters such
as ``q`` and ``t`` are carried as ordinary generators, which keeps every
operator computation inside ``Z[x^{±1}, q^{±1}, t^{±1}]`` with integer
coefficients; :meth:`LaurentPolynomial.coefficients` folds them back into
:class:`~intcomb.exact.scalar.RationalFunction` scalars on demand.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .scalar import RationalFunction, scalar_str

__all__ = ["InexactDivision", "LaurentPolynomial", "xgens", "vandermonde"]


class InexactDivision(ArithmeticError):
    """Raised when a claimed exact division leaves a nonzero remainder."""


def _cdiv(a, b):
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return a / b


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentPolynomial:
    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.gens = tuple(gens)
        out = {}
        if terms:
            n = len(self.gens)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match generators {self.gens}")
                if c:
                    out[tuple(e)] = _clean(c)
        self.terms = out

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, gens, terms):
        obj = cls.__new__(cls)
        obj.gens = gens
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, gens: Sequence[str], c=1) -> "LaurentPolynomial":
        gens = tuple(gens)
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def gen(cls, gens: Sequence[str], name: str) -> "LaurentPolynomial":
        gens = tuple(gens)
        e = [0] * len(gens)
        e[gens.index(name)] = 1
        return cls(gens, {tuple(e): 1})

    @classmethod
    def monomial(cls, gens: Sequence[str], exps: Mapping[str, int] | Sequence[int], c=1):
        gens = tuple(gens)
        if isinstance(exps, Mapping):
            e = [0] * len(gens)
            for name, k in exps.items():
                e[gens.index(name)] += k
            exps = e
        return cls(gens, {tuple(exps): c})

    @classmethod
    def from_scalar(cls, gens: Sequence[str], value) -> "LaurentPolynomial":
        """Embed a scalar; rational functions must be Laurent in their params."""
        gens = tuple(gens)
        if isinstance(value, RationalFunction):
            idx = [gens.index(p) for p in value.params]
            terms = {}
            for e, c in value.laurent_terms().items():
                full = [0] * len(gens)
                for k, v in zip(idx, e):
                    full[k] = v
                terms[tuple(full)] = c
            return cls(gens, terms)
        return cls.constant(gens, value)

    # -- basic protocol ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.gens == other.gens and self.terms == other.terms
        if not self.terms:
            return other == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.sorted_terms())

    def copy(self):
        return LaurentPolynomial._raw(self.gens, dict(self.terms))

    def _check(self, other):
        if not isinstance(other, LaurentPolynomial):
            return LaurentPolynomial.constant(self.gens, other)
        if other.gens != self.gens:
            raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")
        return other

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(self.gens, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            if isinstance(other, RationalFunction):
                other = LaurentPolynomial.from_scalar(self.gens, other)
            else:
                if not other:
                    return LaurentPolynomial._raw(self.gens, {})
                return LaurentPolynomial._raw(
                    self.gens, {e: _clean(c * other) for e, c in self.terms.items()}
                )
        other = self._check(other)
        if len(other.terms) == 1:
            ((f, d),) = other.terms.items()
            return LaurentPolynomial._raw(
                self.gens,
                {tuple(a + b for a, b in zip(e, f)): c * d for e, c in self.terms.items()},
            )
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return LaurentPolynomial._raw(self.gens, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if len(self.terms) != 1:
                raise InexactDivision("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            return LaurentPolynomial(self.gens, {tuple(a * k for a in e): Fraction(1) / Fraction(c) ** -k})
        result = LaurentPolynomial.constant(self.gens, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.exact_div(other)
        return self * (Fraction(1) / Fraction(other))

    def exact_div(self, den: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient ``self / den``; raises :class:`InexactDivision` on remainder."""
        den = self._check(den)
        if not den.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPolynomial._raw(self.gens, {})
        n = len(self.gens)
        lo_num = [min(e[k] for e in self.terms) for k in range(n)]
        lo_den = [min(e[k] for e in den.terms) for k in range(n)]
        rem = {tuple(a - b for a, b in zip(e, lo_num)): c for e, c in self.terms.items()}
        dterms = [(tuple(a - b for a, b in zip(e, lo_den)), c) for e, c in den.terms.items()]
        dterms.sort(reverse=True)
        (lead_e, lead_c), rest = dterms[0], dterms[1:]

        heap = [tuple(-a for a in e) for e in rem]
        heapq.heapify(heap)
        quotient = {}
        while heap:
            e = tuple(-a for a in heapq.heappop(heap))
            c = rem.pop(e, 0)
            if not c:
                continue
            while heap and heap[0] == tuple(-a for a in e):
                heapq.heappop(heap)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise InexactDivision("nonzero remainder in exact division")
            qc = _cdiv(c, lead_c)
            quotient[shift] = qc
            for f, d in rest:
                g = tuple(a + b for a, b in zip(shift, f))
                v = rem.get(g, 0) - qc * d
                if v:
                    if g not in rem:
                        heapq.heappush(heap, tuple(-a for a in g))
                    rem[g] = v
                else:
                    rem.pop(g, None)
        offset = tuple(a - b for a, b in zip(lo_num, lo_den))
        return LaurentPolynomial._raw(
            self.gens,
            {tuple(a + b for a, b in zip(e, offset)): _clean(c) for e, c in quotient.items()},
        )

    # -- transformations ---------------------------------------------------

    def scale_variable(self, var: str, param: str, power: int = 1) -> "LaurentPolynomial":
        """Substitute ``var -> param**power * var`` (a multiplicative shift)."""
        i, j = self.gens.index(var), self.gens.index(param)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[j] += power * e[i]
                e = tuple(e2)
            out[e] = c
        return LaurentPolynomial._raw(self.gens, out)

    def permute(self, perm: Mapping[str, str]) -> "LaurentPolynomial":
        """Rename generators by a permutation ``{old: new}`` of (some of) them."""
        idx = list(range(len(self.gens)))
        for old, new in perm.items():
            idx[self.gens.index(new)] = self.gens.index(old)
        return LaurentPolynomial._raw(
            self.gens, {tuple(e[k] for k in idx): c for e, c in self.terms.items()}
        )

    def embed(self, gens: Sequence[str]) -> "LaurentPolynomial":
        """View this polynomial over a larger (or reordered) generator tuple."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        pos = [gens.index(g) for g in self.gens]
        out = {}
        for e, c in self.terms.items():
            if any(e[k] for k in range(len(e)) if self.gens[k] not in gens):
                raise ValueError("cannot drop a generator that occurs")
            full = [0] * len(gens)
            for k, v in zip(pos, e):
                full[k] = v
            out[tuple(full)] = c
        return LaurentPolynomial._raw(gens, out)

    def subs(self, **values) -> "LaurentPolynomial":
        """Substitute exact rational values (or ``1``) for some generators.

        The substituted generators stay in :attr:`gens` with exponent zero.
        """
        pos = {self.gens.index(k): v for k, v in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for k, v in pos.items():
                if e[k]:
                    c = c * Fraction(v) ** e[k]
                    e2[k] = 0
            t = tuple(e2)
            out[t] = out.get(t, 0) + c
        return LaurentPolynomial(self.gens, out)

    def invert(self, names: Iterable[str]) -> "LaurentPolynomial":
        """Apply ``p -> 1/p`` for the named generators."""
        ks = [self.gens.index(n) for n in names]
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for k in ks:
                e2[k] = -e2[k]
            out[tuple(e2)] = c
        return LaurentPolynomial._raw(self.gens, out)

    # -- inspection --------------------------------------------------------

    def degree(self, name: str) -> int:
        """Maximal exponent of ``name`` (``None`` for the zero polynomial)."""
        if not self.terms:
            return None
        k = self.gens.index(name)
        return max(e[k] for e in self.terms)

    def min_degree(self, name: str) -> int:
        if not self.terms:
            return None
        k = self.gens.index(name)
        return min(e[k] for e in self.terms)

    def total_degree(self, names: Sequence[str] | None = None) -> int:
        names = self.gens if names is None else names
        ks = [self.gens.index(n) for n in names]
        return max((sum(e[k] for k in ks) for e in self.terms), default=None)

    def is_polynomial(self, names: Sequence[str] | None = None) -> bool:
        names = self.gens if names is None else names
        ks = [self.gens.index(n) for n in names]
        return all(e[k] >= 0 for e in self.terms for k in ks)

    def coefficient(self, exps: Mapping[str, int]) -> "LaurentPolynomial":
        """Coefficient of a monomial in a subset of generators, as a polynomial in the rest."""
        ks = {self.gens.index(n): v for n, v in exps.items()}
        out = {}
        for e, c in self.terms.items():
            if all(e[k] == v for k, v in ks.items()):
                out[tuple(0 if k in ks else a for k, a in enumerate(e))] = c
        return LaurentPolynomial._raw(self.gens, out)

    def coefficients(self, names: Sequence[str]) -> dict[tuple[int, ...], object]:
        """Collect by the monomials in ``names``; coefficients become exact scalars."""
        ks = [self.gens.index(n) for n in names]
        rest = [k for k in range(len(self.gens)) if k not in ks]
        rest_names = tuple(self.gens[k] for k in rest)
        buckets: dict = {}
        for e, c in self.terms.items():
            key = tuple(e[k] for k in ks)
            buckets.setdefault(key, {})[tuple(e[k] for k in rest)] = c
        out = {}
        for key, sub in buckets.items():
            if len(sub) == 1 and all(v == 0 for v in next(iter(sub))):
                out[key] = Fraction(next(iter(sub.values())))
            else:
                val = RationalFunction.from_monomial_dict(rest_names, sub)
                out[key] = val.to_fraction() if val.is_constant() else val
        return out

    def is_symmetric(self, names: Sequence[str]) -> bool:
        names = list(names)
        for a, b in zip(names, names[1:]):
            if self.permute({a: b, b: a}) != self:
                return False
        return True

    def sorted_terms(self, names: Sequence[str] | None = None):
        """Terms in graded lexicographic order (highest first)."""
        ks = range(len(self.gens)) if names is None else [self.gens.index(n) for n in names]

        def key(item):
            e = item[0]
            return (sum(e[k] for k in ks), e)

        return sorted(self.terms.items(), key=key, reverse=True)

    def leading_term(self, names: Sequence[str] | None = None):
        """Lexicographically largest exponent restricted to ``names``."""
        if not self.terms:
            return None
        ks = range(len(self.gens)) if names is None else [self.gens.index(n) for n in names]
        return max(self.terms, key=lambda e: tuple(e[k] for k in ks))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{g}^{k}" if k != 1 else g for g, k in zip(self.gens, e) if k
            )
            cs = scalar_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPolynomial({self.gens}, {self})"

    def to_text(self) -> str:
        """Canonical serialization: sorted terms with explicit exponent vectors."""
        body = ", ".join(
            f"{scalar_str(c)}*[{','.join(map(str, e))}]" for e, c in self.sorted_terms()
        )
        return f"[{','.join(self.gens)}]{{{body}}}"


def xgens(n: int, params: Sequence[str] = (), prefix: str = "x") -> tuple[str, ...]:
    """``("x1", ..., "xn", *params)``."""
    return tuple(f"{prefix}{i}" for i in range(1, n + 1)) + tuple(params)


def vandermonde(gens: Sequence[str], names: Sequence[str]) -> LaurentPolynomial:
    """``prod_{i<j} (x_i - x_j)`` over the named variables."""
    out = LaurentPolynomial.constant(gens, 1)
    xs = [LaurentPolynomial.gen(gens, n) for n in names]
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            out = out * (xs[i] - xs[j])
    return out


def determinant(matrix: Sequence[Sequence[LaurentPolynomial]], gens) -> LaurentPolynomial:
    """Leibniz expansion; intended for the small matrices used here."""
    n = len(matrix)
    total = LaurentPolynomial(gens, {})
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPolynomial.constant(gens, -1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if not term:
                break
        total = total + term
    return total
