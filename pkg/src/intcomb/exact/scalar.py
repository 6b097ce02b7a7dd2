"""Exact scalars: rationals and rational functions in formal parameters.

Plain rationals are represented by :class:`fractions.Fraction`.  Anything
depending on a formal parameter (``q``, ``t``, or any other named symbol) is a
:class:`RationalFunction`, kept in a canonical normal form so that structural
equality is mathematical equality.

Both types support ``+ - * / **`` and mix freely with ``int``; code above this
layer never needs to know which one it holds.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from sympy import ZZ
from sympy.polys.rings import PolyRing

__all__ = [
    "RationalFunction",
    "ExactScalar",
    "as_scalar",
    "is_zero",
    "scalar_str",
    "symbol",
]


@lru_cache(maxsize=None)
def _ring(names: tuple[str, ...]) -> PolyRing:
    return PolyRing(names, ZZ)


def _embed(poly, ring: PolyRing):
    """Re-express ``poly`` in ``ring``, whose generators contain poly's."""
    if poly.ring == ring:
        return poly
    index = [ring.symbols.index(s) for s in poly.ring.symbols]
    ngens = ring.ngens
    terms = {}
    for monom, coeff in poly.terms():
        new = [0] * ngens
        for k, e in zip(index, monom):
            new[k] = e
        terms[tuple(new)] = coeff
    return ring.from_dict(terms) if terms else ring.zero


def _common_ring(r1: PolyRing, r2: PolyRing) -> PolyRing:
    if r1 == r2:
        return r1
    names = tuple(sorted({str(s) for s in r1.symbols} | {str(s) for s in r2.symbols}))
    return _ring(names)


class RationalFunction:
    """Quotient of two integer polynomials in named formal parameters.

    Normal form: ``gcd(num, den) = 1`` over ``Z[params]`` (content included)
    and the leading coefficient of ``den`` is positive.  Parameters that do not
    occur are dropped from the ring, so ``q/q`` collapses to the constant 1
    and compares equal to ``Fraction(1)``.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _normalized=False):
        if den is None:
            den = num.ring.one
        if den.ring != num.ring:
            ring = _common_ring(num.ring, den.ring)
            num, den = _embed(num, ring), _embed(den, ring)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def gen(cls, name: str) -> "RationalFunction":
        ring = _ring((name,))
        return cls(ring.gens[0], ring.one, _normalized=True)

    @classmethod
    def constant(cls, value) -> "RationalFunction":
        value = Fraction(value)
        ring = _ring(())
        return cls(ring(int(value.numerator)), ring(int(value.denominator)))

    @classmethod
    def from_monomial_dict(cls, names: tuple[str, ...], terms: dict) -> "RationalFunction":
        """Build from a Laurent polynomial ``{exponent tuple: rational coeff}``."""
        if not terms:
            return cls.constant(0)
        ring = _ring(tuple(names))
        shift = [min(e[k] for e in terms) for k in range(len(names))]
        shift = [min(s, 0) for s in shift]
        den_lcm = 1
        for c in terms.values():
            den_lcm = den_lcm * Fraction(c).denominator // gcd(den_lcm, Fraction(c).denominator)
        num = ring.from_dict({
            tuple(e[k] - shift[k] for k in range(len(names))): int(Fraction(c) * den_lcm)
            for e, c in terms.items()
        })
        den = ring.from_dict({tuple(-s for s in shift): den_lcm})
        return cls(num, den)

    # -- structure ---------------------------------------------------------

    @property
    def params(self) -> tuple[str, ...]:
        return tuple(str(s) for s in self.num.ring.symbols)

    @property
    def variant(self) -> str:
        """``"rational"``, ``"q"``, ``"qt"`` or ``"general"`` by occurring parameters."""
        used = set(self.params)
        if not used:
            return "rational"
        if used == {"q"}:
            return "q"
        if used <= {"q", "t"}:
            return "qt"
        return "general"

    def is_constant(self) -> bool:
        return not self.params

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self.num.LC) if self.num else 0, int(self.den.LC))

    def is_laurent(self) -> bool:
        """True when the denominator is a single monomial."""
        return len(self.den.terms()) == 1

    def laurent_terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent dict over :attr:`params`; only valid when :meth:`is_laurent`."""
        if not self.is_laurent():
            raise ValueError("not a Laurent polynomial in its parameters")
        ((dmon, dc),) = self.den.terms()
        return {
            tuple(a - b for a, b in zip(mon, dmon)): Fraction(int(c), int(dc))
            for mon, c in self.num.terms()
        }

    def degree(self, name: str) -> int:
        """Degree in ``name`` (numerator degree minus denominator degree)."""
        if name not in self.params:
            return 0 if self.num else -(10**9)
        k = self.params.index(name)
        return self.num.degree(k) - self.den.degree(k)

    def subs(self, **values) -> "ExactScalar":
        """Substitute exact values (or other scalars) for named parameters."""
        out_num = _evaluate(self.num, values)
        out_den = _evaluate(self.den, values)
        return _simplify(out_num / out_den)

    def invert_params(self, names=("q", "t")) -> "ExactScalar":
        """Apply ``p -> 1/p`` for each named parameter present."""
        return self.subs(**{n: 1 / symbol(n) for n in names if n in self.params})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Rational)):
            return RationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = _align(self.num, self.den, other.num, other.den)
        return _simplify(RationalFunction(a * d + c * b, b * d))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = _align(self.num, self.den, other.num, other.den)
        return _simplify(RationalFunction(a * c, b * d))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        a, b, c, d = _align(self.num, self.den, other.num, other.den)
        return _simplify(RationalFunction(a * d, b * c))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.num:
                raise ZeroDivisionError("zero to a negative power")
            return RationalFunction(self.den**-k, self.num**-k)
        return RationalFunction(self.num**k, self.den**k, _normalized=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.params == other.params and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.to_fraction() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self.params, str(self.num), str(self.den)))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == self.den.ring.one:
            return str(self.num)
        return f"({self.num})/({self.den})"


ExactScalar = Fraction | RationalFunction


def _align(a, b, c, d):
    ring = _common_ring(a.ring, c.ring)
    return _embed(a, ring), _embed(b, ring), _embed(c, ring), _embed(d, ring)


def _normalize(num, den):
    ring = num.ring
    if not num:
        empty = _ring(())
        return empty.zero, empty.one
    _, num, den = num.cofactors(den)
    if den.LC < 0:
        num, den = -num, -den
    # drop generators that no longer occur
    used = [k for k in range(ring.ngens) if num.degree(k) > 0 or den.degree(k) > 0]
    if len(used) != ring.ngens:
        small = _ring(tuple(str(ring.symbols[k]) for k in used))
        num = small.from_dict({tuple(m[k] for k in used): c for m, c in num.terms()}) if num else small.zero
        den = small.from_dict({tuple(m[k] for k in used): c for m, c in den.terms()})
    return num, den


def _simplify(value):
    """Return a Fraction when a rational function is a constant."""
    if isinstance(value, RationalFunction) and value.is_constant():
        return value.to_fraction()
    return value


def _evaluate(poly, values):
    total = Fraction(0)
    names = [str(s) for s in poly.ring.symbols]
    for monom, coeff in poly.terms():
        term = Fraction(int(coeff))
        for name, e in zip(names, monom):
            if e:
                base = values.get(name, symbol(name))
                term = term * base**e
        total = total + term
    return total


def symbol(name: str) -> RationalFunction:
    """The formal parameter ``name`` as a scalar."""
    return RationalFunction.gen(name)


def as_scalar(value) -> ExactScalar:
    """Coerce ints, Fractions, numeric strings and rational functions."""
    if isinstance(value, RationalFunction):
        return _simplify(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def is_zero(value) -> bool:
    return not value


def scalar_str(value) -> str:
    """Canonical text form used in reports."""
    if isinstance(value, RationalFunction):
        return str(value)
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
