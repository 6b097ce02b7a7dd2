"""Truncated formal Laurent series in one variable."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalar import scalar_str

__all__ = ["NonInvertibleSeries", "TruncatedSeries"]


class NonInvertibleSeries(ArithmeticError):
    pass


def _sqrt_rational(c) -> Fraction:
    c = Fraction(c)
    if c < 0:
        raise ValueError("no series square root")
    from math import isqrt

    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n != c.numerator or d * d != c.denominator:
        raise ValueError("no series square root")
    return Fraction(n, d)


class TruncatedSeries:
    """``sum_{k=val}^{order} c_k var^k + O(var^{order+1})``.

    ``coeffs[i]`` is the coefficient of ``var**(val + i)``; the representation
    is normalized so that the first stored coefficient is nonzero unless the
    series is zero to the working order.  Arithmetic keeps the smaller of the
    two orders, as with any truncated expansion.
    """

    __slots__ = ("var", "val", "coeffs", "order")

    def __init__(self, coeffs: Sequence, order: int, val: int = 0, var: str = "g"):
        coeffs = [c for c in coeffs][: max(order - val + 1, 0)]
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            val += 1
        self.var = var
        self.order = order
        self.val = val if coeffs else order + 1
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dict(cls, terms: dict, order: int, var: str = "g") -> "TruncatedSeries":
        if not terms:
            return cls([], order, var=var)
        lo = min(terms)
        return cls([terms.get(k, 0) for k in range(lo, order + 1)], order, lo, var)

    @classmethod
    def constant(cls, c, order: int, var: str = "g") -> "TruncatedSeries":
        return cls([c], order, 0, var)

    @classmethod
    def monomial(cls, k: int, order: int, c=1, var: str = "g") -> "TruncatedSeries":
        return cls([c], order, k, var)

    # -- access ------------------------------------------------------------

    def __getitem__(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        i = k - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def coefficient_list(self, start: int = 0) -> list:
        return [self[k] for k in range(start, self.order + 1)]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def valuation(self) -> int:
        return self.val

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order), self.val, self.var)

    def _check(self, other):
        if isinstance(other, TruncatedSeries):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return TruncatedSeries.constant(other, self.order, self.var)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        return TruncatedSeries(
            [self[k] + other[k] for k in range(lo, order + 1)], order, lo, self.var
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order, self.val, self.var)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.order, self.val, self.var)
        other = self._check(other)
        # a term of one factor is only known through its own order, shifted by the other's valuation
        order = min(self.order + other.val, other.order + self.val)
        if not self.coeffs or not other.coeffs:
            return TruncatedSeries([], order, var=self.var)
        val = self.val + other.val
        n = order - val + 1
        if n <= 0:
            return TruncatedSeries([], order, var=self.var)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = 0
            for i in range(max(0, k - len(b) + 1), min(k + 1, len(a))):
                s += a[i] * b[k - i]
            out.append(s)
        return TruncatedSeries(out, order, val, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        if not self.coeffs:
            raise NonInvertibleSeries("non-invertible series")
        a = self.coeffs
        a0 = a[0]
        # relative precision of self is order - val; the inverse keeps it
        n = self.order - self.val + 1
        inv = [Fraction(1) / a0]
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, len(a) - 1) + 1):
                s += a[i] * inv[k - i]
            inv.append(-s * inv[0])
        val = -self.val
        return TruncatedSeries(inv, val + n - 1, val, self.var)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self * (Fraction(1) / other)
        other = self._check(other)
        if other.is_zero():
            raise NonInvertibleSeries("non-invertible series")
        return (self * other.inverse()).truncate(min(self.order, other.order))

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedSeries.constant(1, self.order + abs(self.val), self.var)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``var**k``."""
        return TruncatedSeries(self.coeffs, self.order + k, self.val + k, self.var)

    def sqrt(self) -> "TruncatedSeries":
        """Square root with positive leading coefficient; valuation must be even."""
        if not self.coeffs:
            return TruncatedSeries([], self.order, var=self.var)
        if self.val % 2:
            raise ValueError("no series square root")
        a = self.coeffs
        s0 = _sqrt_rational(a[0])
        n = self.order - self.val + 1
        s = [s0]
        for k in range(1, n):
            acc = a[k] if k < len(a) else 0
            for i in range(1, k):
                acc -= s[i] * s[k - i]
            s.append(acc / (2 * s0))
        val = self.val // 2
        return TruncatedSeries(s, val + n - 1, val, self.var)

    def compose_poly(self, poly_coeffs: Sequence) -> "TruncatedSeries":
        """Evaluate ``sum_k p_k * self**k`` by Horner's rule."""
        out = TruncatedSeries([], self.order, var=self.var)
        for c in reversed(poly_coeffs):
            out = out * self + c
        return out

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            order = min(self.order, other.order)
            lo = min(self.val, other.val)
            return self.var == other.var and all(self[k] == other[k] for k in range(lo, order + 1))
        if isinstance(other, (int, Fraction)):
            return self == TruncatedSeries.constant(other, self.order, self.var)
        return NotImplemented

    __hash__ = None

    def first_difference(self, other: "TruncatedSeries"):
        """Lowest exponent where two series differ, or ``None``."""
        order = min(self.order, other.order)
        for k in range(min(self.val, other.val), order + 1):
            if self[k] != other[k]:
                return k
        return None

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            k = self.val + i
            cs = scalar_str(c)
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        parts.append(f"O({self.var}^{self.order + 1})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def to_text(self) -> str:
        terms = ", ".join(
            f"{self.val + i}:{scalar_str(c)}" for i, c in enumerate(self.coeffs) if c
        )
        return f"{self.var}{{{terms}}}+O({self.var}^{self.order + 1})"
