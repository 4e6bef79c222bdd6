"""Truncated Laurent series in one variable over an arbitrary coefficient ring.

Used to read off residues by direct expansion: substitute
``x = x0 * (1 + eps)``, expand every factor in ``eps`` and take the
coefficient of ``eps**-1``.  Rings nest, so a series whose coefficients are
themselves series gives sequential residues in several variables.
"""

from __future__ import annotations

from typing import Any, Sequence

from .qfield import ONE, ZERO, QRat
from .symlaurent import LaurentPoly


class PrecisionError(ArithmeticError):
    pass


class QRing:
    zero = ZERO
    one = ONE

    @staticmethod
    def is_zero(c: QRat) -> bool:
        return not c

    @staticmethod
    def inv(c: QRat) -> QRat:
        return c.inverse()

    @staticmethod
    def lift(c: QRat) -> QRat:
        return c


class LaurentRing:
    """Laurent polynomials over Q(q); only monomials are invertible."""

    def __init__(self, nvars: int) -> None:
        self.nvars = nvars
        self.zero = LaurentPoly({}, nvars)
        self.one = LaurentPoly.constant(ONE, nvars)

    @staticmethod
    def is_zero(c: LaurentPoly) -> bool:
        return c.is_zero()

    def inv(self, c: LaurentPoly) -> LaurentPoly:
        if len(c) != 1:
            raise ZeroDivisionError(f"{c} is not a unit of the Laurent ring")
        (e, v), = c.terms.items()
        return LaurentPoly({tuple(-x for x in e): v.inverse()}, self.nvars)

    def lift(self, c: QRat) -> LaurentPoly:
        return LaurentPoly.constant(c, self.nvars)


class SeriesRing:
    """Ring of truncated series with relative precision ``prec`` over ``base``."""

    def __init__(self, base: Any, prec: int) -> None:
        self.base = base
        self.prec = prec
        self.zero = Series([base.zero] * prec, 0, base)
        self.one = Series([base.one] + [base.zero] * (prec - 1), 0, base)

    @staticmethod
    def is_zero(c: "Series") -> bool:
        return all(c.ring.is_zero(x) for x in c.coeffs)

    @staticmethod
    def inv(c: "Series") -> "Series":
        return c.inverse()

    def lift(self, c: QRat) -> "Series":
        return self.constant(self.base.lift(c))

    def constant(self, c: Any) -> "Series":
        return Series([c] + [self.base.zero] * (self.prec - 1), 0, self.base)


class Series:
    """``sum_i coeffs[i] * eps**(val + i) + O(eps**(val + len(coeffs)))``."""

    __slots__ = ("coeffs", "val", "ring")

    def __init__(self, coeffs: Sequence[Any], val: int, ring: Any) -> None:
        self.coeffs = list(coeffs)
        self.val = val
        self.ring = ring

    @property
    def order(self) -> int:
        """Absolute precision: terms from this exponent on are unknown."""
        return self.val + len(self.coeffs)

    def _get(self, e: int) -> Any:
        i = e - self.val
        if i < 0:
            return self.ring.zero
        return self.coeffs[i]

    def __add__(self, other: "Series") -> "Series":
        lo = min(self.val, other.val)
        hi = min(self.order, other.order)
        return Series([self._get(e) + other._get(e) for e in range(lo, hi)], lo, self.ring)

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.val, self.ring)

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def scale(self, c: Any) -> "Series":
        """Multiply by an element of the coefficient ring."""
        return Series([x * c for x in self.coeffs], self.val, self.ring)

    def __mul__(self, other: "Series") -> "Series":
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = []
        for i in range(n):
            acc = self.ring.zero
            for j in range(i + 1):
                acc = acc + a[j] * b[i - j]
            out.append(acc)
        return Series(out, self.val + other.val, self.ring)

    def inverse(self) -> "Series":
        coeffs, val = list(self.coeffs), self.val
        while coeffs and self.ring.is_zero(coeffs[0]):
            coeffs.pop(0)
            val += 1
        if not coeffs:
            raise PrecisionError("cannot invert a series known only to be O(eps^N)")
        b0 = self.ring.inv(coeffs[0])
        out = [b0]
        for i in range(1, len(coeffs)):
            acc = self.ring.zero
            for j in range(1, i + 1):
                acc = acc + coeffs[j] * out[i - j]
            out.append(-(b0 * acc))
        return Series(out, -val, self.ring)

    def __pow__(self, e: int) -> "Series":
        if e < 0:
            return self.inverse() ** (-e)
        out = Series([self.ring.one] + [self.ring.zero] * (len(self.coeffs) - 1), 0, self.ring)
        for _ in range(e):
            out = out * self
        return out

    def coefficient(self, e: int) -> Any:
        if e >= self.order:
            raise PrecisionError(f"coefficient of eps^{e} is beyond the series precision {self.order}")
        return self._get(e)


def point_series(x0: Any, ring: Any, prec: int) -> Series:
    """The series of ``x = x0 * (1 + eps)``."""
    return Series([x0, x0] + [ring.zero] * (prec - 2), 0, ring)
