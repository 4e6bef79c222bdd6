"""Exact arithmetic in the rational-function field Q(q).

A :class:`QRat` is stored as a reduced quotient of two integer polynomials
``N/D`` in ``Z[q]`` with ``gcd(N, D) = 1`` in ``Z[q]`` and the lowest-degree
nonzero coefficient of ``D`` positive.  ``Z[q]`` is a UFD whose only units
are ``+1`` and ``-1``, so this representation is unique and equality is a
plain tuple comparison.

The canonical form exposed through :attr:`QRat.num` / :attr:`QRat.den` and
the JSON schema divides both parts by the content of ``D``, giving a
denominator of content 1 and a numerator with rational coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence, Union

Poly = tuple  # tuple[int, ...], ascending powers of q, no trailing zeros

_ZERO: Poly = ()
_ONE: Poly = (1,)


# ---------------------------------------------------------------------------
# integer polynomial kernel
# ---------------------------------------------------------------------------

def _trim(p: Sequence[int]) -> Poly:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _sub(a: Poly, b: Poly) -> Poly:
    return _add(a, _neg(b))


def _mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        c = a[0]
        return b if c == 1 else tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return a if c == 1 else tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _scale(a: Poly, c: int) -> Poly:
    if c == 1:
        return a
    if not c:
        return _ZERO
    return tuple(c * x for x in a)


def _valuation(a: Poly) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("valuation of zero polynomial")


def _content(a: Poly) -> int:
    return reduce(gcd, a, 0)


def _divexact_int(a: Poly, c: int) -> Poly:
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` (``len(a) >= len(b)``)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c:
            if lb != 1:
                r = [lb * x for x in r]
            shift = top - db
            for j, y in enumerate(b):
                r[shift + j] -= c * y
        r.pop()
    return _trim(r)


def _primitive_gcd(a: Poly, b: Poly) -> Poly:
    # a, b primitive, nonzero, valuation 0
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return b
        r = _divexact_int(r, _content(r))
        a, b = b, r
    return _ONE


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    """gcd in Z[q], normalized so the lowest nonzero coefficient is positive."""
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    if a == b:
        return _normalize_sign(a)
    va, vb = _valuation(a), _valuation(b)
    a, b = a[va:], b[vb:]
    v = min(va, vb)
    ca, cb = _content(a), _content(b)
    c = gcd(ca, cb)
    if len(a) == 1 or len(b) == 1:
        g: Poly = (c,)
    else:
        g = _primitive_gcd(_divexact_int(a, ca), _divexact_int(b, cb))
        g = _scale(g, c)
    g = _normalize_sign(g)
    return (0,) * v + g if v else g


def _normalize_sign(a: Poly) -> Poly:
    if a and a[_valuation(a)] < 0:
        return _neg(a)
    return a


def _divexact(a: Poly, b: Poly) -> Poly:
    """Exact division in Z[q]; raises if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if b == _ONE:
        return a
    if not a:
        return _ZERO
    if len(b) == 1:
        c = b[0]
        if any(x % c for x in a):
            raise ArithmeticError("inexact polynomial division")
        return tuple(x // c for x in a)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    out = [0] * (len(a) - db)
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c:
            qc, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            shift = top - db
            out[shift] = qc
            for j, y in enumerate(b):
                r[shift + j] -= qc * y
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            mono = str(mag)
        else:
            base = "q" if i == 1 else f"q^{i}"
            mono = base if mag == 1 else f"{mag}*{base}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


# ---------------------------------------------------------------------------
# QRat
# ---------------------------------------------------------------------------

Scalar = Union["QRat", int, Fraction]


class QRat:
    """Element of Q(q); immutable."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, value: Scalar = 0) -> None:
        if isinstance(value, QRat):
            self._n, self._d = value._n, value._d
        elif isinstance(value, int):
            self._n, self._d = _trim((value,)), _ONE
        elif isinstance(value, Fraction):
            self._n, self._d = _trim((value.numerator,)), (value.denominator,)
        else:
            raise TypeError(f"cannot build QRat from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _raw(cls, n: Poly, d: Poly) -> "QRat":
        obj = object.__new__(cls)
        obj._n, obj._d, obj._hash = n, d, None
        return obj

    @classmethod
    def from_polys(cls, num: Sequence[int], den: Sequence[int] = (1,)) -> "QRat":
        """Reduce ``num/den`` given as integer coefficient lists (ascending)."""
        n, d = _trim(num), _trim(den)
        if not d:
            raise ZeroDivisionError("QRat with zero denominator")
        return cls._reduce(n, d)

    @classmethod
    def from_rational_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> "QRat":
        """Build from rational coefficient lists (anything ``Fraction`` accepts)."""
        fn = [Fraction(c) for c in num]
        fd = [Fraction(c) for c in den]
        scale = 1
        for c in fn + fd:
            scale = scale * c.denominator // gcd(scale, c.denominator)
        return cls.from_polys([int(c * scale) for c in fn], [int(c * scale) for c in fd])

    @classmethod
    def q(cls, power: int = 1, coeff: int = 1) -> "QRat":
        """The monomial ``coeff * q**power``; ``power`` may be negative."""
        if not coeff:
            return ZERO
        if power >= 0:
            return cls._raw((0,) * power + (coeff,), _ONE)
        return cls._raw((coeff,), (0,) * (-power) + (1,))

    @staticmethod
    def _reduce(n: Poly, d: Poly) -> "QRat":
        if not n:
            return ZERO
        if d != _ONE:
            g = _poly_gcd(n, d)
            if g != _ONE:
                n, d = _divexact(n, g), _divexact(d, g)
            if d[_valuation(d)] < 0:
                n, d = _neg(n), _neg(d)
        return QRat._raw(n, d)

    # -- accessors ---------------------------------------------------------

    @property
    def num(self) -> tuple[Fraction, ...]:
        """Numerator coefficients in the content-1-denominator canonical form."""
        c = _content(self._d)
        return tuple(Fraction(x, c) for x in self._n)

    @property
    def den(self) -> tuple[Fraction, ...]:
        c = _content(self._d)
        return tuple(Fraction(x // c) for x in self._d)

    @property
    def int_num(self) -> Poly:
        return self._n

    @property
    def int_den(self) -> Poly:
        return self._d

    def is_zero(self) -> bool:
        return not self._n

    def is_polynomial(self) -> bool:
        return len(self._d) == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = QRat(other)
        an, ad, bn, bd = self._n, self._d, other._n, other._d
        if not an:
            return other
        if not bn:
            return self
        if ad == bd:
            if ad == _ONE:
                n = _add(an, bn)
                return QRat._raw(n, _ONE) if n else ZERO
            return QRat._reduce(_add(an, bn), ad)
        g = _poly_gcd(ad, bd)
        if g == _ONE:
            n = _add(_mul(an, bd), _mul(bn, ad))
            if not n:
                return ZERO
            return QRat._raw(n, _mul(ad, bd))
        s = _divexact(ad, g)
        t = _add(_mul(an, _divexact(bd, g)), _mul(bn, s))
        if not t:
            return ZERO
        g2 = _poly_gcd(t, g)
        if g2 == _ONE:
            return QRat._raw(t, _mul(s, bd))
        return QRat._raw(_divexact(t, g2), _mul(s, _divexact(bd, g2)))

    __radd__ = __add__

    def __neg__(self) -> "QRat":
        return QRat._raw(_neg(self._n), self._d)

    def __pos__(self) -> "QRat":
        return self

    def __sub__(self, other: Scalar) -> "QRat":
        if not isinstance(other, (QRat, int, Fraction)):
            return NotImplemented
        return self + (-QRat(other) if not isinstance(other, QRat) else -other)

    def __rsub__(self, other: Scalar) -> "QRat":
        return QRat(other) - self

    def __mul__(self, other: Scalar) -> "QRat":
        if not isinstance(other, QRat):
            if isinstance(other, int):
                if not other or not self._n:
                    return ZERO
                if self._d == _ONE:
                    return QRat._raw(_scale(self._n, other), _ONE)
            elif not isinstance(other, Fraction):
                return NotImplemented
            other = QRat(other)
        an, ad, bn, bd = self._n, self._d, other._n, other._d
        if not an or not bn:
            return ZERO
        if ad == _ONE and bd == _ONE:
            return QRat._raw(_mul(an, bn), _ONE)
        g1 = _poly_gcd(an, bd) if bd != _ONE else _ONE
        g2 = _poly_gcd(bn, ad) if ad != _ONE else _ONE
        if g1 != _ONE:
            an, bd = _divexact(an, g1), _divexact(bd, g1)
        if g2 != _ONE:
            bn, ad = _divexact(bn, g2), _divexact(ad, g2)
        n, d = _mul(an, bn), _mul(ad, bd)
        if d[_valuation(d)] < 0:
            n, d = _neg(n), _neg(d)
        return QRat._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "QRat":
        if not self._n:
            raise ZeroDivisionError("QRat division by zero")
        n, d = self._d, self._n
        if d[_valuation(d)] < 0:
            n, d = _neg(n), _neg(d)
        return QRat._raw(n, d)

    def __truediv__(self, other: Scalar) -> "QRat":
        if not isinstance(other, (QRat, int, Fraction)):
            return NotImplemented
        return self * QRat(other).inverse()

    def __rtruediv__(self, other: Scalar) -> "QRat":
        return QRat(other) * self.inverse()

    def __pow__(self, e: int) -> "QRat":
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QRat):
            return self._n == other._n and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self == QRat(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._d))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._n)

    # -- evaluation / display ---------------------------------------------

    def eval(self, q0: Union[int, Fraction]) -> Fraction:
        return qrat_eval(self, q0)

    def __repr__(self) -> str:
        return f"QRat({self})"

    def __str__(self) -> str:
        num = _poly_str(self._n)
        if self._d == _ONE:
            return num
        if len(self._n) > 1 and sum(1 for c in self._n if c) > 1:
            num = f"({num})"
        den = _poly_str(self._d)
        if sum(1 for c in self._d if c) > 1 or self._d[-1] != 1 and len(self._d) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {
            "num": [[c.numerator, c.denominator] for c in self.num],
            "den": [[c.numerator, c.denominator] for c in self.den],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QRat":
        num = [Fraction(a, b) for a, b in data["num"]]
        den = [Fraction(a, b) for a, b in data["den"]]
        return cls.from_rational_coeffs(num, den)


ZERO = QRat._raw(_ZERO, _ONE)
ONE = QRat._raw(_ONE, _ONE)
Q = QRat.q(1)


def as_qrat(x: Scalar) -> QRat:
    return x if isinstance(x, QRat) else QRat(x)


def qrat_arith(a: QRat, b: QRat, op: str) -> QRat:
    """Apply ``op`` in {"add", "sub", "mul", "div"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def qsum(values: Iterable[QRat]) -> QRat:
    """Sum many QRats, adding numerators over shared denominators first."""
    groups: dict[Poly, Poly] = {}
    for v in values:
        if not v._n:
            continue
        groups[v._d] = _add(groups.get(v._d, _ZERO), v._n)
    total = ZERO
    for d, n in groups.items():
        if n:
            total = total + QRat._reduce(n, d)
    return total


def qprod(values: Iterable[QRat]) -> QRat:
    out = ONE
    for v in values:
        out = out * v
    return out


def pochhammer(a: Scalar, count: int) -> QRat:
    """Finite q-Pochhammer symbol ``(a; q)_count``."""
    if count < 0:
        raise ValueError("count must be non-negative")
    a = as_qrat(a)
    out = ONE
    shift = ONE
    for _ in range(count):
        out = out * (ONE - a * shift)
        if not out:
            return ZERO
        shift = shift * Q
    return out


def q_pochhammer_power(e: int, count: int) -> QRat:
    """``(q^e; q)_count`` for an integer exponent ``e``."""
    return pochhammer(QRat.q(e), count)


def q_binomial(n: int, r: int) -> QRat:
    """Gaussian binomial coefficient ``[n choose r]_q`` (a polynomial)."""
    if r < 0 or r > n:
        return ZERO
    return q_pochhammer_power(1, n) / (q_pochhammer_power(1, r) * q_pochhammer_power(1, n - r))


def _horner(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def qrat_eval(a: QRat, q0: Union[int, Fraction]) -> Fraction:
    """Exact value of ``a`` at the rational point ``q = q0``."""
    x = Fraction(q0)
    d = _horner(a._d, x)
    if not d:
        raise ZeroDivisionError(f"denominator of {a} vanishes at q = {x}")
    return _horner(a._n, x) / d
