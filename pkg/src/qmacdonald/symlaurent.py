"""Sparse multivariate Laurent polynomials with Q(q) coefficients.

Also holds the symmetric-function pieces built on top of them: monomial
symmetric polynomials, the weight ``Delta(x) = prod_{i != j} (x_i/x_j; q)_k``,
the constant-term inner product and truncations of the Cauchy kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Optional, Sequence

from .partitions import Partition
from .qfield import ONE, ZERO, QRat, Scalar, as_qrat, q_binomial, qsum

ExpVec = tuple  # tuple[int, ...]


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Optional[Mapping[ExpVec, Scalar]] = None, nvars: int = 1) -> None:
        clean: dict[ExpVec, QRat] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")
            c = as_qrat(c)
            if c:
                clean[e] = c
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        return obj

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "LaurentPoly":
        c = as_qrat(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> "LaurentPoly":
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def variable(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls._raw({tuple(e): ONE}, nvars)

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> QRat:
        return self.terms.get(tuple(exps), ZERO)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def homogeneous_degree(self) -> Optional[int]:
        """Total degree if homogeneous (None otherwise, or for zero)."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def _check(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.nvars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = as_qrat(c)
        if not c:
            return LaurentPoly._raw({}, self.nvars)
        if c == ONE:
            return self
        return LaurentPoly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        # accumulate numerators per (exponent, denominator) so each output
        # coefficient is reduced once
        acc: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                bucket = acc.get(e)
                if bucket is None:
                    acc[e] = [ca * cb]
                else:
                    bucket.append(ca * cb)
        out = {}
        for e, vals in acc.items():
            s = vals[0] if len(vals) == 1 else qsum(vals)
            if s:
                out[e] = s
        return LaurentPoly._raw(out, self.nvars)

    def __rmul__(self, other) -> "LaurentPoly":
        return self.scale(other)

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.constant(ONE, self.nvars)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # -- structural operations ----------------------------------------------

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw(
            {tuple(-x for x in e): c for e, c in self.terms.items()}, self.nvars
        )

    def constant_term(self) -> QRat:
        return self.terms.get((0,) * self.nvars, ZERO)

    def permute(self, perm: Sequence[int]) -> "LaurentPoly":
        """Substitute x_i -> x_{perm[i]}."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                new[perm[i]] = x
            out[tuple(new)] = c
        return LaurentPoly._raw(out, self.nvars)

    def embed(self, nvars: int, offset: int = 0) -> "LaurentPoly":
        """View as a polynomial in ``nvars`` variables starting at ``offset``."""
        pad_l = (0,) * offset
        pad_r = (0,) * (nvars - offset - self.nvars)
        return LaurentPoly._raw({pad_l + e + pad_r: c for e, c in self.terms.items()}, nvars)

    def evaluate(self, values: Sequence[Scalar]) -> QRat:
        """Substitute every variable by a Q(q) value."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [as_qrat(v) for v in values]
        powers: list[dict[int, QRat]] = [{} for _ in vals]

        def power(i: int, p: int) -> QRat:
            cache = powers[i]
            if p not in cache:
                cache[p] = vals[i] ** p
            return cache[p]

        terms = []
        for e, c in self.terms.items():
            t = c
            for i, p in enumerate(e):
                if p:
                    t = t * power(i, p)
            terms.append(t)
        return qsum(terms)

    def substitute(self, var: int, value: Scalar) -> "LaurentPoly":
        """Set variable ``var`` to ``value`` and drop it from the variable list."""
        value = as_qrat(value)
        out: dict = {}
        for e, c in self.terms.items():
            rest = e[:var] + e[var + 1:]
            v = c * value ** e[var]
            acc = out.get(rest)
            out[rest] = v if acc is None else acc + v
        return LaurentPoly({k: v for k, v in out.items() if v}, self.nvars - 1)

    def truncate(self, keep) -> "LaurentPoly":
        return LaurentPoly._raw({e: c for e, c in self.terms.items() if keep(e)}, self.nvars)

    def sorted_terms(self) -> list[tuple[ExpVec, QRat]]:
        """Terms in graded-lex order (total degree, then lex, descending)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self) -> str:
        return f"LaurentPoly({self}, nvars={self.nvars})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if p == 1 else f"x{i + 1}^{p}" for i, p in enumerate(e) if p
            )
            coef = str(c)
            if not mono:
                pieces.append(coef)
            elif c == ONE:
                pieces.append(mono)
            elif c == -ONE:
                pieces.append("-" + mono)
            else:
                pieces.append(f"({coef})*{mono}")
        text = pieces[0]
        for p in pieces[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text

    def to_json(self) -> dict:
        return {
            "n": self.nvars,
            "terms": [{"e": list(e), "c": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        n = data["n"]
        return cls({tuple(t["e"]): QRat.from_json(t["c"]) for t in data["terms"]}, n)


def lp_arith(f: LaurentPoly, g, op: str) -> LaurentPoly:
    """``op`` in {"add", "mul", "scalar_mul"}; ``g`` is a scalar for scalar_mul."""
    if op == "add":
        return f + g
    if op == "mul":
        if not isinstance(g, LaurentPoly):
            raise TypeError("mul expects a LaurentPoly; use scalar_mul for scalars")
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def bar(f: LaurentPoly) -> LaurentPoly:
    return f.bar()


def constant_term(f: LaurentPoly) -> QRat:
    return f.constant_term()


def distinct_permutations(vec: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(vec)), reverse=True)


def monomial_symmetric(lam: Partition, n: int) -> LaurentPoly:
    if lam.length > n:
        raise ValueError(f"partition {lam.parts} has more than {n} parts")
    exps = lam.with_n(n).padded()
    return LaurentPoly._raw({e: ONE for e in distinct_permutations(exps)}, n)


@lru_cache(maxsize=None)
def pochhammer_laurent(k: int) -> tuple[QRat, ...]:
    """Coefficients of (u; q)_k as a polynomial in u (ascending)."""
    coeffs = [ONE]
    for s in range(k):
        shifted = [ZERO] + [-(c * QRat.q(s)) for c in coeffs]
        coeffs = [a + b for a, b in zip(coeffs + [ZERO], shifted)]
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _pair_factor(k: int) -> dict[int, QRat]:
    """(u; q)_k (1/u; q)_k as a map exponent -> coefficient."""
    p = pochhammer_laurent(k)
    out: dict[int, QRat] = {}
    for a, ca in enumerate(p):
        for b, cb in enumerate(p):
            out[a - b] = out.get(a - b, ZERO) + ca * cb
    return {e: c for e, c in out.items() if c}


@lru_cache(maxsize=None)
def delta_weight(n: int, k: int) -> LaurentPoly:
    """Delta(x) = prod_{i != j} (x_i/x_j; q)_k expanded; cached per (n, k)."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    pair = _pair_factor(k)
    result = LaurentPoly.constant(ONE, n)
    for i in range(n):
        for j in range(i + 1, n):
            terms = {}
            for e, c in pair.items():
                v = [0] * n
                v[i], v[j] = e, -e
                terms[tuple(v)] = c
            result = result * LaurentPoly._raw(terms, n)
    assert all(sum(e) == 0 for e in result.terms), "Delta must be homogeneous of degree 0"
    return result


def inner_product(f: LaurentPoly, g: LaurentPoly, n: int, k: int) -> QRat:
    """<f, g> = [f * bar(g) * Delta]_1 / n!, without forming the product."""
    if f.nvars != n or g.nvars != n:
        raise ValueError("inner_product operands must have n variables")
    if f.is_zero() or g.is_zero():
        return ZERO
    df, dg = f.homogeneous_degree(), g.homogeneous_degree()
    if df is not None and dg is not None and df != dg:
        return ZERO
    delta = delta_weight(n, k).terms
    # [x^a * x^-b * Delta]_1 is the Delta coefficient at b - a
    acc = []
    for ea, ca in f.terms.items():
        for eb, cb in g.terms.items():
            d = delta.get(tuple(y - x for x, y in zip(ea, eb)))
            if d is not None:
                acc.append(ca * cb * d)
    return qsum(acc) / factorial(n)


@dataclass(frozen=True)
class BiSeries:
    """Truncated power series in y over Laurent polynomials in x.

    ``poly`` has ``n + m`` variables ordered (x_1..x_n, y_1..y_m) and keeps
    only terms of total y-degree at most ``cap``.
    """

    poly: LaurentPoly
    n: int
    m: int
    cap: int

    def y_degree(self, e: ExpVec) -> int:
        return sum(e[self.n:])

    def truncated(self, poly: LaurentPoly) -> "BiSeries":
        n, cap = self.n, self.cap
        return BiSeries(poly.truncate(lambda e: sum(e[n:]) <= cap), self.n, self.m, cap)

    def __mul__(self, other: LaurentPoly) -> "BiSeries":
        return self.truncated(self.poly * other)

    def __sub__(self, other: LaurentPoly) -> "BiSeries":
        return self.truncated(self.poly - other)


def kernel_coefficients(k: int, cap: int) -> list[QRat]:
    """1/(u; q)_k = sum_r [r+k-1 choose r]_q u^r, coefficients up to ``cap``."""
    return [q_binomial(r + k - 1, r) for r in range(cap + 1)]


def kernel_truncated(m: int, n: int, k: int, cap: int) -> BiSeries:
    """prod_{i<=m, j<=n} 1/(y_i x_j; q)_k to total y-degree ``cap``."""
    if cap < 0:
        raise ValueError("degree cap must be non-negative")
    nv = n + m
    coeffs = kernel_coefficients(k, cap)
    series = BiSeries(LaurentPoly.constant(ONE, nv), n, m, cap)
    for i in range(m):
        for j in range(n):
            terms = {}
            for r, c in enumerate(coeffs):
                e = [0] * nv
                e[j] = r
                e[n + i] = r
                terms[tuple(e)] = c
            series = series * LaurentPoly(terms, nv)
    return series


def kernel_denominator(m: int, n: int, k: int) -> LaurentPoly:
    """prod_{i<=m, j<=n} (y_i x_j; q)_k in the (x, y) variable layout."""
    nv = n + m
    p = pochhammer_laurent(k)
    out = LaurentPoly.constant(ONE, nv)
    for i in range(m):
        for j in range(n):
            terms = {}
            for r, c in enumerate(p):
                e = [0] * nv
                e[j] = r
                e[n + i] = r
                terms[tuple(e)] = c
            out = out * LaurentPoly(terms, nv)
    return out


def symmetrize_check(f: LaurentPoly) -> bool:
    """True if ``f`` is invariant under every adjacent transposition."""
    n = f.nvars
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        if f.permute(perm) != f:
            return False
    return True


def sum_polys(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    acc: dict = {}
    for p in polys:
        for e, c in p.terms.items():
            acc.setdefault(e, []).append(c)
    out = {}
    for e, vals in acc.items():
        s = qsum(vals)
        if s:
            out[e] = s
    return LaurentPoly._raw(out, nvars)
