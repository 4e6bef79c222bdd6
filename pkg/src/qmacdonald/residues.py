"""Residue calculus for the constant-term integrals with kernel 1/(y/x; q)_k.

Closed-form residues use the simple-pole rule: at ``x_j = y_{i_j} q^{l_j}``
the factor ``(y_{i_j}/x_j; q)_k`` contributes ``1 / ((q^-l; q)_l (q; q)_{k-1-l})``
(with respect to ``dx_j/x_j``) and every other factor is evaluated at the
point.  Independent checks expand the integrand in ``eps`` around the pole
(see :mod:`series`) and read off the ``eps^-1`` coefficient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Optional, Sequence

from .macdonald import MacdonaldBasis, _basis, norm_via_ct
from .partitions import Partition, b_lambda_armleg
from .qfield import ONE, ZERO, QRat, as_qrat, pochhammer, q_pochhammer_power, qprod, qsum
from .series import LaurentRing, QRing, Series, SeriesRing, point_series
from .symlaurent import LaurentPoly, kernel_coefficients, pochhammer_laurent

SERIES_PRECISION = 3


class NonGenericSample(ValueError):
    """The sampled y values make a factor vanish at the residue point; resample."""


@dataclass(frozen=True)
class ResiduePoint:
    """The point x_j = y_{assignment[j]} * q**exponents[j] (0-based indices)."""

    assignment: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.assignment) != len(self.exponents):
            raise ValueError("assignment and exponents differ in length")
        if len(set(self.assignment)) != len(self.assignment):
            raise ValueError("assignment indices must be distinct")

    def coordinates(self, y: Sequence[QRat]) -> list[QRat]:
        return [as_qrat(y[i]) * QRat.q(l) for i, l in zip(self.assignment, self.exponents)]


def residue_constant(l: int, k: int) -> QRat:
    """(q^-l; q)_l (q; q)_{k-1-l}, the divisor contributed by a simple pole."""
    if not 0 <= l <= k - 1:
        raise ValueError(f"exponent l = {l} outside 0..{k - 1}")
    return q_pochhammer_power(-l, l) * q_pochhammer_power(1, k - 1 - l)


def _check_y(y: Sequence) -> list[QRat]:
    return [as_qrat(Fraction(v) if not isinstance(v, QRat) else v) for v in y]


# ---------------------------------------------------------------------------
# two-variable identity (x_1 residue with x_2, y kept symbolic)
# ---------------------------------------------------------------------------
# symbolic results live in LaurentPoly over the variables (x2, y)

def _z_poly(coeffs: Sequence[QRat], z_shift: int = 0) -> LaurentPoly:
    """sum_r coeffs[r] z^(r + z_shift) with z = y/x2."""
    return LaurentPoly(
        {(-(r + z_shift), r + z_shift): c for r, c in enumerate(coeffs)}, 2
    )


def _pochhammer_z(scale_exp: int, k: int) -> list[QRat]:
    """Coefficients of (q^e u; q)_k in u."""
    base = pochhammer_laurent(k)
    return [c * QRat.q(scale_exp * r) for r, c in enumerate(base)]


def _divexact_z(num: dict[int, QRat], den: dict[int, QRat]) -> dict[int, QRat]:
    """Exact division of Laurent polynomials in one variable over Q(q)."""
    num = dict(num)
    dlo, dhi = min(den), max(den)
    lead = den[dhi]
    quotient: dict[int, QRat] = {}
    while num:
        top = max(num)
        if top - dhi < min(num) - dlo:
            raise ArithmeticError("inexact Laurent division")
        c = num[top] / lead
        shift = top - dhi
        quotient[shift] = c
        for e, d in den.items():
            v = num.get(e + shift, ZERO) - c * d
            if v:
                num[e + shift] = v
            else:
                num.pop(e + shift, None)
    return quotient


def residue_31(l: int, k: int, psi: LaurentPoly, y: Optional[Fraction] = None) -> LaurentPoly:
    """Closed-form x_1-residue at x_1 = y q^l of the two-variable integrand.

    The integrand is (x1/x2;q)_k (x2/x1;q)_k / ((y/x1;q)_k (y/x2;q)_k) psi dx1/x1.
    The result is returned without the dx2/x2 factor, as a Laurent polynomial
    in (x2, y), or in x2 alone when a rational ``y`` is given.
    """
    if psi.nvars != 2:
        raise ValueError("psi must be a polynomial in (x1, x2)")
    if not 0 <= l <= k - 1:
        raise ValueError(f"l = {l} outside 0..{k - 1}")
    if psi.is_zero():
        zero = LaurentPoly({}, 2)
        return zero if y is None else zero.substitute(1, QRat(Fraction(y)))
    # (y q^l / x2; q)_k (x2 q^-l / y; q)_k / (y/x2; q)_k as a Laurent polynomial in z = y/x2
    first = {r: c for r, c in enumerate(_pochhammer_z(l, k))}
    second = {-r: c for r, c in enumerate(_pochhammer_z(-l, k))}
    num: dict[int, QRat] = {}
    for a, ca in first.items():
        for b, cb in second.items():
            num[a + b] = num.get(a + b, ZERO) + ca * cb
    num = {e: c for e, c in num.items() if c}
    den = dict(enumerate(pochhammer_laurent(k)))
    quotient = _divexact_z(num, den)
    zpart = LaurentPoly({(-e, e): c for e, c in quotient.items()}, 2)
    # psi(y q^l, x2): x1^a x2^b -> q^(l a) y^a x2^b
    shifted = LaurentPoly(
        {(b, a): c * QRat.q(l * a) for (a, b), c in psi.terms.items()}, 2
    )
    result = (zpart * shifted).scale(residue_constant(l, k).inverse())
    if y is None:
        return result
    return result.substitute(1, QRat(Fraction(y)))


def residue_31_series(l: int, k: int, psi: LaurentPoly, prec: int = SERIES_PRECISION) -> LaurentPoly:
    """x_1-residue found by expanding around x_1 = y q^l, times (y/x2; q)_k.

    The (y/x2; q)_k denominator does not involve x_1 and is not a unit in the
    Laurent ring, so it is multiplied out; compare against
    ``residue_31(...) * (y/x2; q)_k``.
    """
    ring = LaurentRing(2)  # variables (x2, y)
    x2 = LaurentPoly.variable(0, 2)
    x2_inv = LaurentPoly.variable(0, 2, -1)
    y = LaurentPoly.variable(1, 2)
    x0 = y.scale(QRat.q(l))
    x1 = point_series(x0, ring, prec)
    x1_inv = x1.inverse()
    one = Series([ring.one] + [ring.zero] * (prec - 1), 0, ring)

    integrand = one
    for s in range(k):
        integrand = integrand * (one - x1.scale(x2_inv.scale(QRat.q(s))))
        integrand = integrand * (one - x1_inv.scale(x2.scale(QRat.q(s))))
    denom = one
    for s in range(k):
        denom = denom * (one - x1_inv.scale(y.scale(QRat.q(s))))
    integrand = integrand * denom.inverse()

    psi_series = Series([ring.zero] * prec, 0, ring)
    for (a, b), c in psi.terms.items():
        psi_series = psi_series + (x1 ** a).scale(LaurentPoly.variable(0, 2, b).scale(c))
    integrand = integrand * psi_series
    # dx1/x1 = d eps / (1 + eps)
    integrand = integrand * point_series(ring.one, ring, prec).inverse()
    return integrand.coefficient(-1)


def y_over_x2_pochhammer(k: int) -> LaurentPoly:
    return _z_poly(pochhammer_laurent(k))


# ---------------------------------------------------------------------------
# n-variable residues at numeric y
# ---------------------------------------------------------------------------

def genericity_check(pt: ResiduePoint, y: Sequence, n: int, m: int, k: int) -> Optional[str]:
    """None when the closed-form evaluation is valid, else a description."""
    try:
        yv = _check_y(y)
    except (TypeError, ValueError) as exc:
        return f"bad y sample: {exc}"
    if len(yv) != m:
        return f"expected {m} y values, got {len(yv)}"
    if len(pt.assignment) != n:
        return f"residue point has {len(pt.assignment)} coordinates, expected {n}"
    if m < n:
        return "need m >= n"
    for i, v in enumerate(yv):
        if not v:
            return f"y_{i + 1} = 0"
    for a in range(m):
        for b in range(a + 1, m):
            if yv[a] == yv[b]:
                return f"y_{a + 1} = y_{b + 1}"
    if any(not 0 <= l <= k - 1 for l in pt.exponents):
        return "exponent outside 0..k-1"
    x = pt.coordinates(yv)
    for j in range(n):
        for i in range(m):
            if i == pt.assignment[j]:
                continue
            if not pochhammer(yv[i] / x[j], k):
                return f"(y_{i + 1}/x_{j + 1}; q)_k vanishes at the point"
    for a in range(n):
        for b in range(n):
            if a != b and not pochhammer(x[a] / x[b], k):
                return f"(x_{a + 1}/x_{b + 1}; q)_k vanishes at the point"
    return None


def iterated_residue(pt: ResiduePoint, y: Sequence, psi: LaurentPoly, n: int, m: int, k: int) -> QRat:
    """Residue of prod 1/(y_i/x_j;q)_k Delta(x) psi(x) dx/x at a simple pole."""
    problem = genericity_check(pt, y, n, m, k)
    if problem is not None:
        raise NonGenericSample(f"non-generic sample ({problem}); resample y")
    yv = _check_y(y)
    x = pt.coordinates(yv)
    factors = [psi.evaluate(x)]
    if not factors[0]:
        return ZERO
    for a in range(n):
        for b in range(n):
            if a != b:
                factors.append(pochhammer(x[a] / x[b], k))
    for j in range(n):
        for i in range(m):
            if i != pt.assignment[j]:
                factors.append(pochhammer(yv[i] / x[j], k).inverse())
        factors.append(residue_constant(pt.exponents[j], k).inverse())
    return qprod(factors)


def iterated_residue_series(
    pt: ResiduePoint, y: Sequence, psi: LaurentPoly, n: int, m: int, k: int,
    prec: int = SERIES_PRECISION,
) -> QRat:
    """The same residue by nested expansion: x_n's residue first, then x_{n-1}, ...

    Level j (0-based) is a series in eps_j whose coefficients are level j-1
    series; level 0 has Q(q) coefficients.
    """
    yv = _check_y(y)
    x_star = pt.coordinates(yv)
    rings: list = [QRing()]
    for _ in range(n - 1):
        rings.append(SeriesRing(rings[-1], prec))
    top = SeriesRing(rings[-1], prec)

    def wrap(s: Series, level: int) -> Series:
        for lv in range(level + 1, n):
            s = Series([s] + [rings[lv].zero] * (prec - 1), 0, rings[lv])
        return s

    xs = [wrap(point_series(rings[j].lift(x_star[j]), rings[j], prec), j) for j in range(n)]
    inv = [s.inverse() for s in xs]
    one = top.one
    const = top.lift

    psi_s = const(ZERO)
    for e, c in psi.terms.items():
        mono = const(c)
        for j, p in enumerate(e):
            if p:
                mono = mono * (xs[j] ** p)
        psi_s = psi_s + mono
    integrand = psi_s
    for a in range(n):
        for b in range(n):
            if a != b:
                ratio = xs[a] * inv[b]
                for s in range(k):
                    integrand = integrand * (one - ratio * const(QRat.q(s)))
    for j in range(n):
        denom = one
        for i in range(m):
            for s in range(k):
                denom = denom * (one - inv[j] * const(yv[i] * QRat.q(s)))
        integrand = integrand * denom.inverse()
        # dx_j / x_j = d eps_j / (1 + eps_j)
        integrand = integrand * wrap(point_series(rings[j].one, rings[j], prec), j).inverse()

    value = integrand
    for _ in range(n):
        value = value.coefficient(-1)
    return value


def single_var_residue_sum(p: int, k: int) -> tuple[QRat, QRat]:
    """sum_l Res_{x = q^l} x^p / (1/x; q)_k dx/x, by terms and in closed form."""
    if p < 0:
        raise ValueError("p must be non-negative")
    by_terms = qsum(QRat.q(l * p) / residue_constant(l, k) for l in range(k))
    closed = q_pochhammer_power(p + 1, k - 1) / q_pochhammer_power(1, k - 1)
    return by_terms, closed


# ---------------------------------------------------------------------------
# the m = n residue sum and its closed-form comparison
# ---------------------------------------------------------------------------

def residue_sum_33(lam: Partition, n: int, k: int, y: Sequence, cache: Optional[MacdonaldBasis] = None) -> QRat:
    """sum over l in {0..k-1}^n of the diagonal residues with psi = P_lambda."""
    basis = _basis(n, k, cache)
    p = basis.p(lam.with_n(n))
    ident = tuple(range(n))
    return qsum(
        iterated_residue(ResiduePoint(ident, ls), y, p, n, n, k)
        for ls in product(range(k), repeat=n)
    )


def residue_sum_full(
    lam: Partition, n: int, k: int, y: Sequence, cache: Optional[MacdonaldBasis] = None,
    use_series: bool = True,
) -> QRat:
    """(1/n!) times the sum over every assignment sigma and every l."""
    basis = _basis(n, k, cache)
    p = basis.p(lam.with_n(n))
    fn = iterated_residue_series if use_series else iterated_residue
    return qsum(
        fn(ResiduePoint(sigma, ls), y, p, n, n, k)
        for sigma in permutations(range(n))
        for ls in product(range(k), repeat=n)
    ) / factorial(n)


def sample_y(m: int, rng: random.Random) -> tuple[Fraction, ...]:
    """Distinct rationals in (1, 100) drawn from ``rng``."""
    values: list[Fraction] = []
    while len(values) < m:
        den = rng.randint(1, 9)
        num = rng.randint(den + 1, 100 * den - 1)
        v = Fraction(num, den)
        if v not in values:
            values.append(v)
    return tuple(values)


def verify_33(
    lam: Partition, n: int, k: int, samples: int, seed: int,
    cache: Optional[MacdonaldBasis] = None, max_retries: int = 20,
) -> dict:
    """Check the residue sum against b_lambda * P_lambda(y) * <P_lambda, P_lambda>."""
    basis = _basis(n, k, cache)
    lam = lam.with_n(n)
    rng = random.Random(seed)
    p = basis.p(lam)
    scalar = b_lambda_armleg(lam, k) * norm_via_ct(lam, n, k, basis)
    results = []
    for _ in range(samples):
        for _attempt in range(max_retries):
            y = sample_y(n, rng)
            ident = tuple(range(n))
            if all(
                genericity_check(ResiduePoint(ident, ls), y, n, n, k) is None
                for ls in product(range(k), repeat=n)
            ):
                break
        else:
            results.append({"y": None, "pass": False, "error": "no generic sample found"})
            continue
        lhs = residue_sum_33(lam, n, k, y, basis)
        rhs = scalar * p.evaluate([QRat(v) for v in y])
        results.append({"y": [str(v) for v in y], "pass": lhs == rhs})
    return {
        "identity": "eq33",
        "lambda": list(lam.padded()),
        "n": n,
        "k": k,
        "seed": seed,
        "samples": results,
        "pass": all(r["pass"] for r in results),
    }


def sigma_sum_crosscheck(lam: Partition, n: int, k: int, y: Sequence, cache: Optional[MacdonaldBasis] = None) -> dict:
    diag = residue_sum_33(lam, n, k, y, cache)
    full = residue_sum_full(lam, n, k, y, cache)
    return {
        "identity": "eq33-sigma",
        "lambda": list(lam.with_n(n).padded()),
        "n": n,
        "k": k,
        "y": [str(Fraction(v)) for v in y],
        "pass": diag == full,
    }


# ---------------------------------------------------------------------------
# n = 1 instance with symbolic y
# ---------------------------------------------------------------------------

def lemma_n1_sides(psi: LaurentPoly, k: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Both sides of the n = 1 residue identity as polynomials in y.

    Left: constant term in x of psi(x) times the y-expansion of 1/(y/x; q)_k.
    Right: sum_l psi(y q^l) / ((q^-l; q)_l (q; q)_{k-1-l}).
    """
    if psi.nvars != 1:
        raise ValueError("psi must be univariate")
    if any(e[0] < 0 for e in psi.terms):
        raise ValueError("psi must be a polynomial")
    top = max((e[0] for e in psi.terms), default=0)
    coeffs = kernel_coefficients(k, top)
    # variables (x, y); the kernel is sum_r c_r y^r x^-r
    kernel = LaurentPoly({(-r, r): c for r, c in enumerate(coeffs)}, 2)
    lifted = psi.embed(2, 0)
    product_ = lifted * kernel
    lhs = LaurentPoly({(e[1],): c for e, c in product_.terms.items() if e[0] == 0}, 1)
    rhs_terms: dict[tuple[int], list[QRat]] = {}
    for l in range(k):
        inv = residue_constant(l, k).inverse()
        for (p,), c in psi.terms.items():
            rhs_terms.setdefault((p,), []).append(c * QRat.q(l * p) * inv)
    rhs = LaurentPoly({e: qsum(v) for e, v in rhs_terms.items()}, 1)
    return lhs, rhs


def verify_lemma_n1(psi: LaurentPoly, k: int) -> dict:
    lhs, rhs = lemma_n1_sides(psi, k)
    return {
        "identity": "lemma1",
        "psi": psi.to_json(),
        "k": k,
        "lhs": lhs.to_json(),
        "rhs": rhs.to_json(),
        "pass": lhs == rhs,
    }
