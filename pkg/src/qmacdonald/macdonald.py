"""Macdonald polynomials P_lambda at t = q^k by Gram-Schmidt.

The construction works in the monomial symmetric basis.  Inner products
of monomial symmetric polynomials come from single coefficient lookups in
Delta:

    <m_mu, m_nu> = |orbit(mu)| / n! * sum_{beta in orbit(nu)} Delta[beta - mu]

since Delta is invariant under permuting the variables.  Norms reported by
:func:`norm_via_ct` are recomputed from the expanded polynomials via
:func:`symlaurent.inner_product` and never reuse the Gram matrix.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from math import factorial
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .partitions import (
    Partition,
    b_lambda_armleg,
    conjugate,
    dominance_leq,
    dominance_lt,
    enumerate_partitions,
    norm_formula,
)
from .qfield import ONE, ZERO, QRat, qsum
from .symlaurent import (
    LaurentPoly,
    delta_weight,
    distinct_permutations,
    inner_product,
    kernel_truncated,
    monomial_symmetric,
    sum_polys,
)

log = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 1


class DegenerateGramError(RuntimeError):
    """A vanishing norm showed up during Gram-Schmidt."""


class MacdonaldBasis:
    """Computed P_lambda for a fixed number of variables ``n`` and ``k``.

    ``coeffs[parts]`` maps each dominance-lower ``mu.parts`` to the
    coefficient of m_mu in P_lambda; ``norms`` holds the Gram-Schmidt norms.
    """

    def __init__(self, n: int, k: int) -> None:
        if n < 1 or k < 1:
            raise ValueError("need n >= 1 and k >= 1")
        self.n = n
        self.k = k
        self.coeffs: dict[tuple[int, ...], dict[tuple[int, ...], QRat]] = {}
        self.norms: dict[tuple[int, ...], QRat] = {}
        self.table: dict[tuple[int, ...], LaurentPoly] = {}
        self._gram: dict[tuple[tuple[int, ...], tuple[int, ...]], QRat] = {}
        self.dirty = False

    # -- Gram matrix of monomial symmetric polynomials ----------------------

    def gram(self, mu: Partition, nu: Partition) -> QRat:
        """<m_mu, m_nu> from Delta coefficients."""
        if mu.weight != nu.weight:
            return ZERO
        key = (mu.parts, nu.parts) if mu.parts <= nu.parts else (nu.parts, mu.parts)
        hit = self._gram.get(key)
        if hit is not None:
            return hit
        n = self.n
        delta = delta_weight(n, self.k).terms
        a = Partition(key[0], n).padded()
        b = Partition(key[1], n).padded()
        total = qsum(
            delta[d]
            for beta in distinct_permutations(b)
            if (d := tuple(x - y for x, y in zip(beta, a))) in delta
        )
        value = total * len(distinct_permutations(a)) / factorial(n)
        self._gram[key] = value
        return value

    def _pair(self, f: dict, g: dict) -> QRat:
        """Inner product of two m-basis expansions."""
        n = self.n
        return qsum(
            cf * cg * self.gram(Partition(a, n), Partition(b, n))
            for a, cf in f.items()
            for b, cg in g.items()
        )

    # -- construction -------------------------------------------------------

    def m_coefficients(self, lam: Partition) -> dict[tuple[int, ...], QRat]:
        """Coefficients of P_lambda in the monomial basis (keyed by parts)."""
        if lam.length > self.n:
            raise ValueError(f"partition {lam.parts} has more than n = {self.n} parts")
        hit = self.coeffs.get(lam.parts)
        if hit is not None:
            return hit
        n = self.n
        lam = lam.with_n(n)
        lower = [
            mu for mu in enumerate_partitions(lam.weight, n) if dominance_lt(mu, lam)
        ]
        # ascending through a linear extension of dominance
        expansion: dict[tuple[int, ...], QRat] = {lam.parts: ONE}
        m_lam = {lam.parts: ONE}
        for mu in reversed(lower):
            p_mu = self.m_coefficients(mu)
            norm = self.norms[mu.parts]
            proj = self._pair(m_lam, p_mu) / norm
            if not proj:
                continue
            for nu, c in p_mu.items():
                expansion[nu] = expansion.get(nu, ZERO) - proj * c
        expansion = {mu: c for mu, c in expansion.items() if c}
        norm = self._pair(expansion, expansion)
        if not norm:
            raise DegenerateGramError(
                f"<P, P> vanished for lambda = {lam.parts}, n = {n}, k = {self.k}"
            )
        self.coeffs[lam.parts] = expansion
        self.norms[lam.parts] = norm
        self.dirty = True
        return expansion

    def p(self, lam: Partition) -> LaurentPoly:
        """P_lambda expanded in x_1..x_n."""
        hit = self.table.get(lam.parts)
        if hit is not None:
            return hit
        coeffs = self.m_coefficients(lam)
        poly = sum_polys(
            (monomial_symmetric(Partition(mu, self.n), self.n).scale(c) for mu, c in coeffs.items()),
            self.n,
        )
        self.table[lam.parts] = poly
        return poly

    def ensure(self, partitions: Iterable[Partition]) -> None:
        for lam in partitions:
            self.p(lam)

    # -- persistence -----------------------------------------------------------

    def cache_file(self, directory: os.PathLike) -> Path:
        return Path(directory) / f"macdonald_n{self.n}_k{self.k}_v{CACHE_FORMAT_VERSION}.json"

    def to_json(self) -> dict:
        entries = {}
        for parts in sorted(self.coeffs, key=lambda p: (sum(p), p)):
            lam = Partition(parts, self.n)
            entries[lam.key()] = {
                "m": {Partition(mu, self.n).key(): c.to_json() for mu, c in sorted(self.coeffs[parts].items(), reverse=True)},
                "poly": self.p(lam).to_json(),
                "norm": self.norms[parts].to_json(),
            }
        return {"format": CACHE_FORMAT_VERSION, "n": self.n, "k": self.k, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "MacdonaldBasis":
        if data.get("format") != CACHE_FORMAT_VERSION:
            raise ValueError("stale basis cache format")
        basis = cls(data["n"], data["k"])
        for key, entry in data["entries"].items():
            parts = _key_parts(key)
            basis.coeffs[parts] = {
                _key_parts(mk): QRat.from_json(c) for mk, c in entry["m"].items()
            }
            basis.norms[parts] = QRat.from_json(entry["norm"])
            basis.table[parts] = LaurentPoly.from_json(entry["poly"])
        return basis

    def save(self, directory: os.PathLike) -> Path:
        """Write the cache atomically (temp file, then rename)."""
        path = self.cache_file(directory)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(self.to_json(), fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.dirty = False
        return path

    @classmethod
    def load(cls, directory: os.PathLike, n: int, k: int) -> "MacdonaldBasis":
        """Load the cache for (n, k) or start empty if missing or stale."""
        basis = cls(n, k)
        path = basis.cache_file(directory)
        if not path.exists():
            return basis
        try:
            with open(path) as fh:
                loaded = cls.from_json(json.load(fh))
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unreadable basis cache %s: %s", path, exc)
            return basis
        if (loaded.n, loaded.k) != (n, k):
            return basis
        return loaded


def _key_parts(key: str) -> tuple[int, ...]:
    return tuple(int(x) for x in key.split(",") if x)


def _basis(n: int, k: int, cache: Optional[MacdonaldBasis]) -> MacdonaldBasis:
    if cache is None:
        return MacdonaldBasis(n, k)
    if (cache.n, cache.k) != (n, k):
        raise ValueError(f"cache is for (n, k) = ({cache.n}, {cache.k}), not ({n}, {k})")
    return cache


def macdonald_p(lam: Partition, n: int, k: int, cache: Optional[MacdonaldBasis] = None) -> LaurentPoly:
    return _basis(n, k, cache).p(lam.with_n(n))


def norm_via_ct(lam: Partition, n: int, k: int, cache: Optional[MacdonaldBasis] = None) -> QRat:
    """<P_lambda, P_lambda> as a constant term of the expanded polynomials."""
    p = macdonald_p(lam, n, k, cache)
    return inner_product(p, p, n, k)


def gram_schmidt_full(
    weight: int, n: int, k: int, order_key: Callable[[Partition], object]
) -> dict[tuple[int, ...], LaurentPoly]:
    """Classical Gram-Schmidt over *all* predecessors in a chosen order.

    ``order_key`` must sort a linear extension of dominance from smallest to
    largest.  Inner products are taken on expanded polynomials.
    """
    parts = sorted(enumerate_partitions(weight, n), key=order_key)
    for i, a in enumerate(parts):
        for b in parts[i + 1:]:
            if dominance_lt(b, a):
                raise ValueError("order_key is not a linear extension of dominance")
    done: list[tuple[LaurentPoly, QRat]] = []
    out = {}
    for lam in parts:
        m = monomial_symmetric(lam, n)
        p = m
        for prev, norm in done:
            p = p - prev.scale(inner_product(m, prev, n, k) / norm)
        norm = inner_product(p, p, n, k)
        if not norm:
            raise DegenerateGramError(f"<P, P> vanished for {lam.parts}")
        done.append((p, norm))
        out[lam.parts] = p
    return out


def reverse_lex_ascending(lam: Partition) -> tuple[int, ...]:
    return lam.padded()


def conjugate_order(lam: Partition) -> tuple:
    """Ascending order by the conjugate partition, lex-largest conjugate first."""
    return tuple(-c for c in conjugate(lam).parts)


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

def verify_theorem(n: int, k: int, max_weight: int, cache: Optional[MacdonaldBasis] = None) -> dict:
    basis = _basis(n, k, cache)
    cases = []
    for w in range(max_weight + 1):
        for lam in enumerate_partitions(w, n):
            ct = norm_via_ct(lam, n, k, basis)
            formula = norm_formula(lam, n, k)
            cases.append({"lambda": list(lam.padded()), "ct": ct.to_json(), "formula": formula.to_json(), "pass": ct == formula})
    return {"identity": "theorem", "n": n, "k": k, "max_weight": max_weight, "cases": cases, "pass": all(c["pass"] for c in cases)}


def verify_orthogonality(weight: int, n: int, k: int, cache: Optional[MacdonaldBasis] = None) -> dict:
    """Check <P_lambda, P_mu> = 0 for all unequal pairs of the given weight."""
    basis = _basis(n, k, cache)
    parts = enumerate_partitions(weight, n)
    pairs = []
    for i, lam in enumerate(parts):
        for mu in parts[i + 1:]:
            value = inner_product(basis.p(lam), basis.p(mu), n, k)
            pairs.append({"lambda": list(lam.padded()), "mu": list(mu.padded()), "value": value.to_json(), "pass": value.is_zero()})
    return {"identity": "orthogonality", "weight": weight, "n": n, "k": k, "pairs": pairs, "pass": all(p["pass"] for p in pairs)}


def cauchy_difference(
    m: int,
    n: int,
    k: int,
    cap: int,
    basis_x: Optional[MacdonaldBasis] = None,
    basis_y: Optional[MacdonaldBasis] = None,
) -> LaurentPoly:
    """Kernel truncation minus sum_lambda b_lambda P_lambda(y) P_lambda(x)."""
    bx = _basis(n, k, basis_x)
    by = bx if m == n and basis_y is None else _basis(m, k, basis_y)
    kernel = kernel_truncated(m, n, k, cap)
    nv = n + m
    pieces = []
    for w in range(cap + 1):
        for lam in enumerate_partitions(w, min(m, n)):
            px = bx.p(lam.with_n(n)).embed(nv, 0)
            py = by.p(lam.with_n(m)).embed(nv, n)
            pieces.append((px * py).scale(b_lambda_armleg(lam, k)))
    return kernel.poly - sum_polys(pieces, nv)


def verify_cauchy(
    m: int,
    n: int,
    k: int,
    cap: int,
    basis_x: Optional[MacdonaldBasis] = None,
    basis_y: Optional[MacdonaldBasis] = None,
) -> dict:
    diff = cauchy_difference(m, n, k, cap, basis_x, basis_y)
    by_degree = []
    for d in range(cap + 1):
        bad = [e for e in diff.terms if sum(e[n:]) == d]
        by_degree.append({"degree": d, "residual_terms": len(bad), "pass": not bad})
    return {"identity": "cauchy", "m": m, "n": n, "k": k, "degree": cap, "degrees": by_degree, "pass": diff.is_zero()}


def constant_term_corollary(n: int, k: int) -> dict:
    ct = delta_weight(n, k).constant_term()
    expected = norm_formula(Partition((), n), n, k) * factorial(n)
    return {"identity": "ct", "n": n, "k": k, "ct": ct.to_json(), "formula": expected.to_json(), "pass": ct == expected}


def is_triangular(lam: Partition, basis: MacdonaldBasis) -> bool:
    coeffs = basis.m_coefficients(lam)
    if coeffs.get(lam.parts) != ONE:
        return False
    return all(dominance_leq(Partition(mu, basis.n), lam) for mu in coeffs)


def m_expansion(lam: Partition, basis: MacdonaldBasis) -> list[tuple[Partition, QRat]]:
    """(mu, c_{lambda mu}) pairs, dominance-highest first."""
    coeffs = basis.m_coefficients(lam.with_n(basis.n))
    return [(Partition(mu, basis.n), coeffs[mu]) for mu in sorted(coeffs, reverse=True)]


def expand_in_m(poly: LaurentPoly, n: int) -> dict[tuple[int, ...], QRat]:
    """Read off m-basis coefficients of a symmetric polynomial."""
    out = {}
    for e, c in poly.terms.items():
        if list(e) == sorted(e, reverse=True):
            out[tuple(x for x in e if x)] = c
    return out


def partitions_for(n: int, max_weight: int) -> Sequence[Partition]:
    return [lam for w in range(max_weight + 1) for lam in enumerate_partitions(w, n)]
