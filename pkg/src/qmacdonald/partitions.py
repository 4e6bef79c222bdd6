"""Partitions, dominance order and the closed-form scalar products.

A :class:`Partition` keeps its nonzero parts plus the ambient number of
variables ``n``.  Arm/leg quantities only see the nonzero parts, while the
row-indexed products (``b_lambda_product``, the norm formulas) run over all
``n`` slots, trailing zeros included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .qfield import ONE, QRat, q_pochhammer_power, qprod


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple[int, ...]
    n: int

    def __init__(self, parts: Sequence[int] = (), n: Optional[int] = None) -> None:
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts {parts} are not weakly decreasing")
        stripped = tuple(p for p in parts if p)
        if n is None:
            n = len(parts)
        if len(stripped) > n:
            raise ValueError(f"partition {stripped} has length {len(stripped)} > n = {n}")
        object.__setattr__(self, "parts", stripped)
        object.__setattr__(self, "n", n)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def padded(self) -> tuple[int, ...]:
        """Exponent vector of length ``n`` with trailing zeros."""
        return self.parts + (0,) * (self.n - len(self.parts))

    def __getitem__(self, i: int) -> int:
        """1-based part access; rows beyond the length are 0."""
        if i < 1:
            raise IndexError(i)
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def with_n(self, n: int) -> "Partition":
        return Partition(self.parts, n)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self.parts, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.padded())) + ")"

    def key(self) -> str:
        """Cache/report key such as ``"2,1"``; the empty partition is ``""``."""
        return ",".join(map(str, self.parts))

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "Partition":
        return cls(data["parts"], data["n"])


def parse_partition(text: str, n: Optional[int] = None) -> Partition:
    """Parse ``"2,1"`` (or ``"0"`` / ``""`` for the empty partition)."""
    text = text.strip()
    parts = [int(t) for t in text.replace(" ", "").split(",") if t] if text else []
    return Partition(parts, n)


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return Partition((), 0)
    conj = tuple(sum(1 for p in lam.parts if p >= i) for i in range(1, lam.parts[0] + 1))
    return Partition(conj, len(conj))


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff ``mu <= lam`` in dominance order."""
    if mu.weight != lam.weight:
        return False
    s_mu = s_lam = 0
    for i in range(max(mu.length, lam.length)):
        s_mu += mu.parts[i] if i < mu.length else 0
        s_lam += lam.parts[i] if i < lam.length else 0
        if s_lam < s_mu:
            return False
    return True


def dominance_lt(mu: Partition, lam: Partition) -> bool:
    return mu.parts != lam.parts and dominance_leq(mu, lam)


def comparable(mu: Partition, lam: Partition) -> bool:
    return dominance_leq(mu, lam) or dominance_leq(lam, mu)


def arm_leg(lam: Partition, cell: tuple[int, int]) -> tuple[int, int]:
    i, j = cell
    if i < 1 or j < 1 or i > lam.length or j > lam.parts[i - 1]:
        raise ValueError(f"cell {cell} lies outside the diagram of {lam.parts}")
    conj = conjugate(lam)
    return lam.parts[i - 1] - j, conj.parts[j - 1] - i


def enumerate_partitions(weight: int, max_len: int) -> list[Partition]:
    """Partitions of ``weight`` with at most ``max_len`` parts, reverse-lex order.

    Each returned partition carries ``n = max_len``.
    """
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(prefix, max_len))
            return
        if len(prefix) == max_len:
            return
        for p in range(min(remaining, cap), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(weight, weight, [])
    return out


def partitions_up_to(max_weight: int, max_len: int) -> list[Partition]:
    return [p for w in range(max_weight + 1) for p in enumerate_partitions(w, max_len)]


# ---------------------------------------------------------------------------
# closed-form scalars, t = q^k
# ---------------------------------------------------------------------------

def b_lambda_armleg(lam: Partition, k: int) -> QRat:
    """b_lambda as a product over cells of (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l)."""
    num, den = ONE, ONE
    conj = conjugate(lam)
    for i, j in lam.cells():
        a = lam.parts[i - 1] - j
        leg = conj.parts[j - 1] - i
        num = num * (ONE - QRat.q(a + k * (leg + 1)))
        den = den * (ONE - QRat.q(a + 1 + k * leg))
    return num / den


def b_lambda_product(lam: Partition, n: int, k: int) -> QRat:
    """b_lambda from the row-indexed Pochhammer product over ``n`` slots."""
    lam = lam.with_n(n)
    m = k - 1
    num, den = ONE, ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = lam[i] - lam[j]
            num = num * q_pochhammer_power(d + 1 + (j - i - 1) * k, m)
            den = den * q_pochhammer_power(d + 1 + (j - i) * k, m)
    for i in range(1, n + 1):
        num = num * q_pochhammer_power(lam[i] + 1 + k * (n - i), m)
        den = den * q_pochhammer_power(1, m)
    return num / den


def norm_formula(lam: Partition, n: int, k: int) -> QRat:
    """Closed form of <P_lam, P_lam> as a double product over i<j and r."""
    lam = lam.with_n(n)
    num, den = ONE, ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = lam[i] - lam[j]
            for r in range(1, k):
                num = num * (ONE - QRat.q(d + r + k * (j - i)))
                den = den * (ONE - QRat.q(d - r + k * (j - i)))
    return num / den


def norm_formula_poch(lam: Partition, n: int, k: int) -> QRat:
    """The same norm written as a ratio of (q^e; q)_{k-1} symbols."""
    lam = lam.with_n(n)
    m = k - 1
    return qprod(
        q_pochhammer_power(lam[i] - lam[j] + 1 + (j - i) * k, m)
        / q_pochhammer_power(lam[i] - lam[j] + 1 + (j - i - 1) * k, m)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    )


def norm_times_b(lam: Partition, n: int, k: int) -> QRat:
    """prod_i (q^(lam_i + (n-i)k + 1); q)_{k-1} / (q; q)_{k-1}."""
    lam = lam.with_n(n)
    return qprod(
        q_pochhammer_power(lam[i] + (n - i) * k + 1, k - 1) / q_pochhammer_power(1, k - 1)
        for i in range(1, n + 1)
    )
