"""Shared helpers; sympy serves as an independent oracle throughout."""

from __future__ import annotations

import sympy as sp
import pytest

from qmacdonald.qfield import QRat

q = sp.Symbol("q")


def to_sympy(value: QRat) -> sp.Expr:
    num = sum(sp.Rational(c) * q**i for i, c in enumerate(value.int_num))
    den = sum(sp.Rational(c) * q**i for i, c in enumerate(value.int_den))
    return num / den


def from_sympy(expr) -> QRat:
    num, den = sp.fraction(sp.cancel(sp.together(sp.sympify(expr))))
    pn = sp.Poly(num, q).all_coeffs()[::-1]
    pd = sp.Poly(den, q).all_coeffs()[::-1]
    return QRat.from_rational_coeffs([sp.Rational(c) for c in pn], [sp.Rational(c) for c in pd])


def same(value: QRat, expr) -> bool:
    return sp.simplify(to_sympy(value) - sp.sympify(expr)) == 0


def sympy_constant_term(expr, xs) -> sp.Expr:
    """Constant term in the x variables of a Laurent polynomial expression."""
    expr = sp.expand(expr)
    total = 0
    for term in sp.Add.make_args(expr):
        powers = term.as_powers_dict()
        if all(powers.get(x, 0) == 0 for x in xs):
            total += term
    return sp.factor(total)


def sympy_poch(a, k):
    return sp.Mul(*[(1 - a * q**s) for s in range(k)])


@pytest.fixture
def sym_q():
    return q


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
