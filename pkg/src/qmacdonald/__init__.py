"""Exact Macdonald polynomials at t = q^k and their constant-term identities."""

from .macdonald import MacdonaldBasis, macdonald_p, norm_via_ct
from .partitions import Partition, b_lambda_armleg, b_lambda_product, norm_formula, norm_formula_poch
from .qfield import ONE, Q, ZERO, QRat, pochhammer
from .symlaurent import LaurentPoly, delta_weight, inner_product, monomial_symmetric

__all__ = [
    "LaurentPoly",
    "MacdonaldBasis",
    "ONE",
    "Partition",
    "Q",
    "QRat",
    "ZERO",
    "b_lambda_armleg",
    "b_lambda_product",
    "delta_weight",
    "inner_product",
    "macdonald_p",
    "monomial_symmetric",
    "norm_formula",
    "norm_formula_poch",
    "norm_via_ct",
    "pochhammer",
]
