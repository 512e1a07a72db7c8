"""Exact first and second derivatives with hyper-dual numbers."""

from hyperdual.drivers import (
    CountingFunction,
    DerivativeReport,
    DiffFunction,
    dual_jacobian,
    hd_call,
    hessian,
    hessian_vector_product,
    jacobian,
    jacobian_and_hessian,
)
from hyperdual.expr import evaluate, parse, to_diff_function, try_parse, unparse
from hyperdual.field import is_strict, set_strict, strict_domain
from hyperdual.scalar import Dual, HDPoint, HyperDual

__all__ = [
    "Dual",
    "HyperDual",
    "HDPoint",
    "DiffFunction",
    "CountingFunction",
    "DerivativeReport",
    "jacobian",
    "hessian",
    "jacobian_and_hessian",
    "dual_jacobian",
    "hd_call",
    "hessian_vector_product",
    "parse",
    "try_parse",
    "unparse",
    "evaluate",
    "to_diff_function",
    "is_strict",
    "set_strict",
    "strict_domain",
]
