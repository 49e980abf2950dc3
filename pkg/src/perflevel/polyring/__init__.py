"""Polynomial arithmetic over GF(p) and Groebner machinery."""

from .groebner import (
    GroebnerBasis,
    SyzygyData,
    buchberger,
    column_to_vec,
    hilbert_function,
    krull_dim,
    module_gb,
    nf,
    syzygies,
    vec_degree,
    vec_to_column,
)
from .hilbert import NEG_INF, HilbertSeries
from .poly import ORDERS, Polynomial, PolynomialRing, is_prime, parse_polynomial

__all__ = [
    "GroebnerBasis",
    "HilbertSeries",
    "NEG_INF",
    "ORDERS",
    "Polynomial",
    "PolynomialRing",
    "SyzygyData",
    "buchberger",
    "column_to_vec",
    "hilbert_function",
    "is_prime",
    "krull_dim",
    "module_gb",
    "nf",
    "parse_polynomial",
    "syzygies",
    "vec_degree",
    "vec_to_column",
]
