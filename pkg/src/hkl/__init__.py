"""Kazhdan-Lusztig, R- and relative R~-polynomials of Bruhat intervals in S_n."""

from .bbdvw import (
    BBDVWContext,
    check_bbdvw,
    make_context,
    relative_rtilde_def,
    relative_rtilde_paths,
    relative_rtilde_theta,
)
from .bruhat import (
    ReflectionOrder,
    build_graph,
    build_interval,
    enumerate_reflection_orders,
    increasing_paths,
    lex_order,
)
from .hypercube import (
    compute_cluster,
    enumerate_hcds,
    enumerate_order_ideals,
    has_property_E,
    is_hypercube_decomposition,
    is_strong_cluster,
    numerical_criterion,
    principal_ideal,
)
from .klr import kl_polynomial, r_polynomial, rtilde_polynomial
from .permutation import Permutation, bruhat_leq, identity, transposition
from .poly import IntPolynomial, q, rtilde_to_r

__version__ = "0.1.0"

__all__ = [
    "Permutation", "identity", "transposition", "bruhat_leq",
    "IntPolynomial", "q", "rtilde_to_r",
    "ReflectionOrder", "build_interval", "build_graph", "lex_order",
    "enumerate_reflection_orders", "increasing_paths",
    "r_polynomial", "rtilde_polynomial", "kl_polynomial",
    "principal_ideal", "enumerate_order_ideals", "compute_cluster", "enumerate_hcds",
    "is_hypercube_decomposition", "is_strong_cluster", "numerical_criterion", "has_property_E",
    "BBDVWContext", "make_context", "check_bbdvw",
    "relative_rtilde_def", "relative_rtilde_paths", "relative_rtilde_theta",
]
