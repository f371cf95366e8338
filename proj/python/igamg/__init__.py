"""Isogeometric multigrid: B-spline Poisson discretizations, multigrid with
Gauss-Seidel and overlapping Schwarz smoothers, and local Fourier analysis."""

from ._igamg import (
    eval_basis,
    lfa,
    make_problem,
    open_uniform_knots,
    prolongation_1d,
    reproduce,
    schwarz_symbol,
    solve,
    stiffness_stencil,
)

__all__ = [
    "eval_basis",
    "lfa",
    "make_problem",
    "open_uniform_knots",
    "prolongation_1d",
    "reproduce",
    "schwarz_symbol",
    "solve",
    "stiffness_stencil",
]
