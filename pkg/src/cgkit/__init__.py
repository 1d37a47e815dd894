"""Nonlinear conjugate gradient methods with a Wolfe line search."""

from .core import Objective, dot, fd_gradient, norm2, axpy
from .directions import MethodSpec
from .linesearch import WolfeParams
from .solver import SolverConfig, SolveReport, minimize

__version__ = "0.1.0"

__all__ = [
    "MethodSpec",
    "Objective",
    "SolveReport",
    "SolverConfig",
    "WolfeParams",
    "axpy",
    "dot",
    "fd_gradient",
    "minimize",
    "norm2",
]
