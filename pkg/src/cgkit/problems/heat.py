"""Heat conduction on a 5x4 plate reduced by symmetry to four temperatures.

The plate has conductivity 2 and heat source ``20 - 1.5 M + M^2 / 20``.
The objective is the sum of squared residuals of the four discretized
equations. Its reference minimizer and value are ``REFERENCE_X`` and
``REFERENCE_F``.
"""

import numpy as np

from ..core import Objective
from .entry import ProblemEntry

REFERENCE_X = np.array([4.8521, 6.0545, 6.4042, 8.1383])
REFERENCE_F = 1.9631e-7

# residual_i = linear_i(x) + 20 - 1.5 x_i + x_i^2 / 20, with linear part A @ x
_A = 2.0 * np.array([
    [-4.0, 1.0, 1.0, 0.0],
    [1.0, 0.0, -3.0, 1.0],
    [2.0, -4.0, 0.0, 1.0],
    [0.0, 1.0, 2.0, -3.0],
])
# the source term of residual i acts on this coordinate
_SOURCE = np.array([0, 2, 1, 3])


def residuals(x):
    xs = x[_SOURCE]
    return _A @ x + 20.0 - 1.5 * xs + xs**2 / 20.0


def jacobian(x):
    J = _A.copy()
    xs = x[_SOURCE]
    J[np.arange(4), _SOURCE] += -1.5 + xs / 10.0
    return J


def heat_objective():
    def fun(x):
        r = residuals(x)
        return float(r @ r)

    def grad(x):
        return 2.0 * jacobian(x).T @ residuals(x)

    def fun_grad(x):
        r = residuals(x)
        return float(r @ r), 2.0 * jacobian(x).T @ r

    return Objective("HEAT", 4, fun, grad, fun_grad)


def heat_problem():
    return ProblemEntry("HEAT", heat_objective(), np.zeros(4), 0.0, None)
