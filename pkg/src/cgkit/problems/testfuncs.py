"""Smooth unconstrained test functions in their CUTEst formulations.

Each builder returns a :class:`~cgkit.problems.ProblemEntry` with the
standard starting point. Gradients are analytic and vectorized.
"""

import numpy as np

from ..core import Objective
from .entry import ProblemEntry


def rosenbrock():
    def fun(x):
        return 100.0 * (x[1] - x[0] ** 2) ** 2 + (1.0 - x[0]) ** 2

    def grad(x):
        t = x[1] - x[0] ** 2
        return np.array([-400.0 * x[0] * t - 2.0 * (1.0 - x[0]), 200.0 * t])

    return ProblemEntry(
        "ROSENBR", Objective("ROSENBR", 2, fun, grad), np.array([-1.2, 1.0]),
        f_star=0.0, x_star=np.ones(2),
    )


def srosenbrock(n=1000):
    """Separable extended Rosenbrock, ``n`` even."""
    if n % 2:
        raise ValueError("SROSENBR needs an even dimension")

    def fun(x):
        odd, even = x[0::2], x[1::2]
        return float(np.sum(100.0 * (even - odd**2) ** 2 + (odd - 1.0) ** 2))

    def grad(x):
        odd, even = x[0::2], x[1::2]
        t = even - odd**2
        g = np.empty_like(x)
        g[0::2] = -400.0 * odd * t + 2.0 * (odd - 1.0)
        g[1::2] = 200.0 * t
        return g

    x0 = np.tile([-1.2, 1.0], n // 2)
    return ProblemEntry("SROSENBR", Objective("SROSENBR", n, fun, grad), x0, 0.0, np.ones(n))


def woods(n=100):
    """Extended Woods function on blocks of four, ``n`` divisible by 4."""
    if n % 4:
        raise ValueError("WOODS needs n divisible by 4")

    def parts(x):
        return x[0::4], x[1::4], x[2::4], x[3::4]

    def fun(x):
        a, b, c, d = parts(x)
        return float(np.sum(
            100.0 * (b - a**2) ** 2 + (1.0 - a) ** 2
            + 90.0 * (d - c**2) ** 2 + (1.0 - c) ** 2
            + 10.1 * ((b - 1.0) ** 2 + (d - 1.0) ** 2)
            + 19.8 * (b - 1.0) * (d - 1.0)
        ))

    def grad(x):
        a, b, c, d = parts(x)
        g = np.empty_like(x)
        g[0::4] = -400.0 * a * (b - a**2) - 2.0 * (1.0 - a)
        g[1::4] = 200.0 * (b - a**2) + 20.2 * (b - 1.0) + 19.8 * (d - 1.0)
        g[2::4] = -360.0 * c * (d - c**2) - 2.0 * (1.0 - c)
        g[3::4] = 180.0 * (d - c**2) + 20.2 * (d - 1.0) + 19.8 * (b - 1.0)
        return g

    x0 = np.tile([-3.0, -1.0, -3.0, -1.0], n // 4)
    return ProblemEntry("WOODS", Objective("WOODS", n, fun, grad), x0, 0.0, np.ones(n))


def powell_singular(n=100):
    """Extended Powell singular function; the Hessian is singular at the minimizer."""
    if n % 4:
        raise ValueError("POWELLSG needs n divisible by 4")

    def fun(x):
        a, b, c, d = x[0::4], x[1::4], x[2::4], x[3::4]
        return float(np.sum(
            (a + 10.0 * b) ** 2 + 5.0 * (c - d) ** 2 + (b - 2.0 * c) ** 4 + 10.0 * (a - d) ** 4
        ))

    def grad(x):
        a, b, c, d = x[0::4], x[1::4], x[2::4], x[3::4]
        u, v, w = a + 10.0 * b, b - 2.0 * c, a - d
        g = np.empty_like(x)
        g[0::4] = 2.0 * u + 40.0 * w**3
        g[1::4] = 20.0 * u + 4.0 * v**3
        g[2::4] = 10.0 * (c - d) - 8.0 * v**3
        g[3::4] = -10.0 * (c - d) - 40.0 * w**3
        return g

    x0 = np.tile([3.0, -1.0, 0.0, 1.0], n // 4)
    return ProblemEntry("POWELLSG", Objective("POWELLSG", n, fun, grad), x0, 0.0, np.zeros(n))


def tridia(n=500):
    """Strictly convex tridiagonal quadratic
    ``(x_1 - 1)^2 + sum_{i>=2} i (2 x_i - x_{i-1})^2``."""
    idx = np.arange(2, n + 1, dtype=np.float64)

    def fun(x):
        r = 2.0 * x[1:] - x[:-1]
        return float((x[0] - 1.0) ** 2 + np.sum(idx * r**2))

    def grad(x):
        r = idx * (2.0 * x[1:] - x[:-1])
        g = np.zeros_like(x)
        g[0] = 2.0 * (x[0] - 1.0)
        g[1:] += 4.0 * r
        g[:-1] -= 2.0 * r
        return g

    x_star = 0.5 ** np.arange(n, dtype=np.float64)
    return ProblemEntry("TRIDIA", Objective("TRIDIA", n, fun, grad), np.ones(n), 0.0, x_star)


def dixmaana(n=300):
    """DIXMAANA: ``alpha=1, beta=0, gamma=delta=0.125`` and all exponents zero."""
    if n % 3:
        raise ValueError("DIXMAANA needs n divisible by 3")
    m = n // 3
    alpha, beta, gamma, delta = 1.0, 0.0, 0.125, 0.125

    def fun(x):
        f = 1.0 + alpha * np.sum(x**2)
        f += beta * np.sum(x[:-1] ** 2 * (x[1:] + x[1:] ** 2) ** 2)
        f += gamma * np.sum(x[: 2 * m] ** 2 * x[m:] ** 4)
        f += delta * np.sum(x[:m] * x[2 * m:])
        return float(f)

    def grad(x):
        g = 2.0 * alpha * x
        u = x[1:] + x[1:] ** 2
        g[:-1] += 2.0 * beta * x[:-1] * u**2
        g[1:] += 2.0 * beta * x[:-1] ** 2 * u * (1.0 + 2.0 * x[1:])
        g[: 2 * m] += 2.0 * gamma * x[: 2 * m] * x[m:] ** 4
        g[m:] += 4.0 * gamma * x[: 2 * m] ** 2 * x[m:] ** 3
        g[:m] += delta * x[2 * m:]
        g[2 * m:] += delta * x[:m]
        return g

    return ProblemEntry(
        "DIXMAANA", Objective("DIXMAANA", n, fun, grad), np.full(n, 2.0), 1.0, np.zeros(n)
    )


def engval1(n=500):
    def fun(x):
        s = x[:-1] ** 2 + x[1:] ** 2
        return float(np.sum(s**2 - 4.0 * x[:-1] + 3.0))

    def grad(x):
        s = x[:-1] ** 2 + x[1:] ** 2
        g = np.zeros_like(x)
        g[:-1] += 4.0 * s * x[:-1] - 4.0
        g[1:] += 4.0 * s * x[1:]
        return g

    return ProblemEntry("ENGVAL1", Objective("ENGVAL1", n, fun, grad), np.full(n, 2.0))


def liarwhd(n=500):
    def fun(x):
        return float(np.sum(4.0 * (x**2 - x[0]) ** 2 + (x - 1.0) ** 2))

    def grad(x):
        t = x**2 - x[0]
        g = 16.0 * t * x + 2.0 * (x - 1.0)
        g[0] -= 8.0 * np.sum(t)
        return g

    return ProblemEntry("LIARWHD", Objective("LIARWHD", n, fun, grad), np.full(n, 4.0), 0.0, np.ones(n))


def edensch(n=500):
    def fun(x):
        a, b = x[:-1], x[1:]
        return float(16.0 + np.sum((a - 2.0) ** 4 + (a * b - 2.0 * b) ** 2 + (b + 1.0) ** 2))

    def grad(x):
        a, b = x[:-1], x[1:]
        t = a * b - 2.0 * b
        g = np.zeros_like(x)
        g[:-1] += 4.0 * (a - 2.0) ** 3 + 2.0 * t * b
        g[1:] += 2.0 * t * (a - 2.0) + 2.0 * (b + 1.0)
        return g

    return ProblemEntry("EDENSCH", Objective("EDENSCH", n, fun, grad), np.zeros(n))


def quartc(n=500):
    idx = np.arange(1, n + 1, dtype=np.float64)

    def fun(x):
        return float(np.sum((x - idx) ** 4))

    def grad(x):
        return 4.0 * (x - idx) ** 3

    return ProblemEntry("QUARTC", Objective("QUARTC", n, fun, grad), np.full(n, 2.0), 0.0, idx.copy())


def cosine(n=500):
    def fun(x):
        return float(np.sum(np.cos(-0.5 * x[1:] + x[:-1] ** 2)))

    def grad(x):
        s = np.sin(-0.5 * x[1:] + x[:-1] ** 2)
        g = np.zeros_like(x)
        g[:-1] -= 2.0 * x[:-1] * s
        g[1:] += 0.5 * s
        return g

    return ProblemEntry("COSINE", Objective("COSINE", n, fun, grad), np.ones(n))


def dqdrtic(n=500):
    """Strictly convex diagonal-band quadratic ``sum x_i^2 + 100 x_{i+1}^2 + 100 x_{i+2}^2``."""

    def fun(x):
        return float(np.sum(x[:-2] ** 2 + 100.0 * x[1:-1] ** 2 + 100.0 * x[2:] ** 2))

    def grad(x):
        g = np.zeros_like(x)
        g[:-2] += 2.0 * x[:-2]
        g[1:-1] += 200.0 * x[1:-1]
        g[2:] += 200.0 * x[2:]
        return g

    return ProblemEntry("DQDRTIC", Objective("DQDRTIC", n, fun, grad), np.full(n, 3.0), 0.0, np.zeros(n))


def nondia(n=500):
    def fun(x):
        return float((x[0] - 1.0) ** 2 + 100.0 * np.sum((x[0] - x[:-1] ** 2) ** 2))

    def grad(x):
        t = x[0] - x[:-1] ** 2
        g = np.zeros_like(x)
        g[:-1] -= 400.0 * t * x[:-1]
        g[0] += 2.0 * (x[0] - 1.0) + 200.0 * np.sum(t)
        return g

    return ProblemEntry("NONDIA", Objective("NONDIA", n, fun, grad), np.full(n, -1.0), 0.0, np.ones(n))


def beale():
    c = np.array([1.5, 2.25, 2.625])
    p = np.array([1.0, 2.0, 3.0])

    def fun(x):
        r = c - x[0] * (1.0 - x[1] ** p)
        return float(np.sum(r**2))

    def grad(x):
        r = c - x[0] * (1.0 - x[1] ** p)
        dx0 = -(1.0 - x[1] ** p)
        dx1 = x[0] * p * x[1] ** (p - 1.0)
        return np.array([2.0 * np.sum(r * dx0), 2.0 * np.sum(r * dx1)])

    return ProblemEntry(
        "BEALE", Objective("BEALE", 2, fun, grad), np.array([1.0, 1.0]), 0.0, np.array([3.0, 0.5])
    )


def himmelbg():
    def fun(x):
        return float((2.0 * x[0] ** 2 + 3.0 * x[1] ** 2) * np.exp(-x[0] - x[1]))

    def grad(x):
        e = np.exp(-x[0] - x[1])
        q = 2.0 * x[0] ** 2 + 3.0 * x[1] ** 2
        return np.array([(4.0 * x[0] - q) * e, (6.0 * x[1] - q) * e])

    return ProblemEntry(
        "HIMMELBG", Objective("HIMMELBG", 2, fun, grad), np.array([0.5, 0.5]), 0.0, np.zeros(2)
    )
