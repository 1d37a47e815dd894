"""Dense vector helpers, the objective contract and a finite-difference gradient.

Vectors are plain one-dimensional ``float64`` numpy arrays. Every helper
allocates a fresh output and never modifies its inputs.
"""

import math

import numpy as np


class DimensionError(ValueError):
    """Operands have incompatible lengths."""


class EvaluationError(ArithmeticError):
    """An objective returned a non-finite value where a finite one is required."""


def as_vector(values, n=None):
    """Copy ``values`` into a finite 1-D float64 array.

    Raises ``ValueError`` on NaN/Inf or an empty input and ``DimensionError``
    if ``n`` is given and the length differs.
    """
    x = np.array(values, dtype=np.float64).reshape(-1)
    if x.size == 0:
        raise ValueError("vector must have at least one component")
    if n is not None and x.size != n:
        raise DimensionError(f"expected length {n}, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector components must be finite")
    return x


def _check_same(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape[0]} vs {b.shape[0]}")


def dot(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    _check_same(a, b)
    return float(np.dot(a, b))


def norm2(a):
    """Euclidean norm."""
    a = np.asarray(a, dtype=np.float64)
    return math.sqrt(float(np.dot(a, a)))


def norm_inf(a):
    a = np.asarray(a, dtype=np.float64)
    return float(np.max(np.abs(a)))


def axpy(alpha, x, y):
    """Return ``y + alpha * x`` as a new array."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    _check_same(x, y)
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    return y + alpha * x


class Objective:
    """A smooth function ``f: R^n -> R`` with its gradient.

    Parameters
    ----------
    name : str
        Identifier used in reports and CSV output.
    n : int
        Dimension of the domain.
    fun : callable
        ``fun(x) -> float``.
    grad : callable
        ``grad(x) -> ndarray`` of length ``n``.
    fun_grad : callable, optional
        ``fun_grad(x) -> (float, ndarray)``; supply it when the value and the
        gradient share work. Defaults to calling ``fun`` and ``grad``.
    """

    __slots__ = ("name", "n", "_fun", "_grad", "_fun_grad")

    def __init__(self, name, n, fun, grad, fun_grad=None):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        self.name = name
        self.n = int(n)
        self._fun = fun
        self._grad = grad
        self._fun_grad = fun_grad

    def eval(self, x):
        return float(self._fun(x))

    def grad(self, x):
        return np.asarray(self._grad(x), dtype=np.float64)

    def eval_grad(self, x):
        if self._fun_grad is not None:
            f, g = self._fun_grad(x)
            return float(f), np.asarray(g, dtype=np.float64)
        return self.eval(x), self.grad(x)

    def __repr__(self):
        return f"Objective({self.name!r}, n={self.n})"


class EvalCounter:
    """Function and gradient evaluation counts for a single solve."""

    __slots__ = ("fevals", "gevals")

    def __init__(self):
        self.fevals = 0
        self.gevals = 0


class CountingObjective:
    """Wraps an :class:`Objective` and counts every evaluation.

    A combined value-and-gradient call counts as one of each.
    """

    def __init__(self, objective, counter=None):
        self.objective = objective
        self.counter = counter if counter is not None else EvalCounter()
        self.name = objective.name
        self.n = objective.n

    def eval(self, x):
        self.counter.fevals += 1
        return self.objective.eval(x)

    def grad(self, x):
        self.counter.gevals += 1
        return self.objective.grad(x)

    def eval_grad(self, x):
        self.counter.fevals += 1
        self.counter.gevals += 1
        return self.objective.eval_grad(x)


def fd_gradient(obj, x, h=1e-6):
    """Central-difference gradient of ``obj`` at ``x``.

    The step for coordinate ``i`` is ``h * max(1, |x_i|)``.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    x = as_vector(x, obj.n)
    g = np.empty_like(x)
    probe = x.copy()
    for i in range(x.size):
        step = h * max(1.0, abs(x[i]))
        probe[i] = x[i] + step
        fp = obj.eval(probe)
        probe[i] = x[i] - step
        fm = obj.eval(probe)
        probe[i] = x[i]
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise EvaluationError(f"non-finite value while probing coordinate {i}")
        g[i] = (fp - fm) / (2.0 * step)
    return g


def gradient_check(obj, x, h=1e-6):
    """Max-norm gap between analytic and finite-difference gradients.

    The gap is scaled by ``1 + ||grad(x)||``.
    """
    g = obj.grad(x)
    g_fd = fd_gradient(obj, x, h)
    return float(np.max(np.abs(g - g_fd))) / (1.0 + norm2(g))
