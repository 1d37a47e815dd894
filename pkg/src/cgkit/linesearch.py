"""Wolfe line search: bracketing followed by a safeguarded cubic zoom.

The procedure is the usual two-phase scheme. Phase one expands the trial
step by a factor of two until the sufficient-decrease test fails, the
directional derivative changes sign, or an acceptable step is found. Phase
two shrinks the bracket with cubic interpolation, falling back to bisection
when the interpolant is unusable.
"""

import math
from dataclasses import dataclass

import numpy as np

STRONG = "strong"
WEAK = "weak"

EXPAND = 2.0
# fraction of the bracket kept clear of each end by the interpolation safeguard
SAFEGUARD = 0.1
# value differences below NOISE * eps * |f0| are treated as rounding noise
NOISE = 100.0


class NotDescentError(ValueError):
    """The search direction is not a descent direction."""


class LineSearchError(RuntimeError):
    """No acceptable step was found within the evaluation budget."""

    def __init__(self, message, fevals=0, gevals=0):
        super().__init__(message)
        self.fevals = fevals
        self.gevals = gevals


@dataclass(frozen=True)
class WolfeParams:
    delta: float = 0.01
    sigma: float = 0.1
    mode: str = STRONG
    max_evals: int = 60
    alpha_max: float = 1e10

    def __post_init__(self):
        if not 0.0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")
        if not self.delta < self.sigma < 1.0:
            raise ValueError("sigma must lie in (delta, 1)")
        if self.mode not in (STRONG, WEAK):
            raise ValueError(f"mode must be {STRONG!r} or {WEAK!r}")
        if self.max_evals < 10:
            raise ValueError("max_evals must be >= 10")
        if not self.alpha_max > 0:
            raise ValueError("alpha_max must be positive")


@dataclass
class LineSearchResult:
    alpha: float
    f_new: float
    g_new: np.ndarray
    x_new: np.ndarray
    gd_new: float
    fevals: int
    gevals: int


def check_wolfe(f0, g0d, alpha, f_new, gnew_d, params):
    """Return ``(armijo_ok, curvature_ok)`` for a trial step.

    Both tests accept their boundary cases.
    """
    armijo_ok = f_new <= f0 + params.delta * alpha * g0d
    if params.mode == STRONG:
        curvature_ok = abs(gnew_d) <= params.sigma * abs(g0d)
    else:
        curvature_ok = gnew_d >= params.sigma * g0d
    return bool(armijo_ok), bool(curvature_ok)


class _Trial:
    __slots__ = ("alpha", "f", "g", "x", "dphi")

    def __init__(self, alpha, f, g, x, dphi):
        self.alpha = alpha
        self.f = f
        self.g = g
        self.x = x
        self.dphi = dphi

    @property
    def finite(self):
        return math.isfinite(self.f) and math.isfinite(self.dphi)


def _cubic_step(lo, hi):
    """Minimizer of the cubic matching value and slope at both ends, or None."""
    a0, a1 = lo.alpha, hi.alpha
    if a0 == a1:
        return None
    d1 = lo.dphi + hi.dphi - 3.0 * (lo.f - hi.f) / (a0 - a1)
    disc = d1 * d1 - lo.dphi * hi.dphi
    if not (math.isfinite(disc) and disc >= 0.0):
        return None
    d2 = math.copysign(math.sqrt(disc), a1 - a0)
    denom = hi.dphi - lo.dphi + 2.0 * d2
    if denom == 0.0:
        return None
    a = a1 - (a1 - a0) * (hi.dphi + d2 - d1) / denom
    return a if math.isfinite(a) else None


def _next_trial(lo, hi):
    left, right = min(lo.alpha, hi.alpha), max(lo.alpha, hi.alpha)
    width = right - left
    a = _cubic_step(lo, hi) if hi.finite else None
    if a is None:
        return left + 0.5 * width
    return min(max(a, left + SAFEGUARD * width), right - SAFEGUARD * width)


def search(obj, x, f0, g0, d, alpha_init, params=None):
    """Find a step along ``d`` satisfying the Wolfe conditions.

    Parameters
    ----------
    obj : Objective-like
        Anything with ``eval_grad(x) -> (f, g)``.
    x, g0 : ndarray
        Current point and its gradient.
    f0 : float
        Objective value at ``x``.
    d : ndarray
        Search direction; must satisfy ``g0 @ d < 0``.
    alpha_init : float
        First trial step.
    params : WolfeParams, optional

    Returns
    -------
    LineSearchResult
        The accepted step together with the point, value and gradient it
        produced.

    Raises
    ------
    NotDescentError
        If ``g0 @ d >= 0``.
    LineSearchError
        If no acceptable step is found within ``params.max_evals`` trials.
        Trial points with non-finite values count as overshooting.
    """
    if params is None:
        params = WolfeParams()
    g0d = float(np.dot(g0, d))
    if not g0d < 0.0:
        raise NotDescentError(f"g0.d = {g0d!r} is not negative")
    if not alpha_init > 0.0:
        raise ValueError("alpha_init must be positive")

    evals = 0

    def trial(alpha):
        nonlocal evals
        evals += 1
        xa = x + alpha * d
        with np.errstate(all="ignore"):
            f, g = obj.eval_grad(xa)
            dphi = float(np.dot(g, d))
        if not math.isfinite(f):
            dphi = math.nan
        return _Trial(alpha, f, g, xa, dphi)

    def accept(t):
        return LineSearchResult(t.alpha, t.f, t.g, t.x, t.dphi, evals, evals)

    def fail(reason):
        raise LineSearchError(reason, evals, evals)

    def wolfe(t):
        return check_wolfe(f0, g0d, t.alpha, t.f, t.dphi, params)

    noise = NOISE * np.finfo(float).eps * abs(f0)

    def zoom(lo, hi):
        while evals < params.max_evals:
            if abs(hi.alpha - lo.alpha) <= 4.0 * np.finfo(float).eps * max(lo.alpha, hi.alpha):
                fail("bracket collapsed below machine precision")
            t = trial(_next_trial(lo, hi))
            if not t.finite:
                hi = t
                continue
            armijo_ok, curvature_ok = wolfe(t)
            if armijo_ok and curvature_ok and t.f <= lo.f + noise:
                return accept(t)
            uphill = t.dphi * (hi.alpha - lo.alpha) >= 0.0
            if abs(t.f - lo.f) <= noise:
                # values are indistinguishable; follow the slope instead
                if uphill or not armijo_ok:
                    hi = t
                else:
                    lo = t
                continue
            if not armijo_ok or t.f >= lo.f:
                hi = t
                continue
            if curvature_ok:
                return accept(t)
            if uphill:
                hi = lo
            lo = t
        fail("evaluation budget exhausted while zooming")

    prev = _Trial(0.0, f0, g0, x, g0d)
    alpha = min(alpha_init, params.alpha_max)
    first = True
    while True:
        if evals >= params.max_evals:
            fail("evaluation budget exhausted while bracketing")
        t = trial(alpha)
        if not t.finite:
            return zoom(prev, t)
        armijo_ok, curvature_ok = wolfe(t)
        if not armijo_ok or (not first and t.f >= prev.f):
            return zoom(prev, t)
        if curvature_ok:
            return accept(t)
        if t.dphi >= 0.0:
            return zoom(t, prev)
        if alpha >= params.alpha_max:
            fail("step reached alpha_max without satisfying the curvature test")
        prev = t
        alpha = min(EXPAND * alpha, params.alpha_max)
        first = False
