"""The nonlinear conjugate gradient iteration.

``minimize`` alternates direction updates from :mod:`cgkit.directions` with
Wolfe steps from :mod:`cgkit.linesearch` until a stopping rule fires.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import CountingObjective, as_vector, dot, norm2, norm_inf
from .directions import (
    RESTART,
    Converged,
    DirectionState,
    MethodSpec,
    SafeguardParams,
    direction,
)
from .linesearch import LineSearchError, NotDescentError, WolfeParams, search

CONVERGED = "converged"
ITERATION_CAP = "iteration-cap"
LINE_SEARCH_FAILURE = "line-search-failure"

ALPHA_MIN = 1e-12


class InvalidStartError(ValueError):
    """The objective or its gradient is not finite at the starting point."""


@dataclass(frozen=True)
class SolverConfig:
    method: MethodSpec = field(default_factory=MethodSpec)
    wolfe: WolfeParams = field(default_factory=WolfeParams)
    gtol: Optional[float] = 1e-6
    step_rtol: Optional[float] = None
    max_iter: int = 50_000
    collect_trace: bool = False
    safeguard: SafeguardParams = field(default_factory=SafeguardParams)

    def __post_init__(self):
        gtol_on = self.gtol is not None and self.gtol > 0
        rtol_on = self.step_rtol is not None and self.step_rtol > 0
        if not (gtol_on or rtol_on):
            raise ValueError("need gtol > 0 or step_rtol > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class IterationRecord:
    """One accepted step ``x_{k+1} = x_k + alpha d_k``."""

    k: int
    f: float
    gnorm: float
    gtd: float
    gnorm2: float
    dnorm2: float
    alpha: float
    beta: float
    branch: str
    restarted: bool
    f_new: float
    gtd_new: float
    zoutendijk_term: float


@dataclass
class Diagnostics:
    zoutendijk_partial_sum: float = 0.0
    min_descent_ratio: float = math.inf

    def add(self, gtd, gnorm2, dnorm2):
        term = gtd * gtd / dnorm2
        self.zoutendijk_partial_sum += term
        self.min_descent_ratio = min(self.min_descent_ratio, -gtd / gnorm2)
        return term


@dataclass
class SolveReport:
    status: str
    iters: int
    fevals: int
    gevals: int
    wall_time: float
    f_final: float
    gnorm_final: float
    x_final: np.ndarray
    diagnostics: Diagnostics
    trace: Optional[list] = None
    restarts: int = 0

    @property
    def converged(self):
        return self.status == CONVERGED


@dataclass
class StepInfo:
    """Everything about one iteration, handed to the ``callback`` of
    :func:`minimize`. ``state`` is None on the first iteration."""

    k: int
    x: np.ndarray
    g: np.ndarray
    d: np.ndarray
    state: Optional[DirectionState]
    outcome: object
    f: float
    alpha: float
    f_new: float
    g_new: np.ndarray
    x_new: np.ndarray


def initial_alpha(k, g, d, prev=None, alpha_max=1e10):
    """First trial step of the line search.

    ``prev`` is ``(alpha_prev, gtd_prev)`` from the previous iteration. The
    first iteration uses ``1 / (1 + ||g||_inf)``; later ones carry the
    previous step over, scaled by the ratio of directional derivatives.
    """
    if k <= 1 or prev is None:
        alpha = 1.0 / (1.0 + norm_inf(g))
    else:
        alpha_prev, gtd_prev = prev
        alpha = alpha_prev * gtd_prev / dot(g, d)
    if not math.isfinite(alpha):
        alpha = alpha_max
    return min(max(alpha, ALPHA_MIN), alpha_max)


def minimize(obj, x0, config=None, callback: Optional[Callable[[StepInfo], None]] = None):
    """Minimize ``obj`` from ``x0`` with a nonlinear conjugate gradient method.

    Stops when ``||g||_inf <= gtol``, when the relative step
    ``||x_{k+1} - x_k|| / ||x_k||`` drops below ``step_rtol``, when
    ``max_iter`` steps have been taken, or when the line search fails on a
    steepest-descent retry right after failing on the regular direction.
    """
    if config is None:
        config = SolverConfig()
    counted = CountingObjective(obj)
    counter = counted.counter
    x = as_vector(x0, obj.n)
    f, g = counted.eval_grad(x)
    if not (math.isfinite(f) and np.all(np.isfinite(g))):
        raise InvalidStartError(f"objective is not finite at the starting point of {obj.name}")

    gtol = config.gtol if config.gtol is not None and config.gtol > 0 else None
    rtol = config.step_rtol if config.step_rtol is not None and config.step_rtol > 0 else None
    wolfe = config.wolfe
    diag = Diagnostics()
    trace = [] if config.collect_trace else None

    state = None
    prev_step = None
    iters = 0
    restarts = 0
    status = None
    start = time.perf_counter()
    while True:
        gnorm = norm_inf(g)
        if gtol is not None and gnorm <= gtol:
            status = CONVERGED
            break
        if iters >= config.max_iter:
            status = ITERATION_CAP
            break
        k = iters + 1
        try:
            d, outcome = direction(g, state, config.method, config.safeguard)
        except Converged:
            status = CONVERGED
            break
        try:
            ls = search(counted, x, f, g, d, initial_alpha(k, g, d, prev_step, wolfe.alpha_max), wolfe)
        except (LineSearchError, NotDescentError):
            if outcome.restarted and prev_step is None:
                status = LINE_SEARCH_FAILURE
                break
            # one steepest-descent retry with a fresh trial step
            d, outcome = -g, RESTART
            try:
                ls = search(counted, x, f, g, d, initial_alpha(1, g, d, None, wolfe.alpha_max), wolfe)
            except (LineSearchError, NotDescentError):
                status = LINE_SEARCH_FAILURE
                break
        if outcome.restarted:
            restarts += 1

        gtd = dot(g, d)
        gnorm2 = dot(g, g)
        dnorm2 = dot(d, d)
        term = diag.add(gtd, gnorm2, dnorm2)
        if trace is not None:
            trace.append(
                IterationRecord(
                    k, f, gnorm, gtd, gnorm2, dnorm2, ls.alpha, outcome.beta, outcome.branch,
                    outcome.restarted, ls.f_new, ls.gd_new, term,
                )
            )
        if callback is not None:
            callback(StepInfo(k, x, g, d, state, outcome, f, ls.alpha, ls.f_new, ls.g_new, ls.x_new))

        step = norm2(ls.x_new - x)
        xnorm = norm2(x)
        state = DirectionState.after_step(g, d, ls.alpha, k + 1)
        prev_step = (ls.alpha, gtd)
        x, f, g = ls.x_new, ls.f_new, ls.g_new
        iters += 1
        if rtol is not None and step < rtol * (xnorm if xnorm > 0 else 1.0):
            status = CONVERGED
            break

    wall = time.perf_counter() - start
    return SolveReport(
        status=status,
        iters=iters,
        fevals=counter.fevals,
        gevals=counter.gevals,
        wall_time=wall,
        f_final=f,
        gnorm_final=norm_inf(g),
        x_final=x,
        diagnostics=diag,
        trace=trace,
        restarts=restarts,
    )
