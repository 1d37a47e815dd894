"""Conjugate gradient update parameters and search directions.

Every ``beta_*`` function takes the current gradient ``g`` and a
:class:`DirectionState` describing the previous iteration, and returns a
:class:`BetaOutcome`. A degenerate denominator never raises; it produces a
restart outcome and the caller falls back to steepest descent.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import dot, norm2

AZHS = "azhs"
AZHS3 = "azhs3"
AZPRP = "azprp"
HS = "hs"
HS_PLUS = "hs+"
PRP = "prp"
PRP_PLUS = "prp+"
FR = "fr"
DL = "dl"
DL_PLUS = "dl+"
HZ = "hz"

METHODS = (AZHS, AZHS3, AZPRP, HS, HS_PLUS, PRP, PRP_PLUS, FR, DL, DL_PLUS, HZ)

_ALIASES = {
    "hsplus": HS_PLUS,
    "prpplus": PRP_PLUS,
    "dlplus": DL_PLUS,
    "pr": PRP,
    "pr+": PRP_PLUS,
    "cg_descent": HZ,
}

# |d'y| (or ||g_prev||^2) at or below this triggers a restart
DENOM_FLOOR = 1e-30


def canonical_method(name):
    """Normalize a method name (case-insensitive, accepts ``hsplus`` etc.)."""
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in METHODS:
        raise ValueError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
    return key


@dataclass(frozen=True)
class MethodSpec:
    kind: str = AZHS
    t: float = 0.1
    eta: float = 0.01

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_method(self.kind))
        if not self.t >= 0.0:
            raise ValueError("t must be >= 0")
        if not self.eta > 0.0:
            raise ValueError("eta must be > 0")


@dataclass(frozen=True)
class SafeguardParams:
    """Generic descent test ``g'd <= -c_min ||g||^2`` applied to every method."""

    c_min: float = 1e-10


@dataclass
class DirectionState:
    """What the previous iteration leaves behind.

    ``s_prev`` is ``alpha_prev * d_prev``, the step actually taken.
    """

    g_prev: np.ndarray
    d_prev: np.ndarray
    s_prev: np.ndarray
    alpha_prev: float
    k: int

    @classmethod
    def after_step(cls, g_prev, d_prev, alpha_prev, k):
        return cls(g_prev, d_prev, alpha_prev * d_prev, float(alpha_prev), k)


@dataclass(frozen=True)
class BetaOutcome:
    beta: float
    branch: str
    restarted: bool = False


RESTART = BetaOutcome(0.0, "restart", True)


def _restart(reason="restart"):
    return BetaOutcome(0.0, reason, True)


class RestartRequired(ArithmeticError):
    """Raised by :func:`mu` when ``y`` vanishes."""


def mu(s_prev, y):
    """Step-to-gradient-change ratio ``||s|| / ||y||``."""
    ny = norm2(y)
    if ny == 0.0:
        raise RestartRequired("y = 0")
    return norm2(s_prev) / ny


def _pieces(g, state):
    y = g - state.g_prev
    return y, dot(state.d_prev, y)


def _azhs_terms(g, state):
    """Shared quantities of the AZHS family, or None when a restart is due."""
    y, dty = _pieces(g, state)
    if not dty > DENOM_FLOOR:
        return None
    try:
        m = mu(state.s_prev, y)
    except RestartRequired:
        return None
    gg = dot(g, g)
    ggp = abs(dot(g, state.g_prev))
    # (mu / alpha) * g's / d'y, the Dai-Liao style correction
    correction = m * dot(g, state.s_prev) / (state.alpha_prev * dty)
    return gg, ggp, m, dty, correction, y


def beta_azhs(g, state):
    """AZHS parameter: the Hestenes-Stiefel numerator with a mu-weighted restart
    test and a Dai-Liao correction scaled by ``mu / alpha_prev``."""
    terms = _azhs_terms(g, state)
    if terms is None:
        return RESTART
    gg, ggp, m, dty, correction, _ = terms
    if gg > m * ggp:
        return BetaOutcome((gg - m * ggp) / dty - correction, "azhs-case1")
    return BetaOutcome(-correction, "azhs-case2")


def beta_azhs3(g, state):
    """Three-branch AZHS variant; the branches are tried in order."""
    terms = _azhs_terms(g, state)
    if terms is None:
        return RESTART
    gg, ggp, m, dty, correction, _ = terms
    if gg > ggp:
        return BetaOutcome((gg - ggp) / dty, "azhs3-caseA")
    if gg > m * ggp:
        return BetaOutcome((gg - m * ggp) / dty - correction, "azhs3-caseB")
    return BetaOutcome(-correction, "azhs3-caseC")


def beta_azprp(g, state):
    gp2 = dot(state.g_prev, state.g_prev)
    if not gp2 > DENOM_FLOOR:
        return RESTART
    try:
        m = mu(state.s_prev, g - state.g_prev)
    except RestartRequired:
        return RESTART
    gg = dot(g, g)
    ggp = abs(dot(g, state.g_prev))
    if gg > m * ggp:
        return BetaOutcome((gg - m * ggp) / gp2, "azprp-case1")
    return BetaOutcome(0.0, "azprp-case2")


def beta_classical(kind, g, state):
    """Hestenes-Stiefel, Fletcher-Reeves, Polak-Ribiere-Polyak and the clamped
    ``+`` variants of HS and PRP."""
    kind = canonical_method(kind)
    if kind in (HS, HS_PLUS):
        y, dty = _pieces(g, state)
        if not abs(dty) > DENOM_FLOOR:
            return RESTART
        beta = dot(g, y) / dty
    elif kind in (PRP, PRP_PLUS, FR):
        gp2 = dot(state.g_prev, state.g_prev)
        if not gp2 > DENOM_FLOOR:
            return RESTART
        if kind == FR:
            beta = dot(g, g) / gp2
        else:
            beta = dot(g, g - state.g_prev) / gp2
    else:
        raise ValueError(f"{kind!r} is not a classical method")
    if kind in (HS_PLUS, PRP_PLUS):
        beta = max(beta, 0.0)
    return BetaOutcome(beta, kind)


def beta_dl(g, state, t, plus=False):
    """Dai-Liao parameter; ``plus`` clamps the HS part at zero."""
    y, dty = _pieces(g, state)
    if not abs(dty) > DENOM_FLOOR:
        return RESTART
    hs = dot(g, y) / dty
    if plus:
        hs = max(hs, 0.0)
    return BetaOutcome(hs - t * dot(g, state.s_prev) / dty, DL_PLUS if plus else DL)


def beta_hz(g, state, eta):
    """Hager-Zhang parameter with the lower truncation ``eta_k``."""
    y, dty = _pieces(g, state)
    dnorm = norm2(state.d_prev)
    if not abs(dty) > DENOM_FLOOR or dnorm == 0.0:
        return RESTART
    yy = dot(y, y)
    beta_n = (dot(y, g) - 2.0 * yy / dty * dot(state.d_prev, g)) / dty
    gp_norm = norm2(state.g_prev)
    floor = min(eta, gp_norm)
    if floor == 0.0:
        return BetaOutcome(beta_n, "hz")
    eta_k = -1.0 / (dnorm * floor)
    if beta_n < eta_k:
        return BetaOutcome(eta_k, "hz-truncated")
    return BetaOutcome(beta_n, "hz")


def compute_beta(g, state, spec):
    kind = spec.kind
    if kind == AZHS:
        return beta_azhs(g, state)
    if kind == AZHS3:
        return beta_azhs3(g, state)
    if kind == AZPRP:
        return beta_azprp(g, state)
    if kind in (DL, DL_PLUS):
        return beta_dl(g, state, spec.t, plus=kind == DL_PLUS)
    if kind == HZ:
        return beta_hz(g, state, spec.eta)
    return beta_classical(kind, g, state)


class Converged(Exception):
    """The gradient is exactly zero; there is no direction to compute."""


def direction(g, state, spec, safeguard=None):
    """Search direction ``-g + beta * d_prev`` with steepest-descent restarts.

    Returns ``(d, outcome)``. The first iteration (``state`` is None or
    ``state.k < 2``), a restart signalled by the beta formula, a non-finite
    beta, or a direction failing the safeguard descent test all give
    ``d = -g``.
    """
    if safeguard is None:
        safeguard = SafeguardParams()
    gg = dot(g, g)
    if gg == 0.0:
        raise Converged("gradient is zero")
    if state is None or state.k < 2:
        return -g, RESTART
    outcome = compute_beta(g, state, spec)
    if outcome.restarted or not math.isfinite(outcome.beta):
        return -g, RESTART
    d = -g + outcome.beta * state.d_prev
    if not dot(g, d) <= -safeguard.c_min * gg:
        return -g, BetaOutcome(outcome.beta, "safeguard", True)
    return d, outcome


def conjugacy_residual(d, y, g, s, t):
    """``d'y + t g's``; zero when the Dai-Liao conjugacy condition holds."""
    return dot(d, y) + t * dot(g, s)


def descent_constant(sigma):
    """Sufficient descent constant ``1 - sigma / (1 - sigma)`` of the AZHS family
    under a strong Wolfe search."""
    return 1.0 - sigma / (1.0 - sigma)
