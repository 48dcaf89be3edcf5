"""Difficulty and uncertainty thresholds for information acquisition.

``kappa_w`` is the largest difficulty at which the intrinsic incentive alone
still buys a perfectly informative signal.  ``phi_w_x(kappa) = 2*delta_x`` is
the uncertainty above which information is acquired at reward ``x``, and
``phi_w`` is that threshold at the lowest reward.
"""

from __future__ import annotations

import math

from .errors import DomainError
from .model import TABULATED, Agent, CostSpec
from .solver import optimal_cutoff

KAPPA_TOL = 1e-10
MAX_ITER = 300


def kappa_w(agent: Agent, c: CostSpec) -> float:
    """Triviality threshold: tasks with ``kappa <= kappa_w`` are solved perfectly at every reward."""
    c.require_valid()
    w = agent.w
    if w == 0:
        return 0.0
    if c.kind == TABULATED:
        return _kappa_w_bisect(w, c)
    slope0 = c.derivative(0.0)
    if math.isinf(slope0):
        return 0.0
    # corner condition -w - kappa*c'(0+) >= 0
    return w / abs(slope0)


def _kappa_w_bisect(w: float, c: CostSpec) -> float:
    lo, hi = 0.0, 1.0
    while optimal_cutoff(w, hi, c) == 0.0:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise DomainError("cutoff stays at 0 for every difficulty; cost is not strictly convex")
    for _ in range(MAX_ITER):
        if hi - lo <= KAPPA_TOL * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if optimal_cutoff(w, mid, c) == 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def phi_w_x(x: float, agent: Agent, kappa: float, c: CostSpec) -> float:
    """Uncertainty threshold ``2*delta_x`` at reward ``x``."""
    return 2.0 * optimal_cutoff(agent.u1(x), kappa, c)


def phi_w(agent: Agent, kappa: float, c: CostSpec) -> float:
    return phi_w_x(agent.x0, agent, kappa, c)


def phi_w_inverse(agent: Agent, phi: float, c: CostSpec) -> float:
    """The difficulty ``kappa > kappa_w`` at which ``phi_w(kappa) == phi``.

    ``phi_w`` is strictly increasing on ``(kappa_w, inf)`` with range
    ``(0, 1)`` when ``w > 0``; with ``w == 0`` it is identically 1 and has no
    inverse.
    """
    if not (0.0 < phi < 1.0):
        raise DomainError(f"phi={phi!r} must lie in the open interval (0, 1)")
    if agent.w == 0:
        raise DomainError("phi_w is identically 1 when w = 0; it has no inverse")
    lo = kappa_w(agent, c)
    hi = max(2.0 * lo, 1.0)
    while phi_w(agent, hi, c) <= phi:
        lo, hi = hi, hi * 2.0
        if hi > 1e300:
            raise DomainError(f"phi_w never exceeds {phi!r}")
    for _ in range(MAX_ITER):
        if hi - lo <= 1e-14 * hi:
            break
        mid = 0.5 * (lo + hi)
        if phi_w(agent, mid, c) < phi:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
