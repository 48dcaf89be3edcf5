"""Optimal attention for a single guessing task.

The net payoff of posterior ``q`` is ``g(q) - kappa*c(q)`` with
``g(q) = u1 * max(q, 1 - q)``.  On ``[0, 1/2]`` this is the strictly concave
``h(q) = u1*(1 - q) - kappa*c(q)``; by symmetry its concave closure is flat
between ``delta = argmax h`` and ``1 - delta`` and equals the payoff outside.
A prior strictly inside ``(delta, 1 - delta)`` is split onto those two
posteriors, any other prior is left alone.
"""

from __future__ import annotations

from .errors import DomainError
from .model import Agent, CostSpec, Signal, SolveReport, Task, canonical_prior

CUTOFF_TOL = 1e-12
MAX_ITER = 200


def optimal_cutoff(u1_value: float, kappa: float, c: CostSpec) -> float:
    """Low posterior ``delta`` in ``[0, 1/2]`` of the optimal two-point signal.

    Bisection on ``h'(q) = -u1 - kappa*c'(q)``, which is strictly decreasing.
    """
    if not kappa > 0:
        raise DomainError(f"kappa={kappa!r} must be > 0")
    if not u1_value >= 0:
        raise DomainError(f"u1={u1_value!r} must be >= 0")
    c.require_valid()

    def slope(q: float) -> float:
        return -u1_value - kappa * c.derivative(q)

    if slope(0.0) <= 0.0:
        return 0.0
    if slope(0.5) >= 0.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        s = slope(mid)
        if s == 0.0:
            return mid
        if s > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= CUTOFF_TOL:
            break
    return 0.5 * (lo + hi)


def solve_prior(u1_value: float, kappa: float, c: CostSpec, p: float) -> SolveReport:
    """Solve the attention problem at an arbitrary prior ``p`` in ``[0, 1]``."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"prior p={p!r} must lie in [0, 1]")
    delta = optimal_cutoff(u1_value, kappa, c)
    cp = c.value(p)
    # boundary p == delta is indifferent; resolved as no acquisition
    if delta < p < 1.0 - delta:
        signal = Signal.binary(delta, 1.0 - delta, p)
        envelope = u1_value * (1.0 - delta) - kappa * c.value(delta)
        accuracy = 1.0 - delta
        effort = kappa * (c.value(delta) - cp)
        informative = True
    else:
        signal = Signal.degenerate(p)
        envelope = u1_value * max(p, 1.0 - p) - kappa * cp
        accuracy = max(p, 1.0 - p)
        effort = 0.0
        informative = False
    return SolveReport(
        cutoff=delta,
        signal=signal,
        value=envelope + kappa * cp,
        envelope=envelope,
        accuracy=accuracy,
        effort=effort,
        informative=informative,
        prior=p,
        u1=u1_value,
    )


def optimal_signal(x: float, agent: Agent, task: Task, c: CostSpec) -> SolveReport:
    return solve_prior(agent.u1(x), task.kappa, c, canonical_prior(task.phi))


def expected_accuracy(x: float, agent: Agent, task: Task, c: CostSpec) -> float:
    """Probability of a correct guess under the optimal signal, ``max(1 - phi/2, 1 - delta_x)``."""
    delta = optimal_cutoff(agent.u1(x), task.kappa, c)
    return max(1.0 - task.phi / 2.0, 1.0 - delta)


def effort(x: float, agent: Agent, task: Task, c: CostSpec) -> float:
    """Information cost paid at the optimum; 0 when nothing is acquired."""
    delta = optimal_cutoff(agent.u1(x), task.kappa, c)
    p = canonical_prior(task.phi)
    if delta < p:
        return task.kappa * (c.value(delta) - c.value(p))
    return 0.0


def accuracy_from_cutoff(delta: float, phi: float) -> float:
    return max(1.0 - phi / 2.0, 1.0 - delta)


def effort_from_cutoff(delta: float, task: Task, c: CostSpec) -> float:
    p = task.phi / 2.0
    return task.kappa * (c.value(delta) - c.value(p)) if delta < p else 0.0

