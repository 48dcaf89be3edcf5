"""Brute-force concavification on a posterior grid.

Nothing here uses the two-posterior structure the solver relies on: the least
concave majorant of the sampled payoff is taken as the upper convex hull of
the sample points, and the optimal signal is read off the hull edge that spans
the prior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import Agent, CostSpec, Signal, SolveReport, Task, canonical_prior

CONTACT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EnvelopeResult:
    grid: np.ndarray
    values: np.ndarray
    envelope: np.ndarray
    vertices: np.ndarray  # indices of hull vertices, increasing
    contact: np.ndarray  # boolean mask, envelope == values within tolerance

    def at(self, q: float) -> float:
        return float(np.interp(q, self.grid, self.envelope))

    def edge(self, q: float) -> tuple[int, int]:
        """Grid indices of the hull vertices bracketing ``q`` (equal when ``q`` is a vertex)."""
        vq = self.grid[self.vertices]
        j = int(np.searchsorted(vq, q))
        if j < len(vq) and vq[j] == q:
            return int(self.vertices[j]), int(self.vertices[j])
        return int(self.vertices[j - 1]), int(self.vertices[j])


def upper_hull(x: np.ndarray, y: np.ndarray) -> list[int]:
    """Indices of the upper convex hull of points sorted by ``x`` (monotone chain)."""
    hull: list[int] = []
    for i in range(len(x)):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (x[a] - x[o]) * (y[i] - y[o]) - (y[a] - y[o]) * (x[i] - x[o])
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    return hull


def concave_envelope(values: np.ndarray) -> EnvelopeResult:
    """Least concave majorant of samples taken on a uniform grid over ``[0, 1]``."""
    values = np.asarray(values, dtype=float)
    n = len(values)
    if n < 2:
        raise DomainError("need at least 2 samples")
    if not np.all(np.isfinite(values)):
        raise DomainError("samples must be finite")
    grid = np.linspace(0.0, 1.0, n)
    vertices = np.array(upper_hull(grid, values))
    env = np.interp(grid, grid[vertices], values[vertices])
    scale = max(1.0, float(np.max(np.abs(values))))
    contact = np.abs(env - values) <= CONTACT_TOL * scale
    return EnvelopeResult(grid, values, env, vertices, contact)


def payoff_samples(u1_value: float, kappa: float, c: CostSpec, grid_n: int) -> np.ndarray:
    q = np.linspace(0.0, 1.0, grid_n)
    return u1_value * np.maximum(q, 1.0 - q) - kappa * c.values(q)


def oracle_solve_prior(
    u1_value: float, kappa: float, c: CostSpec, p: float, grid_n: int = 4001
) -> SolveReport:
    if grid_n < 101 or grid_n % 2 == 0:
        raise DomainError(f"grid_n={grid_n} must be odd and at least 101")
    env = concave_envelope(payoff_samples(u1_value, kappa, c, grid_n))
    q = env.grid

    lo, hi = env.edge(0.5)
    cutoff = float(q[lo])

    left, right = env.edge(p)
    if right - left <= 1:
        # p is a vertex or sits between neighbouring samples: locally concave, no split
        signal = Signal.degenerate(p)
    else:
        signal = Signal.binary(float(q[left]), float(q[right]), p)
    envelope = env.at(p)
    cost = kappa * (sum(a * c.value(x) for x, a in signal.atoms) - c.value(p))
    return SolveReport(
        cutoff=cutoff,
        signal=signal,
        value=envelope + kappa * c.value(p),
        envelope=envelope,
        accuracy=signal.expected_accuracy(),
        effort=cost,
        informative=signal.informative,
        prior=p,
        u1=u1_value,
    )


def oracle_solve(x: float, agent: Agent, task: Task, c: CostSpec, grid_n: int = 4001) -> SolveReport:
    return oracle_solve_prior(agent.u1(x), task.kappa, c, canonical_prior(task.phi), grid_n)
