"""The robust complexity order: task B is at least as complex as task A when
B's expected accuracy is weakly below A's at every extrinsic reward.

:func:`compare` evaluates the order through the difficulty/uncertainty
characterization; :func:`compare_by_sweep` evaluates the definition directly on
a finite reward grid and serves as its independent check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DomainError
from .model import Agent, CostSpec, Task
from .solver import accuracy_from_cutoff, optimal_cutoff
from .thresholds import kappa_w, phi_w

# phi comparisons closer than this count as ties; matches the sweep tolerance
TIE_TOL = 1e-9
SWEEP_TOL = 1e-9


class Verdict(str, Enum):
    """Answer to "is b more complex than a"."""

    MORE_COMPLEX = "MoreComplex"
    LESS_COMPLEX = "LessComplex"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"

    @classmethod
    def from_relations(cls, b_over_a: bool, a_over_b: bool) -> "Verdict":
        if b_over_a and a_over_b:
            return cls.EQUIVALENT
        if b_over_a:
            return cls.MORE_COMPLEX
        if a_over_b:
            return cls.LESS_COMPLEX
        return cls.INCOMPARABLE

    def swapped(self) -> "Verdict":
        if self is Verdict.MORE_COMPLEX:
            return Verdict.LESS_COMPLEX
        if self is Verdict.LESS_COMPLEX:
            return Verdict.MORE_COMPLEX
        return self

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ComparisonResult:
    verdict: Verdict
    b_over_a: bool
    a_over_b: bool
    details: dict[str, float | bool] = field(default_factory=dict)


def is_trivial(task: Task, agent: Agent, c: CostSpec) -> bool:
    """True when the optimal signal reveals the state at every reward.

    That happens for every prior once ``kappa <= kappa_w``, and for every
    difficulty when the prior is already degenerate (``phi == 0``).
    """
    return task.kappa <= kappa_w(agent, c) or task.phi == 0.0


def _cap(task: Task, agent: Agent, c: CostSpec) -> float:
    return min(phi_w(agent, task.kappa, c), task.phi)


def _dominates(b: Task, a: Task, trivial_a: bool, trivial_b: bool, cap_a: float) -> bool:
    """b is weakly more complex than a."""
    if trivial_a:
        return True
    if trivial_b:
        return False
    return b.kappa >= a.kappa and b.phi >= cap_a - TIE_TOL


def compare(a: Task, b: Task, agent: Agent, c: CostSpec) -> ComparisonResult:
    """Is ``b`` more complex than ``a``?  Closed-form verdict."""
    kw = kappa_w(agent, c)
    trivial_a = is_trivial(a, agent, c)
    trivial_b = is_trivial(b, agent, c)
    pw_a = phi_w(agent, a.kappa, c)
    pw_b = phi_w(agent, b.kappa, c)
    cap_a, cap_b = min(pw_a, a.phi), min(pw_b, b.phi)
    b_over_a = _dominates(b, a, trivial_a, trivial_b, cap_a)
    a_over_b = _dominates(a, b, trivial_b, trivial_a, cap_b)
    return ComparisonResult(
        verdict=Verdict.from_relations(b_over_a, a_over_b),
        b_over_a=b_over_a,
        a_over_b=a_over_b,
        details={
            "kappa_w": kw,
            "kappa_a": a.kappa,
            "kappa_b": b.kappa,
            "phi_w_a": pw_a,
            "phi_w_b": pw_b,
            "cap_a": cap_a,
            "cap_b": cap_b,
            "trivial_a": trivial_a,
            "trivial_b": trivial_b,
        },
    )


def reward_grid(
    agent: Agent, x_min: float, x_max: float, n: int, spacing: str = "geometric"
) -> tuple[float, ...]:
    """Rewards on ``[x_min, x_max]``, linear in ``x`` or geometric in ``u1(x)``.

    When ``u1(x_min) == 0`` a geometric grid keeps ``x_min`` as its first point
    and spaces the remaining ``n - 1`` utilities geometrically from ``u_top/400``.
    """
    if n < 2:
        raise DomainError("a reward grid needs at least 2 points")
    if not (agent.x0 <= x_min < x_max):
        raise DomainError(f"need x0 <= x_min < x_max, got [{x_min!r}, {x_max!r}]")
    if spacing == "linear":
        return tuple(float(x) for x in np.linspace(x_min, x_max, n))
    if spacing != "geometric":
        raise DomainError(f"unknown grid spacing {spacing!r}")
    u_lo, u_top = agent.u1(x_min), agent.u1(x_max)
    if u_lo > 0:
        us = np.geomspace(u_lo, u_top, n)
    else:
        us = np.concatenate([[0.0], np.geomspace(u_top / 400.0, u_top, n - 1)])
    return (x_min,) + tuple(agent.reward_for(float(u)) for u in us[1:-1]) + (x_max,)


def default_reward_grid(agent: Agent, n: int = 41, span: float = 20.0) -> tuple[float, ...]:
    """``n`` rewards on ``[x0, x0 + span]``, geometric in utility."""
    return reward_grid(agent, agent.x0, agent.x0 + span, n)


def accuracy_curve(
    task: Task, agent: Agent, c: CostSpec, x_grid: Sequence[float], workers: int | None = None
) -> np.ndarray:
    def one(x: float) -> float:
        return accuracy_from_cutoff(optimal_cutoff(agent.u1(x), task.kappa, c), task.phi)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return np.array(list(pool.map(one, x_grid)))
    return np.array([one(x) for x in x_grid])


def compare_by_sweep(
    a: Task,
    b: Task,
    agent: Agent,
    c: CostSpec,
    x_grid: Sequence[float] | None = None,
    tol: float = SWEEP_TOL,
) -> ComparisonResult:
    """Is ``b`` more complex than ``a``?  Verdict from accuracy curves on a reward grid."""
    if x_grid is None:
        x_grid = default_reward_grid(agent)
    if len(x_grid) == 0:
        raise DomainError("reward grid is empty")
    if min(x_grid) < agent.x0:
        raise DomainError(f"reward grid goes below x0={agent.x0!r}")
    fa = accuracy_curve(a, agent, c, x_grid)
    fb = fa if b == a else accuracy_curve(b, agent, c, x_grid)
    diff = fb - fa
    b_over_a = bool(np.all(diff <= tol))
    a_over_b = bool(np.all(diff >= -tol))
    return ComparisonResult(
        verdict=Verdict.from_relations(b_over_a, a_over_b),
        b_over_a=b_over_a,
        a_over_b=a_over_b,
        details={
            "grid_points": len(x_grid),
            "max_fb_minus_fa": float(diff.max()),
            "min_fb_minus_fa": float(diff.min()),
        },
    )


def vector_utility(task: Task, agent: Agent, c: CostSpec) -> tuple[float, float]:
    """``(kappa, min(phi_w(kappa), phi))``; coordinatewise order matches the complexity order."""
    if is_trivial(task, agent, c):
        raise DomainError(
            f"task {task} is trivial (kappa <= kappa_w={kappa_w(agent, c):.17g} or phi = 0); "
            "the vector representation covers non-trivial tasks only"
        )
    return (task.kappa, _cap(task, agent, c))


def vector_dominates(vb: tuple[float, float], va: tuple[float, float]) -> bool:
    return vb[0] >= va[0] and vb[1] >= va[1] - TIE_TOL
