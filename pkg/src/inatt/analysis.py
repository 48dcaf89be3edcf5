"""Constructive results about complexity and effort, plus seeded property checks.

* :func:`construct_dominated_effort_task` builds, for a task where information
  is acquired at the lowest reward, a strictly more complex task that costs
  less effort at every reward.
* :func:`find_effort_reversal_witness` locates rewards at which the effort
  ranking of two difficulties flips.
* :func:`check_order_properties` samples tasks and counts violations of the
  structural properties of the complexity order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, PreconditionError, SearchError
from .model import Agent, CostSpec, Task, canonical_prior
from .order import (
    Verdict,
    compare,
    compare_by_sweep,
    default_reward_grid,
    is_trivial,
    vector_dominates,
    vector_utility,
)
from .solver import effort, optimal_cutoff
from .thresholds import kappa_w, phi_w, phi_w_inverse

SIGN_TOL = 1e-9


# -- more complex, less effort ----------------------------------------------


def construction_epsilon(task: Task, agent: Agent, c: CostSpec) -> float:
    """Effort saved at every reward by dropping the uncertainty of ``task`` to ``phi_w(kappa)``."""
    p = canonical_prior(task.phi)
    p_low = canonical_prior(phi_w(agent, task.kappa, c))
    return task.kappa * (c.value(p_low) - c.value(p))


def construct_dominated_effort_task(task: Task, agent: Agent, c: CostSpec) -> Task:
    """A task strictly more complex than ``task`` that induces less effort at every reward.

    The new uncertainty is ``phi_w(kappa)``, which saves ``eps`` in effort; the
    new difficulty ``kappa + eps / (c(0) - c(1/2))`` adds less than ``eps``
    back at any reward.
    """
    if is_trivial(task, agent, c):
        raise PreconditionError(
            f"task {task} is trivial (kappa_w={kappa_w(agent, c):.17g}); it has no more complex twin"
        )
    pw = phi_w(agent, task.kappa, c)
    if not task.phi > pw:
        raise PreconditionError(
            f"need phi > phi_w(kappa); got phi={task.phi!r} <= phi_w({task.kappa!r})={pw!r}"
        )
    span = c.value(0.0) - c.value(0.5)
    if not (math.isfinite(span) and span > 0):
        raise PreconditionError(f"c(0) - c(1/2) must be finite and positive, got {span!r}")
    eps = construction_epsilon(task, agent, c)
    return Task(phi=pw, kappa=task.kappa + eps / span)


@dataclass(frozen=True)
class DominanceCertificate:
    """Evidence that ``constructed`` is strictly more complex than ``source`` yet cheaper everywhere."""

    source: Task
    constructed: Task
    epsilon: float | None
    rewards: tuple[float, ...]
    effort_source: tuple[float, ...]
    effort_constructed: tuple[float, ...]
    verdict: Verdict

    @property
    def gaps(self) -> tuple[float, ...]:
        return tuple(a - b for a, b in zip(self.effort_source, self.effort_constructed))

    @property
    def min_margin(self) -> float:
        return min(self.gaps)

    def rows(self) -> list[tuple[float, float, float, float]]:
        return list(zip(self.rewards, self.effort_source, self.effort_constructed, self.gaps))


@dataclass(frozen=True)
class DominanceFailure:
    source: Task
    constructed: Task
    reason: str
    rewards: tuple[float, ...]
    gaps: tuple[float, ...]
    verdict: Verdict

    @property
    def min_margin(self) -> float:
        return min(self.gaps)


def effort_curve(task: Task, agent: Agent, c: CostSpec, rewards: Sequence[float]) -> tuple[float, ...]:
    return tuple(effort(x, agent, task, c) for x in rewards)


def verify_effort_dominance(
    a: Task,
    b: Task,
    agent: Agent,
    c: CostSpec,
    x_grid: Sequence[float] | None = None,
    epsilon: float | None = None,
) -> DominanceCertificate | DominanceFailure:
    """Certify that ``b`` is strictly more complex than ``a`` and strictly cheaper on ``x_grid``."""
    rewards = tuple(default_reward_grid(agent) if x_grid is None else x_grid)
    if not rewards:
        raise DomainError("reward grid is empty")
    verdict = compare(a, b, agent, c).verdict
    ea = effort_curve(a, agent, c, rewards)
    eb = ea if a == b else effort_curve(b, agent, c, rewards)
    gaps = tuple(x - y for x, y in zip(ea, eb))
    if verdict is not Verdict.MORE_COMPLEX:
        return DominanceFailure(a, b, f"verdict is {verdict}, not MoreComplex", rewards, gaps, verdict)
    bad = [x for x, g in zip(rewards, gaps) if not g > 0]
    if bad:
        return DominanceFailure(
            a, b, f"effort gap <= 0 at {len(bad)} rewards, first x={bad[0]:.17g}", rewards, gaps, verdict
        )
    return DominanceCertificate(a, b, epsilon, rewards, ea, eb, verdict)


# -- effort reversal along difficulty ---------------------------------------


def reversal_floor(agent: Agent, phi: float, c: CostSpec) -> float:
    """Difficulty above which tasks with uncertainty ``phi`` acquire nothing at ``x0``.

    With ``w = 0`` nothing is ever acquired at ``x0``, so every difficulty qualifies.
    """
    if agent.w == 0:
        return 0.0
    return phi_w_inverse(agent, phi, c)


def reversal_grid(
    agent: Agent, search_bound: float = 1000.0, per_decade: int = 64, decades: int = 4
) -> tuple[float, ...]:
    """``x0`` followed by rewards geometric in ``x - x0`` up to ``search_bound``."""
    if not search_bound > agent.x0:
        raise DomainError(f"search_bound={search_bound!r} must exceed x0={agent.x0!r}")
    top = search_bound - agent.x0
    k = np.arange(decades * per_decade + 1)
    offsets = top * 10.0 ** (k / per_decade - decades)
    return (agent.x0,) + tuple(float(agent.x0 + o) for o in offsets)


def effort_difference(
    phi: float, kappa: float, kappa2: float, agent: Agent, c: CostSpec, rewards: Sequence[float]
) -> np.ndarray:
    """``effort(x, (phi, kappa)) - effort(x, (phi, kappa2))`` along ``rewards``."""
    t1, t2 = Task(phi, kappa), Task(phi, kappa2)
    return np.array([effort(x, agent, t1, c) - effort(x, agent, t2, c) for x in rewards])


def sign_changes(values: Sequence[float], tol: float = SIGN_TOL) -> int:
    signs = [1 if v > tol else -1 for v in values if abs(v) > tol]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def find_effort_reversal_witness(
    phi: float,
    kappa: float,
    kappa2: float,
    agent: Agent,
    c: CostSpec,
    search_bound: float = 1000.0,
    per_decade: int = 64,
    decades: int = 4,
) -> tuple[float, float]:
    """Rewards ``x < x'`` where the easier task costs more effort at ``x`` and less at ``x'``."""
    if not (0.0 < phi < 1.0):
        raise PreconditionError(f"phi={phi!r} must lie in (0, 1)")
    floor = reversal_floor(agent, phi, c)
    if not (kappa2 > kappa > floor):
        raise PreconditionError(
            f"need kappa2 > kappa > kappa_phi={floor:.17g}; got kappa={kappa!r}, kappa2={kappa2!r}"
        )
    rewards = reversal_grid(agent, search_bound, per_decade, decades)
    diff = effort_difference(phi, kappa, kappa2, agent, c, rewards)
    first = next((i for i, d in enumerate(diff) if d > SIGN_TOL), None)
    if first is not None:
        later = next((j for j in range(first + 1, len(diff)) if diff[j] < -SIGN_TOL), None)
        if later is not None:
            return rewards[first], rewards[later]
    raise SearchError(
        f"no effort reversal for phi={phi!r}, kappa={kappa!r}, kappa2={kappa2!r} "
        f"on {len(rewards)} rewards in [{rewards[0]:.6g}, {rewards[-1]:.6g}]"
    )


# -- seeded property harness ------------------------------------------------

PHI_LATTICE = tuple(round(0.1 * i, 10) for i in range(11))
KAPPA_STEP = 0.25


def lattice_task(rng: np.random.Generator, kappa_floor: float, kappa_steps: int, phis=PHI_LATTICE) -> Task:
    """Random task on a lattice; lattice ties exercise the weak-inequality boundaries."""
    phi = float(phis[rng.integers(len(phis))])
    kappa = kappa_floor + KAPPA_STEP * int(rng.integers(1, kappa_steps + 1))
    return Task(phi, kappa)


@dataclass
class PropertyReport:
    """Counts of sampled checks and the offending tuples of any violation."""

    name: str
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[tuple[str, str]] = field(default_factory=list)
    witnesses: dict[str, int] = field(default_factory=dict)
    required_witnesses: tuple[str, ...] = ()

    def count(self, key: str, n: int = 1) -> None:
        self.checked[key] = self.checked.get(key, 0) + n

    def witness(self, key: str) -> None:
        self.witnesses[key] = self.witnesses.get(key, 0) + 1

    def violate(self, prop: str, detail: str) -> None:
        self.violations.append((prop, detail))

    def violation_count(self, prop: str | None = None) -> int:
        return sum(1 for p, _ in self.violations if prop is None or p == prop)

    @property
    def missing_witnesses(self) -> list[str]:
        return [k for k in self.required_witnesses if self.witnesses.get(k, 0) == 0]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.missing_witnesses

    def summary(self) -> str:
        checked = " ".join(f"{k}={v}" for k, v in sorted(self.checked.items()))
        wit = " ".join(f"{k}={v}" for k, v in sorted(self.witnesses.items()))
        status = "PASS" if self.passed else "FAIL"
        missing = f" missing_witnesses={','.join(self.missing_witnesses)}" if self.missing_witnesses else ""
        return (
            f"{status} {self.name}: violations={len(self.violations)} checked[{checked}] "
            f"witnesses[{wit}]{missing}"
        )


def _t(task: Task) -> str:
    return f"({task.phi:.17g},{task.kappa:.17g})"


def check_order_properties(
    w: float,
    w_prime: float,
    c: CostSpec,
    sample_size: int,
    seed: int,
    kappa_steps: int = 24,
) -> PropertyReport:
    """Sample task triples and check transitivity, incompleteness, monotonicity in ``w``,
    absence of strict reversals, shrinking of the non-trivial set and necessity of difficulty.
    """
    if not w_prime > w >= 0:
        raise DomainError(f"need w' > w >= 0, got w={w!r}, w'={w_prime!r}")
    lo, hi = Agent(w), Agent(w_prime)
    report = PropertyReport(
        name=f"order-properties w={w:g} w'={w_prime:g} cost={c.label} seed={seed}",
        required_witnesses=("incomparable",) if sample_size else (),
    )
    rng = np.random.default_rng(seed)
    for _ in range(sample_size):
        triple = [lattice_task(rng, 0.0, kappa_steps) for _ in range(3)]
        rel = {}
        for agent in (lo, hi):
            for a, b in itertools.permutations(range(3), 2):
                rel[agent.w, a, b] = compare(triple[a], triple[b], agent, c)

        for t in triple:
            report.count("nontrivial-shrinks")
            if not is_trivial(t, hi, c) and is_trivial(t, lo, c):
                report.violate("nontrivial-shrinks", f"{_t(t)} non-trivial at w'={w_prime:g} only")

        for agent in (lo, hi):
            for i, j, k in itertools.permutations(range(3), 3):
                report.count("transitivity")
                # rel[., a, b].b_over_a: task b weakly more complex than a
                if rel[agent.w, i, j].b_over_a and rel[agent.w, j, k].b_over_a and not rel[agent.w, i, k].b_over_a:
                    report.violate(
                        "transitivity",
                        f"w={agent.w:g} {_t(triple[k])}>={_t(triple[j])}>={_t(triple[i])} but not {_t(triple[k])}>={_t(triple[i])}",
                    )
            for a, b in itertools.permutations(range(3), 2):
                r = rel[agent.w, a, b]
                ta, tb = triple[a], triple[b]
                if r.verdict is Verdict.INCOMPARABLE:
                    report.witness("incomparable")
                if not is_trivial(ta, agent, c):
                    report.count("kappa-necessity")
                    if r.b_over_a and tb.kappa < ta.kappa:
                        report.violate("kappa-necessity", f"w={agent.w:g} {_t(tb)}>={_t(ta)} with lower kappa")
                if not (is_trivial(ta, agent, c) or is_trivial(tb, agent, c)):
                    report.count("vector-representation")
                    vd = vector_dominates(vector_utility(tb, agent, c), vector_utility(ta, agent, c))
                    if vd != r.b_over_a:
                        report.violate("vector-representation", f"w={agent.w:g} a={_t(ta)} b={_t(tb)}")

        for a, b in itertools.permutations(range(3), 2):
            r_lo, r_hi = rel[w, a, b], rel[w_prime, a, b]
            report.count("inclusion")
            if r_lo.b_over_a and not r_hi.b_over_a:
                report.violate("inclusion", f"{_t(triple[b])}>={_t(triple[a])} at w={w:g} but not at w'={w_prime:g}")
            report.count("no-strict-reversal")
            if r_lo.verdict is Verdict.MORE_COMPLEX and r_hi.verdict is Verdict.LESS_COMPLEX:
                report.violate("no-strict-reversal", f"a={_t(triple[a])} b={_t(triple[b])}")
    return report


def sample_nontrivial_pair(
    rng: np.random.Generator, agent: Agent, c: CostSpec, kappa_steps: int = 12
) -> tuple[Task, Task]:
    """Two lattice tasks with ``phi > 0`` and ``kappa`` on ``kappa_w + 0.25*k``."""
    kw = kappa_w(agent, c)
    phis = PHI_LATTICE[1:]
    return lattice_task(rng, kw, kappa_steps, phis), lattice_task(rng, kw, kappa_steps, phis)


def check_sweep_agreement(
    ws: Sequence[float], costs: Sequence[CostSpec], sample_size: int, seed: int
) -> PropertyReport:
    """Closed-form verdicts against reward-sweep verdicts on random non-trivial pairs.

    ``sample_size`` pairs are spread round-robin over every ``(w, cost)`` combination.
    """
    report = PropertyReport(name=f"sweep-agreement samples={sample_size} seed={seed}")
    rng = np.random.default_rng(seed)
    combos = [(Agent(w), c) for w in ws for c in costs]
    grids = {id(agent): default_reward_grid(agent) for agent, _ in combos}
    for i in range(sample_size):
        agent, c = combos[i % len(combos)]
        a, b = sample_nontrivial_pair(rng, agent, c)
        closed = compare(a, b, agent, c).verdict
        swept = compare_by_sweep(a, b, agent, c, grids[id(agent)]).verdict
        report.count("pairs")
        report.witness(str(closed))
        if closed is not swept:
            report.violate(
                "sweep-agreement",
                f"w={agent.w:g} cost={c.label} a={_t(a)} b={_t(b)} closed={closed} sweep={swept}",
            )
    return report


def sample_eligible_task(rng: np.random.Generator, agent: Agent, c: CostSpec) -> Task:
    """Non-trivial task with ``phi > phi_w(kappa)``; requires ``w > 0``."""
    kw = kappa_w(agent, c)
    while True:
        kappa = kw + float(rng.uniform(0.05, 4.0))
        pw = phi_w(agent, kappa, c)
        if pw < 1.0 - 1e-6:
            phi = float(rng.uniform(pw, 1.0))
            if phi > pw + 1e-6:
                return Task(phi, kappa)


def check_effort_dominance(
    agents: Sequence[Agent], costs: Sequence[CostSpec], sample_size: int, seed: int
) -> tuple[PropertyReport, float]:
    """Build the more-complex/less-effort twin for random eligible tasks and verify it.

    Returns the report and the smallest effort margin seen.
    """
    report = PropertyReport(name=f"effort-dominance samples={sample_size} seed={seed}")
    rng = np.random.default_rng(seed)
    combos = [(a, c) for a in agents if a.w > 0 for c in costs]
    margin = math.inf
    for i in range(sample_size):
        agent, c = combos[i % len(combos)]
        task = sample_eligible_task(rng, agent, c)
        twin = construct_dominated_effort_task(task, agent, c)
        result = verify_effort_dominance(
            task, twin, agent, c, epsilon=construction_epsilon(task, agent, c)
        )
        report.count("tasks")
        if isinstance(result, DominanceFailure):
            report.violate("effort-dominance", f"w={agent.w:g} cost={c.label} a={_t(task)} b={_t(twin)}: {result.reason}")
        else:
            margin = min(margin, result.min_margin)
    return report, margin


def sample_reversal_config(
    rng: np.random.Generator, agent: Agent, c: CostSpec
) -> tuple[float, float, float]:
    phi = float(rng.uniform(0.1, 0.9))
    floor = reversal_floor(agent, phi, c)
    base = max(floor, 0.1)
    kappa = base * (1.0 + float(rng.uniform(0.05, 1.0)))
    kappa2 = kappa * (1.0 + float(rng.uniform(0.05, 1.0)))
    return phi, kappa, kappa2


def check_reversal_witnesses(
    agents: Sequence[Agent], costs: Sequence[CostSpec], sample_size: int, seed: int
) -> PropertyReport:
    """Find effort-reversal witnesses and check that the effort gap crosses zero once."""
    report = PropertyReport(name=f"effort-reversal samples={sample_size} seed={seed}")
    rng = np.random.default_rng(seed)
    combos = [(a, c) for a in agents for c in costs]
    for i in range(sample_size):
        agent, c = combos[i % len(combos)]
        phi, k1, k2 = sample_reversal_config(rng, agent, c)
        tag = f"w={agent.w:g} cost={c.label} phi={phi:.17g} kappa={k1:.17g} kappa2={k2:.17g}"
        report.count("configs")
        try:
            find_effort_reversal_witness(phi, k1, k2, agent, c)
        except SearchError as exc:
            report.violate("witness", f"{tag}: {exc}")
            continue
        diff = effort_difference(phi, k1, k2, agent, c, reversal_grid(agent))
        n = sign_changes(diff)
        if n != 1:
            report.violate("single-crossing", f"{tag}: {n} sign changes")
    return report
