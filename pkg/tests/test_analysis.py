import numpy as np
import pytest

from closed_forms import quadratic_c
from inatt import Agent, CostSpec, PreconditionError, SearchError, Task, Verdict, effort
from inatt.analysis import (
    DominanceCertificate,
    DominanceFailure,
    check_effort_dominance,
    check_order_properties,
    check_reversal_witnesses,
    construct_dominated_effort_task,
    construction_epsilon,
    effort_difference,
    find_effort_reversal_witness,
    reversal_grid,
    sign_changes,
    verify_effort_dominance,
)
from inatt.order import default_reward_grid
from inatt.thresholds import phi_w_inverse


def test_construction_worked_example(quad, agent1):
    task = Task(0.75, 2.0)
    assert construction_epsilon(task, agent1, quad) == pytest.approx(0.09375, abs=1e-12)
    twin = construct_dominated_effort_task(task, agent1, quad)
    assert twin.phi == pytest.approx(0.5, abs=1e-12)
    assert twin.kappa == pytest.approx(2.375, abs=1e-10)


def test_construction_from_uniform_prior(quad, agent1):
    # eps = 2 * (c(0.25) - c(0.5)) = 0.125, so kappa' = 2 + 0.125 / 0.25
    eps = 2.0 * (quadratic_c(0.25) - quadratic_c(0.5))
    twin = construct_dominated_effort_task(Task(1.0, 2.0), agent1, quad)
    assert twin.phi == pytest.approx(0.5, abs=1e-12)
    assert twin.kappa == pytest.approx(2.0 + eps / 0.25, abs=1e-10)
    assert twin.kappa == pytest.approx(2.5, abs=1e-10)


@pytest.mark.parametrize("task", [Task(0.3, 2.0), Task(0.5, 2.0), Task(0.9, 0.5)])
def test_construction_preconditions(quad, agent1, task):
    with pytest.raises(PreconditionError):
        construct_dominated_effort_task(task, agent1, quad)


def test_construction_is_vacuous_without_incentive(quad):
    with pytest.raises(PreconditionError):
        construct_dominated_effort_task(Task(1.0, 2.0), Agent(w=0.0), quad)


def test_effort_dominance_certificate(quad, agent1):
    a = Task(0.75, 2.0)
    b = construct_dominated_effort_task(a, agent1, quad)
    cert = verify_effort_dominance(a, b, agent1, quad)
    assert isinstance(cert, DominanceCertificate)
    assert cert.verdict is Verdict.MORE_COMPLEX
    assert len(cert.rewards) == 41 and cert.min_margin > 0
    first = cert.rows()[0]
    assert first[0] == 0.0
    assert first[1] == pytest.approx(0.09375, abs=1e-12)
    assert first[2] == 0.0
    # u1 = 10 lies on the default grid only approximately; evaluate there directly
    assert effort(9.0, agent1, a, quad) == pytest.approx(0.46875, abs=1e-12)
    assert effort(9.0, agent1, b, quad) == pytest.approx(0.4453125, abs=1e-10)


def test_effort_dominance_failures(quad, agent1):
    a = Task(0.75, 2.0)
    same = verify_effort_dominance(a, a, agent1, quad)
    assert isinstance(same, DominanceFailure) and same.verdict is Verdict.EQUIVALENT
    harder = verify_effort_dominance(Task(1.0, 2.0), Task(1.0, 12.0), agent1, quad)
    assert isinstance(harder, DominanceFailure)
    assert harder.verdict is Verdict.MORE_COMPLEX
    assert harder.gaps[-1] < 0


def test_reversal_worked_example(quad, agent1):
    lo, hi = Task(0.5, 3.0), Task(0.5, 4.0)
    assert effort(0.75, agent1, lo, quad) > 0.0677 - 1e-4
    assert effort(0.75, agent1, hi, quad) == 0.0
    assert effort(7.0, agent1, lo, quad) == pytest.approx(0.5625, abs=1e-12)
    assert effort(7.0, agent1, hi, quad) == pytest.approx(0.75, abs=1e-12)
    x, x2 = find_effort_reversal_witness(0.5, 3.0, 4.0, agent1, quad)
    assert x < x2
    assert effort(x, agent1, lo, quad) > effort(x, agent1, hi, quad)
    assert effort(x2, agent1, lo, quad) < effort(x2, agent1, hi, quad)


def test_reversal_precondition(quad, agent1):
    with pytest.raises(PreconditionError, match="kappa_phi"):
        find_effort_reversal_witness(0.5, 1.5, 3.0, agent1, quad)


def test_reversal_shannon(shannon, agent1):
    floor = phi_w_inverse(agent1, 0.5, shannon)
    x, x2 = find_effort_reversal_witness(0.5, floor * 1.2, floor * 1.6, agent1, shannon)
    assert x < x2


def test_reversal_reports_scanned_range(quad, agent1):
    with pytest.raises(SearchError, match=r"on \d+ rewards in \["):
        find_effort_reversal_witness(0.5, 3.0, 4.0, agent1, quad, search_bound=0.5)


def test_effort_gap_crosses_once(quad, agent1):
    diff = effort_difference(0.5, 3.0, 4.0, agent1, quad, reversal_grid(agent1))
    assert sign_changes(diff) == 1


def test_sign_changes():
    assert sign_changes([1.0, 0.0, -1.0, 1e-12, -2.0]) == 1
    assert sign_changes([1.0, -1.0, 1.0]) == 2
    assert sign_changes([]) == 0


@pytest.mark.parametrize(
    "w, w_prime, c", [(1.0, 2.0, CostSpec.quadratic()), (0.0, 1.0, CostSpec.shannon())], ids=["quadratic", "shannon"]
)
def test_order_properties_hold(w, w_prime, c):
    report = check_order_properties(w, w_prime, c, sample_size=1000, seed=42)
    assert report.passed, report.summary()
    assert report.violations == []
    assert report.witnesses["incomparable"] > 0


def test_empty_property_run_passes_vacuously(quad):
    report = check_order_properties(1.0, 2.0, quad, sample_size=0, seed=0)
    assert report.passed and report.checked == {}


def test_property_report_records_violations():
    from inatt.analysis import PropertyReport

    report = PropertyReport("demo", required_witnesses=("x",))
    assert not report.passed and "missing_witnesses=x" in report.summary()
    report.witness("x")
    report.violate("p", "detail")
    assert not report.passed and report.violation_count("p") == 1


def test_small_suites_pass():
    costs = [CostSpec.quadratic(), CostSpec.shannon(), CostSpec.tsallis(2.0)]
    dom, margin = check_effort_dominance([Agent(0.5), Agent(2.0)], costs, 30, seed=3)
    assert dom.passed and margin > 0
    rev = check_reversal_witnesses([Agent(1.0)], costs[:2], 10, seed=3)
    assert rev.passed, rev.summary()


@pytest.mark.parametrize("c", [CostSpec.quadratic(), CostSpec.shannon(), CostSpec.tsallis(2.0)], ids=lambda c: c.label)
def test_effort_grows_with_uncertainty_while_acquiring(c):
    agent = Agent(w=1.0)
    rng = np.random.default_rng(5)
    grid = default_reward_grid(agent)
    for _ in range(20):
        kappa = float(rng.uniform(0.5, 6.0))
        for x in grid[::5]:
            curve = [effort(x, agent, Task(float(phi), kappa), c) for phi in np.linspace(0.0, 1.0, 41)]
            assert all(b >= a - 1e-12 for a, b in zip(curve, curve[1:]))
