"""The eight acceptance criteria, each at its stated tolerance.

Every criterion logs one PASS/FAIL line; the lines are repeated in the
"acceptance criteria" section of the pytest terminal summary.
"""

import io
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from closed_forms import quadratic_cutoff, quadratic_kappa_w, quadratic_phi_w
from inatt import Agent, CostSpec, Task, Verdict, kappa_w, optimal_cutoff, phi_w, solve_prior
from inatt.analysis import (
    check_effort_dominance,
    check_order_properties,
    check_reversal_witnesses,
    check_sweep_agreement,
    construct_dominated_effort_task,
    verify_effort_dominance,
)
from inatt.cli import main
from inatt.figures import figure2
from inatt.oracle import concave_envelope, oracle_solve_prior, payoff_samples

SEED = 42


@contextmanager
def criterion(log, number, title):
    notes = []
    try:
        yield notes
    except BaseException as exc:
        log(f"[{number}] FAIL {title}: {type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
        raise
    log(f"[{number}] PASS {title}" + (f" ({'; '.join(notes)})" if notes else ""))


def test_1_first_figure(acceptance_log, quad):
    with criterion(acceptance_log, 1, "figure 1: delta=0.25, flat level 9/16") as notes:
        start = time.perf_counter()
        delta = optimal_cutoff(0.5, 1.0, quad)
        level = solve_prior(0.5, 1.0, quad, 0.5).envelope
        grid = oracle_solve_prior(0.5, 1.0, quad, 0.5, grid_n=4001)
        env = concave_envelope(payoff_samples(0.5, 1.0, quad, 4001))
        elapsed = time.perf_counter() - start
        assert abs(delta - 0.25) <= 1e-9
        assert abs(level - 0.5625) <= 1e-9
        assert abs(grid.cutoff - 0.25) <= 2.5e-4
        assert abs(grid.envelope - 0.5625) <= 2.5e-4
        assert abs(env.at(0.5) - 0.5625) <= 2.5e-4
        assert elapsed < 1.0
        notes.append(f"oracle cutoff err={abs(grid.cutoff - 0.25):.2e}, runtime={elapsed:.3f}s")


def test_2_second_figure(acceptance_log, quad):
    with criterion(acceptance_log, 2, "figure 2: accuracy polyline vertices") as notes:
        delta = optimal_cutoff(0.5, 1.0, quad)
        vertices = [(0.0, 1.0), (delta, 1.0 - delta), (1.0 - delta, 1.0 - delta), (1.0, 1.0)]
        expected = [(0.0, 1.0), (0.25, 0.75), (0.75, 0.75), (1.0, 1.0)]
        for (x, y), (ex, ey) in zip(vertices, expected):
            assert abs(x - ex) <= 1e-9 and abs(y - ey) <= 1e-9
        for x, y in vertices:
            assert abs(solve_prior(0.5, 1.0, quad, x).accuracy - y) <= 1e-9
        data = figure2(quad, 0.5, 1.0, points=101)
        p = np.array(data.column("p"), dtype=float)
        acc = np.array(data.column("accuracy"), dtype=float)
        poly = np.interp(p, [v[0] for v in expected], [v[1] for v in expected])
        dev = float(np.max(np.abs(acc - poly)))
        assert dev <= 1e-6
        notes.append(f"max deviation={dev:.2e} on {len(p)} priors")


def test_3_quadratic_closed_forms(acceptance_log, quad):
    with criterion(acceptance_log, 3, "quadratic closed forms on a 20x20 (u1, kappa) grid") as notes:
        us = np.linspace(0.0, 4.0, 20)
        ks = np.linspace(0.2, 5.0, 20)
        worst_delta = worst_phi = worst_grid = 0.0
        for u in map(float, us):
            agent = Agent(w=u)
            assert abs(kappa_w(agent, quad) - quadratic_kappa_w(u)) <= 1e-10
            for k in map(float, ks):
                worst_delta = max(worst_delta, abs(optimal_cutoff(u, k, quad) - quadratic_cutoff(u, k)))
                worst_phi = max(worst_phi, abs(phi_w(agent, k, quad) - quadratic_phi_w(u, k)))
                # grid concavification as a second, independent oracle
                g = oracle_solve_prior(u, k, quad, 0.5, grid_n=1001)
                worst_grid = max(worst_grid, abs(g.cutoff - quadratic_cutoff(u, k)))
        assert worst_delta <= 1e-10
        assert worst_phi <= 1e-10
        assert worst_grid <= 2.0 / 1001
        # the threshold curve and its kink at kappa_w = w = 1
        one = Agent(w=1.0)
        assert kappa_w(one, quad) == 1.0
        assert phi_w(one, 1.0, quad) == 0.0 and phi_w(one, 2.0, quad) == pytest.approx(0.5, abs=1e-10)
        notes.append(f"max |delta err|={worst_delta:.1e}, max |phi_w err|={worst_phi:.1e}, grid oracle={worst_grid:.1e}")


def test_4_closed_form_matches_sweep(acceptance_log):
    with criterion(acceptance_log, 4, "compare vs compare_by_sweep on 1000 non-trivial pairs") as notes:
        start = time.perf_counter()
        report = check_sweep_agreement([0.0, 1.0, 2.0], [CostSpec.quadratic(), CostSpec.shannon()], 1000, SEED)
        elapsed = time.perf_counter() - start
        assert report.checked["pairs"] == 1000
        assert report.violation_count() == 0, report.violations[:5]
        assert elapsed < 10.0
        notes.append(f"agreement 1000/1000, runtime={elapsed:.2f}s")


def test_5_order_properties(acceptance_log):
    with criterion(acceptance_log, 5, "order properties on 1000 triples per (w, w')") as notes:
        start = time.perf_counter()
        reports = [
            check_order_properties(w, wp, c, 1000, SEED)
            for w, wp in ((0.0, 1.0), (1.0, 2.0))
            for c in (CostSpec.quadratic(), CostSpec.shannon())
        ]
        elapsed = time.perf_counter() - start
        for r in reports:
            for prop in ("transitivity", "inclusion", "no-strict-reversal", "kappa-necessity"):
                assert r.violation_count(prop) == 0, (r.name, prop, r.violations[:3])
            assert r.witnesses.get("incomparable", 0) >= 1, r.name
            assert r.passed, r.summary()
        assert elapsed < 10.0
        witnesses = sum(r.witnesses["incomparable"] for r in reports)
        notes.append(f"0 violations, {witnesses} incomparable witnesses, runtime={elapsed:.2f}s")


def test_6_more_complex_less_effort(acceptance_log, quad, agent1):
    with criterion(acceptance_log, 6, "more complex yet less effort on 200 eligible tasks") as notes:
        twin = construct_dominated_effort_task(Task(0.75, 2.0), agent1, quad)
        assert abs(twin.phi - 0.5) <= 1e-9 and abs(twin.kappa - 2.375) <= 1e-9
        worked = verify_effort_dominance(Task(0.75, 2.0), twin, agent1, quad)
        assert worked.verdict is Verdict.MORE_COMPLEX and worked.min_margin > 0
        costs = [CostSpec.quadratic(), CostSpec.shannon(), CostSpec.tsallis(2.0)]
        report, margin = check_effort_dominance([Agent(0.5), Agent(1.0), Agent(2.0)], costs, 200, SEED)
        assert report.checked["tasks"] == 200
        assert report.passed, report.violations[:3]
        assert margin > 0
        notes.append(f"worked instance -> ({twin.phi:g}, {twin.kappa:g}), min margin={margin:.3e}")


def test_7_effort_reversal(acceptance_log):
    with criterion(acceptance_log, 7, "effort-reversal witnesses for 50 configurations") as notes:
        report = check_reversal_witnesses(
            [Agent(1.0), Agent(2.0)], [CostSpec.quadratic(), CostSpec.shannon()], 50, SEED
        )
        assert report.checked["configs"] == 50
        assert report.passed, report.violations[:3]
        notes.append("50/50 witnesses, single sign change each")


def _run_cli(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


def _figure_outputs(root: Path, workers: int) -> dict[str, bytes]:
    files = {}
    for n in (1, 2, 3, 4, 5):
        out = root / f"w{workers}"
        code, stdout = _run_cli(["figure", str(n), "--out", str(out), "--svg", "--workers", str(workers)])
        assert code == 0
        _, plain = _run_cli(["figure", str(n), "--workers", str(workers)])
        files[f"figure{n}.stdout"] = plain.encode()
        for suffix in ("csv", "svg"):
            files[f"figure{n}.{suffix}"] = (out / f"figure{n}.{suffix}").read_bytes()
    return files


def test_8_determinism(acceptance_log, tmp_path):
    with criterion(acceptance_log, 8, "byte-identical verify and figure outputs") as notes:
        runs = []
        for i, workers in enumerate((1, 1, 8)):
            code, text = _run_cli(["verify", "--seed", str(SEED), "--workers", str(workers)])
            assert code == 0
            runs.append(text)
        assert runs[0] == runs[1], "verify differs between consecutive runs"
        assert runs[0] == runs[2], "verify differs between 1 and 8 workers"

        first = _figure_outputs(tmp_path / "a", 1)
        second = _figure_outputs(tmp_path / "b", 1)
        threaded = _figure_outputs(tmp_path / "c", 8)
        for name in first:
            assert first[name] == second[name], f"{name} differs between consecutive runs"
            assert first[name] == threaded[name], f"{name} differs between 1 and 8 workers"
        notes.append(f"verify x3 and {len(first)} figure artifacts identical")
