"""Command-line interface.

Exit codes: 0 success, 1 precondition or domain failure, 2 bad arguments,
3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, TextIO

from . import analysis
from .config import ENV_VAR, RunConfig, load_config
from .errors import DomainError, InattError
from .figures import REFERENCE_TASKS, FigureData, build_figure, fmt, write_csv
from .model import Agent, CostSpec, Task
from .oracle import oracle_solve
from .order import compare, compare_by_sweep
from .solver import accuracy_from_cutoff, effort, effort_from_cutoff, optimal_cutoff, optimal_signal
from .thresholds import kappa_w, phi_w

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration (overrides the config file)")
    g.add_argument("--config", help=f"key=value config file (default: ${ENV_VAR})")
    g.add_argument("--w", type=float, help="intrinsic incentive w >= 0")
    g.add_argument("--utility", choices=["linear", "power"])
    g.add_argument("--beta", type=float, help="slope of the linear utility")
    g.add_argument("--gamma", type=float, help="exponent of the power utility")
    g.add_argument("--x0", type=float, help="lowest reward")
    g.add_argument("--cost", choices=["quadratic", "shannon", "tsallis", "tabulated"])
    g.add_argument("--sigma", type=float, help="Tsallis index")
    g.add_argument("--cost-table", help="q,c CSV for a tabulated cost")
    g.add_argument("--x-min", type=float)
    g.add_argument("--x-max", type=float)
    g.add_argument("--x-count", type=int)
    g.add_argument("--x-spacing", choices=["linear", "geometric"])
    g.add_argument("--grid-n", type=int, help="posterior grid size (odd, >= 101)")
    g.add_argument("--seed", type=int)
    g.add_argument("--samples", type=int)
    g.add_argument("--out", help="output directory; files are written here instead of stdout")
    g.add_argument("--workers", type=int, help="worker threads for grid sweeps")
    return p


CONFIG_KEYS = [
    "w", "utility", "beta", "gamma", "x0", "cost", "sigma", "cost_table", "x_min", "x_max",
    "x_count", "x_spacing", "grid_n", "seed", "samples", "out", "workers",
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inatt", description="Rational-inattention complexity of binary guessing tasks."
    )
    common = _common()
    sub = parser.add_subparsers(dest="command", required=True)

    def task_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--phi", type=float, required=True, help="ex-ante uncertainty in [0, 1]")
        p.add_argument("--kappa", type=float, required=True, help="difficulty > 0")

    p = sub.add_parser("solve", parents=[common], help="optimal signal for one task and reward")
    task_args(p)
    p.add_argument("--x", type=float, help="extrinsic reward (default x0)")
    p.add_argument("--oracle", action="store_true", help="also report the grid-concavification oracle")

    for name, what in (("accuracy-curve", "expected accuracy"), ("effort-curve", "effort")):
        p = sub.add_parser(name, parents=[common], help=f"{what} over the reward grid")
        task_args(p)
        p.add_argument("--svg", action="store_true", help="also render an SVG next to the CSV")

    p = sub.add_parser("compare", parents=[common], help="is task b more complex than task a")
    p.add_argument("--a-phi", type=float, required=True)
    p.add_argument("--a-kappa", type=float, required=True)
    p.add_argument("--b-phi", type=float, required=True)
    p.add_argument("--b-kappa", type=float, required=True)
    p.add_argument("--sweep", action="store_true", help="also compare accuracies over the reward grid")

    p = sub.add_parser("thresholds", parents=[common], help="phi_w over a difficulty grid")
    p.add_argument("--kappa-grid", default="0.05:4:80", help="lo:hi:count (default 0.05:4:80)")
    p.add_argument("--svg", action="store_true")

    p = sub.add_parser("construct-dominating", parents=[common],
                       help="more complex task with less effort at every reward")
    task_args(p)

    p = sub.add_parser("reversal-witness", parents=[common],
                       help="rewards where the effort ranking of two difficulties flips")
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--kappa2", type=float, required=True)
    p.add_argument("--search-bound", type=float, default=1000.0)

    p = sub.add_parser("figure", parents=[common], help="data (and optional SVG) for figures 1-5")
    p.add_argument("number", type=int, choices=[1, 2, 3, 4, 5])
    p.add_argument("--u1", type=float, default=0.5, help="utility of a correct guess (figures 1-2)")
    p.add_argument("--kappa", type=float, default=1.0, help="difficulty (figures 1-2)")
    p.add_argument("--ref-phi", type=float, help="reference task uncertainty (figures 3-5)")
    p.add_argument("--ref-kappa", type=float, help="reference task difficulty (figures 3-5)")
    p.add_argument("--svg", action="store_true", help="render an SVG next to the CSV (needs --out)")

    sub.add_parser("verify", parents=[common], help="seeded property suite")
    return parser


# -- output helpers ----------------------------------------------------------


def _emit(data: FigureData, cfg: RunConfig, stem: str, stdout: TextIO, svg: bool = False) -> None:
    if cfg.out is None:
        if svg:
            raise DomainError("--svg needs --out DIR")
        write_csv(data, stdout)
        return
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{stem}.csv"
    with open(csv_path, "w", newline="") as fh:
        write_csv(data, fh)
    stdout.write(f"wrote {csv_path}\n")
    if svg:
        from .plotting import render

        svg_path = render(data, out / f"{stem}.svg")
        stdout.write(f"wrote {svg_path}\n")


def _pairs(pairs, stdout: TextIO, prefix: str = "") -> None:
    for k, v in pairs:
        stdout.write(f"{prefix}{k}={fmt(v)}\n")


def _pmap(fn, items, workers: int) -> list:
    items = list(items)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


# -- commands ----------------------------------------------------------------


def cmd_solve(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    task = Task(args.phi, args.kappa)
    x = agent.x0 if args.x is None else args.x
    report = optimal_signal(x, agent, task, c)
    pairs = [("phi", task.phi), ("kappa", task.kappa), ("x", x)] + report.as_pairs()
    if args.oracle:
        o = oracle_solve(x, agent, task, c, cfg.grid_n)
        pairs += [(f"oracle_{k}", v) for k, v in o.as_pairs()]
    if cfg.out:
        _emit(FigureData("solve", ["key", "value"], pairs, [("cost", c.label), ("w", agent.w)]), cfg, "solve", stdout)
    else:
        _pairs(pairs, stdout)
    return EXIT_OK


def _curve(args, cfg: RunConfig, stdout: TextIO, kind: str) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    task = Task(args.phi, args.kappa)

    def row(x: float):
        u = agent.u1(x)
        d = optimal_cutoff(u, task.kappa, c)
        y = accuracy_from_cutoff(d, task.phi) if kind == "accuracy" else effort_from_cutoff(d, task, c)
        return (x, u, d, y)

    rows = _pmap(row, cfg.rewards(), cfg.workers)
    data = FigureData(
        f"{kind}_curve", ["x", "u1", "cutoff", kind], rows,
        [("cost", c.label), ("w", agent.w), ("utility", agent.family), ("phi", task.phi), ("kappa", task.kappa)],
    )
    _emit(data, cfg, f"{kind}_curve", stdout, args.svg)
    return EXIT_OK


def cmd_compare(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    a, b = Task(args.a_phi, args.a_kappa), Task(args.b_phi, args.b_kappa)
    result = compare(a, b, agent, c)
    stdout.write(f"{result.verdict}\n")
    _pairs([("b_over_a", result.b_over_a), ("a_over_b", result.a_over_b)] + list(result.details.items()), stdout)
    if args.sweep:
        swept = compare_by_sweep(a, b, agent, c, cfg.rewards())
        stdout.write(f"sweep_verdict={swept.verdict}\n")
        _pairs(swept.details.items(), stdout, "sweep_")
    return EXIT_OK


def _parse_grid(text: str) -> tuple[float, float, int]:
    try:
        lo, hi, n = text.split(":")
        return float(lo), float(hi), int(n)
    except ValueError:
        raise DomainError(f"--kappa-grid expects lo:hi:count, got {text!r}") from None


def cmd_thresholds(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    lo, hi, n = _parse_grid(args.kappa_grid)
    if not (0 < lo < hi) or n < 2:
        raise DomainError("--kappa-grid needs 0 < lo < hi and count >= 2")
    kappas = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
    kw = kappa_w(agent, c)
    rows = _pmap(lambda k: (k, phi_w(agent, k, c), k <= kw), kappas, cfg.workers)
    data = FigureData("thresholds", ["kappa", "phi_w", "trivial"], rows,
                      [("cost", c.label), ("w", agent.w), ("kappa_w", kw)])
    _emit(data, cfg, "thresholds", stdout, args.svg)
    return EXIT_OK


def cmd_construct(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    task = Task(args.phi, args.kappa)
    twin = analysis.construct_dominated_effort_task(task, agent, c)
    eps = analysis.construction_epsilon(task, agent, c)
    result = analysis.verify_effort_dominance(task, twin, agent, c, cfg.rewards(), epsilon=eps)
    meta = [("cost", c.label), ("w", agent.w), ("source_phi", task.phi), ("source_kappa", task.kappa),
            ("constructed_phi", twin.phi), ("constructed_kappa", twin.kappa), ("epsilon", eps),
            ("verdict", result.verdict)]
    if isinstance(result, analysis.DominanceFailure):
        meta += [("certified", False), ("reason", result.reason)]
        rows = list(zip(result.rewards, result.gaps))
        _emit(FigureData("construct_dominating", ["x", "gap"], rows, meta), cfg, "construct_dominating", stdout)
        return EXIT_VERIFY
    meta += [("certified", True), ("min_margin", result.min_margin)]
    data = FigureData("construct_dominating", ["x", "effort_source", "effort_constructed", "gap"],
                      result.rows(), meta)
    _emit(data, cfg, "construct_dominating", stdout)
    return EXIT_OK


def cmd_reversal(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    x, x_prime = analysis.find_effort_reversal_witness(
        args.phi, args.kappa, args.kappa2, agent, c, search_bound=args.search_bound
    )
    t1, t2 = Task(args.phi, args.kappa), Task(args.phi, args.kappa2)
    _pairs([
        ("x", x), ("x_prime", x_prime),
        ("effort_kappa_at_x", effort(x, agent, t1, c)), ("effort_kappa2_at_x", effort(x, agent, t2, c)),
        ("effort_kappa_at_x_prime", effort(x_prime, agent, t1, c)),
        ("effort_kappa2_at_x_prime", effort(x_prime, agent, t2, c)),
    ], stdout)
    return EXIT_OK


def cmd_figure(args, cfg: RunConfig, stdout: TextIO) -> int:
    agent, c = cfg.agent(), cfg.cost_spec()
    n = args.number
    if n in (1, 2):
        kwargs = {"u1": args.u1, "kappa": args.kappa}
        if n == 1:
            kwargs["grid_n"] = cfg.grid_n
    else:
        kwargs = {}
        if args.ref_phi is not None or args.ref_kappa is not None:
            ref = REFERENCE_TASKS[n]
            kwargs["reference"] = Task(
                ref.phi if args.ref_phi is None else args.ref_phi,
                ref.kappa if args.ref_kappa is None else args.ref_kappa,
            )
    data = build_figure(n, c, agent, workers=cfg.workers, **kwargs)
    _emit(data, cfg, f"figure{n}", stdout, args.svg)
    return EXIT_OK


def run_verification(cfg: RunConfig) -> list[analysis.PropertyReport]:
    """Every seeded property suite, in a fixed order."""
    costs = [CostSpec.quadratic(), CostSpec.shannon()]
    extra = cfg.cost_spec()
    if extra.label not in {c.label for c in costs}:
        costs.append(extra)
    seed, n = cfg.seed, cfg.samples
    jobs: list[Callable[[], analysis.PropertyReport]] = [
        lambda: analysis.check_sweep_agreement([0.0, 1.0, 2.0], costs, n, seed),
    ]
    for w, wp in ((0.0, 1.0), (1.0, 2.0)):
        for c in costs:
            jobs.append(lambda w=w, wp=wp, c=c: analysis.check_order_properties(w, wp, c, n, seed))
    dominance_costs = costs + [CostSpec.tsallis(2.0)]
    jobs.append(lambda: analysis.check_effort_dominance(
        [Agent(0.5), Agent(1.0), Agent(2.0)], dominance_costs, n // 5, seed)[0])
    jobs.append(lambda: analysis.check_reversal_witnesses(
        [Agent(1.0), Agent(2.0)], costs, n // 20, seed))
    return _pmap(lambda job: job(), jobs, cfg.workers)


def cmd_verify(args, cfg: RunConfig, stdout: TextIO) -> int:
    reports = run_verification(cfg)
    rows = [(r.name, prop, detail) for r in reports for prop, detail in r.violations]
    meta = [("seed", cfg.seed), ("samples", cfg.samples)] + [("summary", r.summary()) for r in reports]
    ok = all(r.passed for r in reports)
    meta.append(("result", "PASS" if ok else "FAIL"))
    _emit(FigureData("verify", ["suite", "property", "detail"], rows, meta), cfg, "verify", stdout)
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "solve": cmd_solve,
    "accuracy-curve": lambda a, c, s: _curve(a, c, s, "accuracy"),
    "effort-curve": lambda a, c, s: _curve(a, c, s, "effort"),
    "compare": cmd_compare,
    "thresholds": cmd_thresholds,
    "construct-dominating": cmd_construct,
    "reversal-witness": cmd_reversal,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config, {k: getattr(args, k) for k in CONFIG_KEYS})
        return COMMANDS[args.command](args, cfg, stdout)
    except InattError as exc:
        print(f"inatt {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        if stdout is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
