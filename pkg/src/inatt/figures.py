"""Tabular data behind the five figures, plus CSV serialization.

Every figure is a :class:`FigureData`: ``#``-prefixed parameter lines, a header
row and data rows.  Reals are written with 17 significant digits so a CSV
round-trips exactly.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

from .analysis import construct_dominated_effort_task, construction_epsilon
from .model import Agent, CostSpec, Task
from .oracle import concave_envelope, payoff_samples
from .order import Verdict, compare, is_trivial
from .solver import optimal_cutoff, solve_prior
from .thresholds import kappa_w, phi_w

REGION_BY_VERDICT = {
    Verdict.MORE_COMPLEX: "more_complex",
    Verdict.LESS_COMPLEX: "less_complex",
    Verdict.EQUIVALENT: "equivalent",
    Verdict.INCOMPARABLE: "incomparable",
}
REFERENCE_TASKS = {3: Task(0.75, 2.0), 4: Task(0.25, 2.0), 5: Task(0.75, 2.0)}


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


@dataclass
class FigureData:
    name: str
    header: list[str]
    rows: list[tuple] = field(default_factory=list)
    meta: list[tuple[str, object]] = field(default_factory=list)

    def column(self, name: str) -> list:
        i = self.header.index(name)
        return [r[i] for r in self.rows]

    def meta_value(self, key: str):
        return dict(self.meta)[key]


def write_csv(data: FigureData, fh: TextIO) -> None:
    for key, value in data.meta:
        fh.write(f"# {key}={fmt(value)}\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(data.header)
    writer.writerows([fmt(v) for v in row] for row in data.rows)


def to_csv_text(data: FigureData) -> str:
    buf = io.StringIO()
    write_csv(data, buf)
    return buf.getvalue()


def _pmap(fn, items: Iterable, workers: int) -> list:
    items = list(items)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def figure1(c: CostSpec, u1: float = 0.5, kappa: float = 1.0, grid_n: int = 401) -> FigureData:
    """Payoff ``g``, scaled cost, their difference and its concave closure over posteriors."""
    q = np.linspace(0.0, 1.0, grid_n)
    g = u1 * np.maximum(q, 1.0 - q)
    kc = kappa * c.values(q)
    env = concave_envelope(payoff_samples(u1, kappa, c, grid_n))
    delta = optimal_cutoff(u1, kappa, c)
    level = u1 * (1.0 - delta) - kappa * c.value(delta)
    rows = list(zip(q, g, kc, g - kc, env.envelope))
    return FigureData(
        name="figure1",
        header=["q", "g", "kappa_c", "h", "envelope"],
        rows=rows,
        meta=[("figure", 1), ("cost", c.label), ("u1", u1), ("kappa", kappa), ("grid_n", grid_n),
              ("delta", delta), ("flat_level", level)],
    )


def figure2(c: CostSpec, u1: float = 0.5, kappa: float = 1.0, points: int = 101) -> FigureData:
    """Expected accuracy under the optimal signal as a function of the prior."""
    delta = optimal_cutoff(u1, kappa, c)
    ps = np.linspace(0.0, 1.0, points)
    rows = [(p, solve_prior(u1, kappa, c, float(p)).accuracy) for p in ps]
    vertices = f"(0,1);({delta:.17g},{1 - delta:.17g});({1 - delta:.17g},{1 - delta:.17g});(1,1)"
    return FigureData(
        name="figure2",
        header=["p", "accuracy"],
        rows=rows,
        meta=[("figure", 2), ("cost", c.label), ("u1", u1), ("kappa", kappa), ("delta", delta),
              ("vertices", vertices)],
    )


def region_lattice(
    reference: Task,
    agent: Agent,
    c: CostSpec,
    kappa_max: float = 4.0,
    n_kappa: int = 80,
    n_phi: int = 40,
    workers: int = 1,
) -> list[tuple[float, float, float, str]]:
    """Classify cell centres of a ``(kappa, phi)`` lattice against ``reference``."""
    kappas = (np.arange(n_kappa) + 0.5) * kappa_max / n_kappa
    phis = (np.arange(n_phi) + 0.5) / n_phi
    cells = [(float(k), float(f)) for k in kappas for f in phis]

    def classify(cell: tuple[float, float]) -> tuple[float, float, float, str]:
        k, f = cell
        t = Task(f, k)
        if is_trivial(t, agent, c):
            region = "trivial"
        else:
            region = REGION_BY_VERDICT[compare(reference, t, agent, c).verdict]
        return (k, f, phi_w(agent, k, c), region)

    return _pmap(classify, cells, workers)


def region_figure(
    number: int, c: CostSpec, agent: Agent, reference: Task | None = None, workers: int = 1, **lattice
) -> FigureData:
    """Figures 3-5: which lattice tasks are more complex, simpler, incomparable or trivial."""
    reference = reference or REFERENCE_TASKS[number]
    rows = region_lattice(reference, agent, c, workers=workers, **lattice)
    meta: list[tuple[str, object]] = [
        ("figure", number), ("cost", c.label), ("w", agent.w), ("kappa_w", kappa_w(agent, c)),
        ("reference_phi", reference.phi), ("reference_kappa", reference.kappa),
        ("reference_phi_w", phi_w(agent, reference.kappa, c)),
    ]
    if number == 5:
        twin = construct_dominated_effort_task(reference, agent, c)
        meta += [("constructed_phi", twin.phi), ("constructed_kappa", twin.kappa),
                 ("epsilon", construction_epsilon(reference, agent, c))]
        rows = rows + [
            (reference.kappa, reference.phi, phi_w(agent, reference.kappa, c), "reference"),
            (twin.kappa, twin.phi, phi_w(agent, twin.kappa, c), "constructed"),
        ]
    return FigureData(name=f"figure{number}", header=["kappa", "phi", "phi_w", "region"], rows=rows, meta=meta)


def build_figure(number: int, c: CostSpec, agent: Agent, workers: int = 1, **kwargs) -> FigureData:
    if number == 1:
        return figure1(c, **kwargs)
    if number == 2:
        return figure2(c, **kwargs)
    if number in (3, 4, 5):
        return region_figure(number, c, agent, workers=workers, **kwargs)
    raise ValueError(f"no figure {number}")
