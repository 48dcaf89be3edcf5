"""Domain types for binary guessing tasks with posterior-separable attention costs.

A task is a pair ``(phi, kappa)``: ``phi`` is ex-ante uncertainty (1 for a
uniform prior, 0 for a degenerate one) and ``kappa`` scales the marginal cost
function ``c``.  Priors are represented by their canonical value
``p = phi / 2 <= 1/2``; every quantity in this package is invariant under the
reflection ``p -> 1 - p``.
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import xlogy

from .errors import CostValidationError, DomainError, InvariantError

SYMMETRY_TOL = 1e-10
SIGNAL_TOL = 1e-12
# second differences at or below this count as "not strictly convex"
CONVEXITY_FLOOR = 1e-13

QUADRATIC = "quadratic"
SHANNON = "shannon"
TSALLIS = "tsallis"
TABULATED = "tabulated"
KINDS = (QUADRATIC, SHANNON, TSALLIS, TABULATED)


def _check_unit(q: float, what: str = "q") -> None:
    if not (0.0 <= q <= 1.0):
        raise DomainError(f"{what}={q!r} must lie in [0, 1]")


@dataclass(frozen=True, eq=False)
class CostSpec:
    """Symmetric strictly convex marginal cost ``c`` on ``[0, 1]``.

    Build instances with :meth:`quadratic`, :meth:`shannon`, :meth:`tsallis`,
    :meth:`tabulated` or :meth:`from_csv` rather than calling the constructor.
    Catalog members are kept in their natural normalization; additive
    constants cancel in :func:`signal_cost`.
    """

    kind: str
    sigma: float | None = None
    knots: tuple[tuple[float, float], ...] = ()
    _q: list[float] = field(default_factory=list, init=False, repr=False)
    _c: list[float] = field(default_factory=list, init=False, repr=False)
    _slopes: list[float] = field(default_factory=list, init=False, repr=False)
    _report: "CostValidation | None" = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown cost kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == TSALLIS:
            if self.sigma is None or not self.sigma > 0 or self.sigma == 1:
                raise DomainError(f"Tsallis cost needs sigma > 0, sigma != 1 (got {self.sigma!r})")
        if self.kind == TABULATED:
            self._init_table()

    def _init_table(self) -> None:
        if len(self.knots) < 3:
            raise DomainError("a tabulated cost needs at least 3 (q, c) rows")
        q = [float(a) for a, _ in self.knots]
        c = [float(b) for _, b in self.knots]
        if q[0] != 0.0 or q[-1] != 1.0:
            raise DomainError("tabulated q column must start at 0 and end at 1")
        if any(b <= a for a, b in zip(q, q[1:])):
            raise DomainError("tabulated q column must be strictly increasing")
        if not all(math.isfinite(v) for v in c):
            raise DomainError("tabulated c column must be finite")
        n = len(q)
        slopes = [0.0] * n
        slopes[0] = (c[1] - c[0]) / (q[1] - q[0])
        slopes[-1] = (c[-1] - c[-2]) / (q[-1] - q[-2])
        for i in range(1, n - 1):
            slopes[i] = (c[i + 1] - c[i - 1]) / (q[i + 1] - q[i - 1])
        object.__setattr__(self, "_q", q)
        object.__setattr__(self, "_c", c)
        object.__setattr__(self, "_slopes", slopes)

    # -- constructors -----------------------------------------------------

    @classmethod
    def quadratic(cls) -> "CostSpec":
        return cls(QUADRATIC)

    @classmethod
    def shannon(cls) -> "CostSpec":
        return cls(SHANNON)

    @classmethod
    def tsallis(cls, sigma: float) -> "CostSpec":
        return cls(TSALLIS, sigma=float(sigma))

    @classmethod
    def tabulated(cls, q: Sequence[float], c: Sequence[float]) -> "CostSpec":
        if len(q) != len(c):
            raise DomainError("q and c columns differ in length")
        return cls(TABULATED, knots=tuple((float(a), float(b)) for a, b in zip(q, c)))

    @classmethod
    def from_csv(cls, path: str | Path) -> "CostSpec":
        """Load a two-column ``q,c`` table (header required)."""
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(line for line in fh if not line.startswith("#"))]
        if not rows or [h.strip() for h in rows[0]] != ["q", "c"]:
            raise DomainError(f"{path}: expected a header row 'q,c'")
        try:
            pairs = [(float(a), float(b)) for a, b in rows[1:]]
        except ValueError as exc:
            raise DomainError(f"{path}: {exc}") from None
        return cls.tabulated([a for a, _ in pairs], [b for _, b in pairs])

    @property
    def label(self) -> str:
        if self.kind == TSALLIS:
            return f"tsallis(sigma={self.sigma:g})"
        if self.kind == TABULATED:
            return f"tabulated({len(self.knots)} rows)"
        return self.kind

    # -- evaluation -------------------------------------------------------

    def value(self, q: float) -> float:
        """``c(q)`` for a scalar ``q`` in ``[0, 1]``."""
        if self.kind == QUADRATIC:
            return q * q - q
        if self.kind == SHANNON:
            if q <= 0.0 or q >= 1.0:
                return 0.0
            return q * math.log(q) + (1.0 - q) * math.log1p(-q)
        if self.kind == TSALLIS:
            s = self.sigma
            return (q**s + (1.0 - q) ** s - 2.0 ** (1.0 - s)) / (s * (s - 1.0))
        i = min(max(bisect.bisect_right(self._q, q) - 1, 0), len(self._q) - 2)
        q0, q1 = self._q[i], self._q[i + 1]
        t = (q - q0) / (q1 - q0)
        return self._c[i] + t * (self._c[i + 1] - self._c[i])

    def values(self, q: np.ndarray) -> np.ndarray:
        """Vectorized ``c`` over an array of posteriors."""
        q = np.asarray(q, dtype=float)
        if self.kind == QUADRATIC:
            return q * q - q
        if self.kind == SHANNON:
            return xlogy(q, q) + xlogy(1.0 - q, 1.0 - q)
        if self.kind == TSALLIS:
            s = self.sigma
            return (q**s + (1.0 - q) ** s - 2.0 ** (1.0 - s)) / (s * (s - 1.0))
        return np.interp(q, self._q, self._c)

    def derivative(self, q: float) -> float:
        """``c'(q)``; at ``q`` in ``{0, 1}`` the one-sided limit, possibly infinite."""
        if self.kind == QUADRATIC:
            return 2.0 * q - 1.0
        if self.kind == SHANNON:
            if q <= 0.0:
                return -math.inf
            if q >= 1.0:
                return math.inf
            return math.log(q) - math.log1p(-q)
        if self.kind == TSALLIS:
            s = self.sigma
            if s < 1.0 and (q <= 0.0 or q >= 1.0):
                return -math.inf if q <= 0.0 else math.inf
            return (q ** (s - 1.0) - (1.0 - q) ** (s - 1.0)) / (s - 1.0)
        i = min(max(bisect.bisect_right(self._q, q) - 1, 0), len(self._q) - 2)
        q0, q1 = self._q[i], self._q[i + 1]
        t = (q - q0) / (q1 - q0)
        return self._slopes[i] + t * (self._slopes[i + 1] - self._slopes[i])

    def validation(self) -> "CostValidation":
        """Validation report, computed once per instance."""
        if self._report is None:
            object.__setattr__(self, "_report", validate_cost(self))
        return self._report

    def require_valid(self) -> None:
        report = self.validation()
        if not report.passed:
            raise CostValidationError(f"{self.label} is not a valid cost: {report.summary()}")


@dataclass(frozen=True)
class CostValidation:
    symmetric: bool
    strictly_convex: bool
    finite: bool
    max_asymmetry: float
    min_second_difference: float
    grid_size: int

    @property
    def passed(self) -> bool:
        return self.symmetric and self.strictly_convex and self.finite

    def summary(self) -> str:
        def mark(ok: bool) -> str:
            return "pass" if ok else "FAIL"

        return (
            f"symmetry={mark(self.symmetric)} (max |c(q)-c(1-q)|={self.max_asymmetry:.3g}), "
            f"strict_convexity={mark(self.strictly_convex)} "
            f"(min second difference={self.min_second_difference:.3g}), "
            f"finite={mark(self.finite)}"
        )


def validate_cost(c: CostSpec, grid_size: int = 1001) -> CostValidation:
    """Check symmetry and strict convexity of ``c``; never raises on failure.

    Symmetry is checked on a uniform grid.  Strict convexity uses positive
    second differences (the midpoint test) on the same grid, except for
    tabulated costs, which are piecewise linear between rows and are therefore
    tested on their own rows.
    """
    if grid_size < 3:
        raise DomainError("grid_size must be at least 3")
    q = np.linspace(0.0, 1.0, grid_size)
    v = c.values(q)
    finite = bool(np.all(np.isfinite(v)))
    asym = float(np.max(np.abs(v - c.values(1.0 - q)))) if finite else math.inf
    if c.kind == TABULATED:
        kq = np.asarray(c._q)
        kc = np.asarray(c._c)
        # divided second differences on a possibly non-uniform table
        left = (kc[1:-1] - kc[:-2]) / (kq[1:-1] - kq[:-2])
        right = (kc[2:] - kc[1:-1]) / (kq[2:] - kq[1:-1])
        second = (right - left) * (kq[2:] - kq[:-2]) / 2.0
    else:
        second = v[2:] - 2.0 * v[1:-1] + v[:-2]
    min_second = float(np.min(second)) if finite else -math.inf
    return CostValidation(
        symmetric=finite and asym <= SYMMETRY_TOL,
        strictly_convex=finite and min_second > CONVEXITY_FLOOR,
        finite=finite,
        max_asymmetry=asym,
        min_second_difference=min_second,
        grid_size=grid_size,
    )


def eval_cost(c: CostSpec, q: float) -> float:
    _check_unit(q)
    return c.value(q)


def eval_cost_derivative(c: CostSpec, q: float) -> float:
    """``c'(q)``; ``q = 0`` and ``q = 1`` give one-sided limits (``-inf``/``inf`` when divergent)."""
    _check_unit(q)
    return c.derivative(q)


# -- agent and tasks ---------------------------------------------------------

LINEAR = "linear"
POWER = "power"


@dataclass(frozen=True)
class Agent:
    """Intrinsic incentive ``w`` plus the utility of a correct guess.

    ``u1(x) = w + beta * (x - x0)`` for the linear family and
    ``u1(x) = w + (x - x0) ** gamma`` for the power family.  A wrong guess is
    worth 0 at every reward.
    """

    w: float = 1.0
    family: str = LINEAR
    beta: float = 1.0
    gamma: float = 1.0
    x0: float = 0.0

    def __post_init__(self) -> None:
        if not self.w >= 0:
            raise DomainError(f"intrinsic incentive w={self.w!r} must be >= 0")
        if self.family not in (LINEAR, POWER):
            raise DomainError(f"unknown utility family {self.family!r}")
        if self.family == LINEAR and not self.beta > 0:
            raise DomainError("linear utility needs beta > 0")
        if self.family == POWER and not self.gamma > 0:
            raise DomainError("power utility needs gamma > 0")

    def u1(self, x: float) -> float:
        if x < self.x0:
            raise DomainError(f"reward x={x!r} is below the lowest reward x0={self.x0!r}")
        if self.family == LINEAR:
            return self.w + self.beta * (x - self.x0)
        return self.w + (x - self.x0) ** self.gamma

    def reward_for(self, u: float) -> float:
        """Inverse of :meth:`u1` on ``[w, inf)``."""
        if u < self.w:
            raise DomainError(f"utility {u!r} is below u1(x0)={self.w!r}")
        if self.family == LINEAR:
            return self.x0 + (u - self.w) / self.beta
        return self.x0 + (u - self.w) ** (1.0 / self.gamma)


@dataclass(frozen=True, order=True)
class Task:
    phi: float
    kappa: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.phi <= 1.0):
            raise DomainError(f"ex-ante uncertainty phi={self.phi!r} must lie in [0, 1]")
        if not self.kappa > 0:
            raise DomainError(f"difficulty kappa={self.kappa!r} must be > 0")

    @property
    def prior(self) -> float:
        return canonical_prior(self.phi)


def canonical_prior(phi: float) -> float:
    """The prior ``p <= 1/2`` whose uncertainty ``1 - 2|p - 1/2|`` equals ``phi``."""
    if not (0.0 <= phi <= 1.0):
        raise DomainError(f"phi={phi!r} must lie in [0, 1]")
    return phi / 2.0


def uncertainty(p: float) -> float:
    """``1 - 2|p - 1/2|``, evaluated as ``2*min(p, 1 - p)`` so that it inverts
    :func:`canonical_prior` exactly."""
    _check_unit(p, "p")
    return 2.0 * min(p, 1.0 - p)


# -- signals -----------------------------------------------------------------


@dataclass(frozen=True)
class Signal:
    """Finite distribution over posteriors, stored as ``(q, weight)`` atoms."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise InvariantError("a signal needs at least one atom")
        for q, a in self.atoms:
            if not (0.0 <= q <= 1.0) or not (0.0 <= a <= 1.0):
                raise InvariantError(f"atom ({q!r}, {a!r}) outside [0, 1] x [0, 1]")
        total = sum(a for _, a in self.atoms)
        if abs(total - 1.0) > SIGNAL_TOL:
            raise InvariantError(f"signal weights sum to {total!r}, not 1")

    @classmethod
    def degenerate(cls, p: float) -> "Signal":
        return cls(((p, 1.0),))

    @classmethod
    def binary(cls, low: float, high: float, p: float) -> "Signal":
        """Two-atom signal on ``{low, high}`` with mean ``p``."""
        alpha = (high - p) / (high - low)
        return cls(((low, alpha), (high, 1.0 - alpha)))

    @property
    def mean(self) -> float:
        return sum(q * a for q, a in self.atoms)

    @property
    def informative(self) -> bool:
        return len({q for q, a in self.atoms if a > 0}) > 1

    def check_plausible(self, p: float, tol: float = SIGNAL_TOL) -> None:
        if abs(self.mean - p) > tol:
            raise InvariantError(
                f"signal mean {self.mean!r} differs from the prior {p!r} (Bayes plausibility)"
            )

    def expected_accuracy(self) -> float:
        return sum(a * max(q, 1.0 - q) for q, a in self.atoms)


def signal_cost(c: CostSpec, kappa: float, p: float, signal: Signal) -> float:
    """``kappa * (E[c(q)] - c(p))`` for a Bayes-plausible signal."""
    signal.check_plausible(p)
    return kappa * (sum(a * c.value(q) for q, a in signal.atoms) - c.value(p))


@dataclass(frozen=True)
class SolveReport:
    """Optimal attention choice for one reward and one task.

    ``envelope`` is the concave closure of ``g - kappa*c`` at the prior and
    ``value = envelope + kappa*c(p)`` is the attained ``G - C``.
    """

    cutoff: float
    signal: Signal
    value: float
    envelope: float
    accuracy: float
    effort: float
    informative: bool
    prior: float
    u1: float

    def as_pairs(self) -> list[tuple[str, float | str]]:
        atoms = ";".join(f"{q:.17g}:{a:.17g}" for q, a in self.signal.atoms)
        return [
            ("u1", self.u1),
            ("prior", self.prior),
            ("cutoff", self.cutoff),
            ("informative", "true" if self.informative else "false"),
            ("atoms", atoms),
            ("envelope", self.envelope),
            ("value", self.value),
            ("accuracy", self.accuracy),
            ("effort", self.effort),
        ]
