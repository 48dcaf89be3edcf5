"""Rational-inattention complexity of binary guessing tasks.

Optimal attention by concavification, expected accuracy and effort, the
acquisition thresholds and the robust (reward-independent) complexity order.
"""

from .errors import (
    CostValidationError,
    DomainError,
    InattError,
    InvariantError,
    PreconditionError,
    SearchError,
)
from .model import (
    Agent,
    CostSpec,
    Signal,
    SolveReport,
    Task,
    canonical_prior,
    eval_cost,
    eval_cost_derivative,
    signal_cost,
    validate_cost,
)
from .order import ComparisonResult, Verdict, compare, compare_by_sweep, is_trivial, vector_utility
from .solver import effort, expected_accuracy, optimal_cutoff, optimal_signal, solve_prior
from .thresholds import kappa_w, phi_w, phi_w_inverse, phi_w_x

__version__ = "0.1.0"
