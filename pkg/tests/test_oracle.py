import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from inatt import Agent, CostSpec, DomainError, Task
from inatt.oracle import concave_envelope, oracle_solve, oracle_solve_prior, payoff_samples, upper_hull

samples = arrays(
    np.float64,
    st.integers(min_value=2, max_value=60),
    elements=st.floats(min_value=-100.0, max_value=100.0, allow_nan=False),
)


def test_flat_level_of_first_figure(quad):
    env = concave_envelope(payoff_samples(0.5, 1.0, quad, 4001))
    assert env.at(0.5) == pytest.approx(0.5625, abs=1e-12)
    flat = (env.grid >= 0.25) & (env.grid <= 0.75)
    np.testing.assert_allclose(env.envelope[flat], 0.5625, atol=1e-12)
    # outside the flat segment the payoff is already concave
    assert np.all(env.contact[~flat])


def test_linear_and_concave_samples_are_fixed_points():
    q = np.linspace(0.0, 1.0, 501)
    for f in (3.0 * q - 1.0, -((q - 0.5) ** 2), np.sqrt(q)):
        env = concave_envelope(f)
        np.testing.assert_allclose(env.envelope, f, atol=1e-12)


def test_non_finite_samples_are_rejected():
    with pytest.raises(DomainError):
        concave_envelope(np.array([0.0, np.inf, 1.0]))
    with pytest.raises(DomainError):
        concave_envelope(np.array([0.0, np.nan, 1.0]))


def test_upper_hull_of_a_tent():
    x = np.linspace(0.0, 1.0, 5)
    assert upper_hull(x, np.array([0.0, -1.0, 2.0, -1.0, 0.0])) == [0, 2, 4]


@given(samples)
def test_envelope_dominates_and_touches_at_vertices(values):
    env = concave_envelope(values)
    scale = max(1.0, float(np.max(np.abs(values))))
    assert np.all(env.envelope >= values - 1e-9 * scale)
    np.testing.assert_allclose(env.envelope[env.vertices], values[env.vertices])
    assert env.vertices[0] == 0 and env.vertices[-1] == len(values) - 1


@given(samples)
def test_envelope_is_concave(values):
    e = concave_envelope(values).envelope
    scale = max(1.0, float(np.max(np.abs(values))))
    if len(e) >= 3:
        assert np.all(e[2:] - 2 * e[1:-1] + e[:-2] <= 1e-9 * scale)


@given(samples)
def test_envelope_is_idempotent(values):
    once = concave_envelope(values).envelope
    twice = concave_envelope(once).envelope
    scale = max(1.0, float(np.max(np.abs(values))))
    np.testing.assert_allclose(twice, once, atol=1e-9 * scale)


def test_oracle_examples(quad):
    agent = Agent(w=0.5)
    full = oracle_solve(0.0, agent, Task(1.0, 1.0), quad)
    assert full.accuracy == pytest.approx(0.75, abs=2.5e-4)
    assert full.effort == pytest.approx(0.0625, abs=2.5e-4)
    assert full.cutoff == pytest.approx(0.25, abs=2.5e-4)

    low = oracle_solve(0.0, agent, Task(0.3, 1.0), quad)
    assert not low.informative
    assert low.value == pytest.approx(0.425, abs=1e-12)
    assert low.effort == 0.0


@pytest.mark.parametrize("c", [CostSpec.quadratic(), CostSpec.shannon()], ids=lambda c: c.label)
def test_oracle_without_incentive_is_degenerate(c):
    for kappa in (0.5, 3.0):
        for phi in (0.2, 1.0):
            r = oracle_solve(0.0, Agent(w=0.0), Task(phi, kappa), c)
            assert not r.informative
            assert r.effort == 0.0


def test_oracle_grid_size_is_checked(quad):
    for n in (100, 4000):
        with pytest.raises(DomainError):
            oracle_solve_prior(0.5, 1.0, quad, 0.5, grid_n=n)
