"""Tests for fdre.analysis.moments."""

from pytest import raises, mark

import numpy as np

from fdre.synth.mixture import make_mixture_spec
from fdre.analysis.moments import *

###################################################################################################
###################################################################################################

def test_group_stderr():

    assert group_stderr(np.ones(100)) == 0.
    assert np.isnan(group_stderr([1.]))

    values = np.random.default_rng(0).standard_normal(10000)
    assert 0.5 / 100 < group_stderr(values) < 2. / 100

    # Fewer values than groups uses one value per group
    assert np.isclose(group_stderr([0., 2.]), 1.)

def test_analytic_moment_single_mode():

    spec = make_mixture_spec(1, kl_target=0.5)

    assert analytic_moment(spec, 0) == 1.
    assert np.isclose(analytic_moment(spec, 1), 1.)
    assert np.isclose(analytic_moment(spec, 2), np.e)
    assert np.isclose(analytic_moment(spec, 3), np.exp(3.))

def test_analytic_moment_modes(tspec_modes):

    # The first moment of a density ratio is always 1
    assert np.isclose(analytic_moment(tspec_modes, 1), 1.)

    moments = [analytic_moment(tspec_modes, k) for k in range(1, 5)]
    assert np.all(np.diff(moments) > 0)

def test_analytic_moment_errors(tspec):

    for k in [-1, 1.5]:
        with raises(ValueError):
            analytic_moment(tspec, k)

def test_moment_estimate():

    spec = make_mixture_spec(2, kl_target=0.125)
    est = moment_estimate(spec, 2, 20000, np.random.default_rng(0))

    assert abs(est.value - np.exp(0.25)) < 5 * est.stderr + 1e-3

    with raises(ValueError):
        moment_estimate(spec, 0.5, 10, np.random.default_rng(0))

def test_monte_carlo_kl(tspec):

    rng = np.random.default_rng(0)

    for direction in ['PQ', 'QP']:
        est = monte_carlo_kl(tspec, 20000, rng, direction)
        assert abs(est.value - tspec.kl_target) < 5 * est.stderr + 1e-3

    with raises(ValueError):
        monte_carlo_kl(tspec, 10, rng, 'QQ')

def test_monte_carlo_kl_null(tspec_null):

    est = monte_carlo_kl(tspec_null, 100, np.random.default_rng(0))

    assert est.value == 0.

@mark.slow
def test_analytic_moment_matches_monte_carlo():

    spec = make_mixture_spec(3, 2, 0.3, seed=1)
    est = moment_estimate(spec, 2, 10 ** 6, np.random.default_rng(0))

    assert abs(est.value - analytic_moment(spec, 2)) < 5 * est.stderr + 0.02
