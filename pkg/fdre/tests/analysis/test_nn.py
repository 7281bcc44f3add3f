"""Tests for fdre.analysis.nn."""

from itertools import product

from pytest import raises, mark

import numpy as np

from fdre.core.errors import HypothesisError
from fdre.synth.mixture import make_mixture_spec
from fdre.analysis.nn import *

###################################################################################################
###################################################################################################

def test_nearest_neighbors():

    points = np.array([[0., 0.], [1., 1.], [3., 0.], [1., -1.]])
    queries = np.array([[0.9, 1.2], [2.1, 0.], [1., 0.]])

    indices, dists = nearest_neighbors(points, queries)

    assert indices.tolist() == [1, 2, 0]
    assert np.allclose(dists, [0.2, 0.9, 1.])

def test_nn_moment_estimate():

    est = NnMomentEstimate('upper', 4, 2, 1, 0.3, 0.01, 0.5, True)

    assert est.as_dict()['kind'] == 'upper'
    assert est.as_dict()['trend'] == ()

    with raises(ValueError):
        NnMomentEstimate('upper', 4, 2, 1, -0.3, 0.01, 0.5, True)

def test_nn_moment_upper_check_exact():

    # For uniform points on the line, the expected distance between two points is 1/3
    est = nn_moment_upper_check('cube', 1, 1, 1, 20000, np.random.default_rng(0))

    assert abs(est.estimate - 1. / 3.) < 0.01
    assert est.bound == 0.5
    assert est.satisfied

def test_nn_moment_upper_check(trun_log):

    rng = np.random.default_rng(0)

    for n_points, kappa in [(4, 1), (16, 2)]:
        est = nn_moment_upper_check('cube', n_points, 2, kappa, 1000, rng, logging=trun_log)
        assert est.kind == 'upper' and est.d == 2
        assert np.isclose(est.bound, (1. / (n_points + 1)) ** (kappa / 2))
        assert est.satisfied

    assert len(trun_log.log) == 2

def test_nn_moment_upper_check_cloud():

    rng = np.random.default_rng(0)
    cloud = rng.random((500, 2))

    est = nn_moment_upper_check(cloud, 8, 2, 1, 1000, rng)

    assert est.bound <= (1. / 9.) ** 0.5
    assert est.satisfied

def test_nn_moment_upper_check_errors():

    rng = np.random.default_rng(0)

    with raises(HypothesisError):
        nn_moment_upper_check('cube', 4, 1, 2, 10, rng)

    with raises(ValueError):
        nn_moment_upper_check('sphere', 4, 2, 1, 10, rng)

    with raises(ValueError):
        nn_moment_upper_check(np.zeros((10, 3)), 4, 2, 1, 10, rng)

    for n_points, trials in [(0, 10), (4, 0), (2.5, 10)]:
        with raises(ValueError):
            nn_moment_upper_check('cube', n_points, 2, 1, trials, rng)

def test_nn_moment_weighted_upper_check():

    spec = make_mixture_spec(2, kl_target=0.5, seed=0)
    est = nn_moment_weighted_upper_check(spec, 4, 1, 500, np.random.default_rng(0))

    assert est.kind == 'weighted_upper'
    assert est.bound > 0
    assert est.satisfied

    with raises(HypothesisError):
        nn_moment_weighted_upper_check(make_mixture_spec(1), 4, 1, 10, np.random.default_rng(0))

def test_nn_moment_lower_check_cube():

    est = nn_moment_lower_check('cube', [64, 16], 1, 2000, np.random.default_rng(0), d=1)

    assert est.kind == 'lower'
    assert est.n_points == 64
    assert [n_points for n_points, _, _ in est.trend] == [16, 64]
    assert np.isclose(est.bound, np.exp(-1.))
    assert est.satisfied

def test_nn_moment_lower_check_mixture(tspec):

    est = nn_moment_lower_check(tspec, 16, 1, 500, np.random.default_rng(0))

    assert est.d == tspec.d
    assert len(est.trend) == 1

    # The first ratio moment is 1
    assert np.isclose(est.bound, np.exp(-1.))
    assert est.satisfied is not False

def test_nn_moment_lower_check_errors(tspec):

    rng = np.random.default_rng(0)

    with raises(ValueError):
        nn_moment_lower_check(tspec, 16, 0.5, 10, rng)

    with raises(ValueError):
        nn_moment_lower_check('cube', 16, 1, 10, rng)

@mark.slow
def test_nn_moment_upper_check_grid():

    rng = np.random.default_rng(0)

    for d, n_points, kappa in product([1, 2, 3, 5], [1, 4, 16, 64, 256], [1, 2]):
        if kappa > d:
            continue
        est = nn_moment_upper_check('cube', n_points, d, kappa, 10000, rng)
        assert est.satisfied, (d, n_points, kappa)

@mark.slow
def test_nn_moment_lower_check_cube_dims():

    for d in [1, 2, 3]:
        est = nn_moment_lower_check('cube', [16, 64, 256], 1, 5000, np.random.default_rng(d),
                                    d=d)
        assert est.satisfied, d

@mark.slow
def test_nn_moment_lower_check_null_problem():

    spec = make_mixture_spec(3, 1, 0., seed=0)
    n_values = [2 ** power for power in range(7, 14)]

    est = nn_moment_lower_check(spec, n_values, 1, 2000, np.random.default_rng(0))

    assert est.n_points == 2 ** 13
    assert est.estimate >= 0.75 * np.exp(-1.)
    assert est.satisfied is True
    assert [row[0] for row in est.trend] == n_values
