"""Tests for fdre.train.predict."""

from pytest import raises

import numpy as np

from fdre.core.errors import NonFiniteError, ShapeError
from fdre.autodiff.mlp import zeros_mlp
from fdre.divergence.losses import LossSpec
from fdre.train.trainer import TrainedModel
from fdre.train.predict import *

from fdre.tests.tsettings import TEST_WIDTHS

###################################################################################################
###################################################################################################

def test_predict_ratio_zeros(tmodel_zeros):

    points = np.random.default_rng(0).normal(size=(10, 2))

    trained = TrainedModel(tmodel_zeros, LossSpec('kl'))
    assert np.array_equal(predict_ratio(trained, points), np.ones(10))
    assert np.array_equal(predict_energy(trained, points), np.zeros(10))

    trained = TrainedModel(tmodel_zeros, LossSpec('pearson_chi2', 'direct'))
    assert np.allclose(predict_ratio(trained, points), np.log(2.), atol=1e-6)

def test_predict_ratio_energy(ttrained, tsplits):

    trained, _ = ttrained
    points = tsplits['test', 'P']

    ratios = predict_ratio(trained, points)
    assert ratios.shape == (len(points.points),)
    assert np.all(ratios > 0)
    assert np.allclose(ratios, np.exp(-predict_energy(trained, points)))

    direct = TrainedModel(trained.model, LossSpec('gan', 'direct'))
    assert np.allclose(predict_ratio(direct, points), np.exp(-predict_energy(direct, points)))

def test_predict_ratio_errors(tmodel_zeros):

    trained = TrainedModel(tmodel_zeros, LossSpec('kl'))

    with raises(ShapeError):
        predict_ratio(trained, np.zeros((3, 5)))

    with raises(NonFiniteError):
        predict_ratio(trained, np.array([[0., np.nan]]))

    # An output bias this large overflows the exponential
    params = tmodel_zeros.params
    params[-1] = np.array([1000.])
    trained = TrainedModel(tmodel_zeros.with_params(params), LossSpec('kl'))
    with raises(NonFiniteError):
        predict_ratio(trained, np.zeros((2, TEST_WIDTHS[0])))

def test_estimate_lipschitz():

    rng = np.random.default_rng(0)
    points = rng.standard_normal((100, 3))

    # For a linear function under the max norm, the constant is the l1 norm of the weights
    weights = np.array([1., -2., 0.5])
    estimate = estimate_lipschitz(lambda x: x @ weights, points, 500, rng)
    assert 0. < estimate <= 3.5 + 1e-12

    assert estimate_lipschitz(lambda x: np.full(len(x), 3.), points, 100, rng) == 0.

    points = rng.standard_normal((50, 1))
    assert np.isclose(estimate_lipschitz(lambda x: 4. * x[:, 0], points, 100, rng), 4.)

def test_estimate_lipschitz_energy(ttrained, tsplits):

    trained, _ = ttrained
    estimate = estimate_lipschitz(lambda x: predict_energy(trained, x), tsplits['test', 'P'],
                                  200, np.random.default_rng(0))

    assert np.isfinite(estimate) and estimate >= 0.

def test_estimate_lipschitz_edge_cases():

    rng = np.random.default_rng(0)

    # Repeated points give no valid pairs
    assert estimate_lipschitz(lambda x: x[:, 0], np.ones((5, 2)), 10, rng) == 0.

    with raises(ValueError):
        estimate_lipschitz(lambda x: x[:, 0], np.ones((1, 2)), 10, rng)

    for n_pairs in [0, 2.5]:
        with raises(ValueError):
            estimate_lipschitz(lambda x: x[:, 0], np.ones((5, 2)), n_pairs, rng)
