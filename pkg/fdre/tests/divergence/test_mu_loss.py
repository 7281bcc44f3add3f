"""Tests for fdre.divergence.mu_loss."""

from pytest import raises, mark

import numpy as np

from fdre.divergence.generators import get_generator
from fdre.divergence.mu_loss import *

###################################################################################################
###################################################################################################

LABELS = ['kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha:0.5']

def test_mu_point():

    point = MuPoint.from_ratio(1., 3.)

    assert np.isclose(point.dq_dmu + point.dp_dmu, 2.)
    assert np.isclose(point.ratio, 3.)
    assert MuPoint(1., 1., 0.).ratio == np.inf

def test_mu_loss_pointwise_at_one():

    for label in LABELS:
        assert np.isclose(mu_loss_pointwise(label, MuPoint(1., 1., 1.)), 0., atol=1e-15)

def test_mu_loss_pointwise_grid_scan():

    grid = np.arange(1, 10001) * 1e-3
    values = mu_loss_pointwise('kl', MuPoint(grid, 1.5, 0.5))

    assert abs(grid[np.argmin(values)] - 3.) <= 1e-3

def test_mu_loss_pointwise_minimum_value():

    for label in LABELS:

        gen = get_generator(label)
        point = MuPoint.from_ratio(2.5, 2.5)

        assert np.isclose(mu_loss_pointwise(gen, point), -gen.f(2.5) * point.dp_dmu,
                          rtol=0, atol=1e-9)

def test_mu_loss_derivative_at_minimizer():

    for label in LABELS:

        gen = get_generator(label)
        point = MuPoint.from_ratio(0.4, 0.4)

        assert abs(mu_loss_derivative(gen, point)) < 1e-8
        assert np.isclose(mu_loss_derivative(gen, point, order=2),
                          gen.f_double_prime(0.4) * point.dp_dmu)

def test_mu_loss_derivative_finite_differences():

    step = 1e-5
    for label in LABELS:
        for uu in [0.3, 1.7, 4.]:

            point, ratio = MuPoint.from_ratio(uu, 1.2), 1.2
            upper = MuPoint.from_ratio(uu + step, ratio)
            lower = MuPoint.from_ratio(uu - step, ratio)

            first = (mu_loss_pointwise(label, upper) -
                     mu_loss_pointwise(label, lower)) / (2 * step)
            second = (mu_loss_derivative(label, upper) -
                      mu_loss_derivative(label, lower)) / (2 * step)

            assert np.isclose(mu_loss_derivative(label, point), first, rtol=1e-6, atol=1e-9)
            assert np.isclose(mu_loss_derivative(label, point, 2), second, rtol=1e-6, atol=1e-9)

def test_mu_loss_derivative_sign():

    ratio = 2.
    grid = np.concatenate([np.linspace(0.05, 1.9, 60), np.linspace(2.1, 6., 60)])

    for label in LABELS:
        derivs = mu_loss_derivative(label, MuPoint.from_ratio(grid, ratio))
        assert np.all(np.sign(derivs) == np.sign(grid - ratio))

def test_mu_loss_derivative_zero_p_density():

    # Where dP/dmu is zero, the derivative is finite and negative, so the loss decreases in u
    assert mu_loss_derivative('kl', MuPoint(2., 2., 0.)) < 0

def test_mu_loss_errors():

    with raises(ValueError):
        mu_loss_pointwise('kl', MuPoint(0., 1., 1.))
    with raises(ValueError):
        mu_loss_pointwise('kl', MuPoint(1., -1., 1.))
    with raises(ValueError):
        mu_loss_pointwise('kl', MuPoint(1., 0., 0.))
    with raises(ValueError):
        mu_loss_derivative('kl', MuPoint(1., 1., 1.), order=3)

def test_mu_loss():

    rng = np.random.default_rng(0)
    ratios = rng.uniform(0.2, 5., 50)
    point = MuPoint.from_ratio(ratios, ratios)

    for label in LABELS:
        gen = get_generator(label)
        expected = np.mean(-gen.f(ratios) * point.dp_dmu)
        assert np.isclose(mu_loss(gen, ratios, point.dq_dmu, point.dp_dmu), expected)

        # The true ratio minimizes the loss
        assert mu_loss(gen, ratios, point.dq_dmu, point.dp_dmu) < \
            mu_loss(gen, 1.1 * ratios, point.dq_dmu, point.dp_dmu)

def _pointwise_optimum(n_pairs, seed):
    """Check grid scan minimizers and minimum values, for random pairs of densities."""

    rng = np.random.default_rng(seed)
    grid = np.arange(1, 12001) * 1e-3

    for label in LABELS:

        gen = get_generator(label)
        for ratio in rng.uniform(0.2, 10., n_pairs):

            point = MuPoint.from_ratio(grid, ratio)
            values = mu_loss_pointwise(gen, point)
            assert abs(grid[np.argmin(values)] - ratio) <= 1e-3

            at_ratio = MuPoint.from_ratio(ratio, ratio)
            assert abs(mu_loss_derivative(gen, at_ratio)) <= 1e-8
            assert abs(mu_loss_pointwise(gen, at_ratio) + gen.f(ratio) * at_ratio.dp_dmu) <= 1e-9

def test_pointwise_optimum():

    _pointwise_optimum(20, 1)

@mark.slow
def test_pointwise_optimum_full():

    _pointwise_optimum(1000, 2)
