"""Tests for fdre.autodiff.gradcheck."""

import numpy as np

from fdre.autodiff.ops import tsum, mean, exp
from fdre.autodiff.mlp import forward, evaluate, _propagate
from fdre.autodiff.tensor import Tape, backward
from fdre.autodiff.gradcheck import *

###################################################################################################
###################################################################################################

def test_numerical_gradient():

    grads = numerical_gradient(lambda ins: np.sum(ins[0] ** 2), [np.array([1., -2.])])

    assert np.allclose(grads[0], [2., -4.], atol=1e-6)

def test_relative_error():

    assert relative_error(np.array([1., 1.]), np.array([1., 1.])) == 0.
    assert np.isclose(relative_error(np.array([1., 0.]), np.array([0., 0.])), 1.)
    assert relative_error(np.zeros(2), np.array([1e-10, 0.])) < 1e-9

def test_check_gradients_network(tmodel):

    points = np.random.default_rng(1).uniform(-2, 2, size=(5, tmodel.input_width))

    def loss(params):
        return mean(exp(_propagate(params, points)))

    errors = check_gradients(loss, tmodel.params)

    assert max(errors) < 1e-5

def test_check_gradients_matches_forward(tmodel):

    points = np.random.default_rng(2).normal(size=(4, tmodel.input_width))

    tape = Tape()
    grads = backward(tape, mean(exp(forward(tmodel, points, tape))))
    numerical = numerical_gradient(
        lambda params: np.mean(np.exp(evaluate(tmodel.with_params(params), points))),
        tmodel.params)

    assert all(relative_error(grad, num) < 1e-5 for grad, num in zip(grads, numerical))
