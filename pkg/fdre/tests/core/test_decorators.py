"""Tests for fdre.core.decorators."""

from pytest import raises

import numpy as np

from fdre.core.errors import NonFiniteError, DivergenceError
from fdre.core.decorators import *

###################################################################################################
###################################################################################################

def test_check_finite_loss():

    @check_finite_loss
    def loss(value):
        return np.mean(value)

    assert loss([1., 2.]) == 1.5

    with raises(DivergenceError):
        loss([1., np.inf])

def test_check_finite_loss_converts_errors():

    @check_finite_loss
    def loss():
        raise NonFiniteError('overflow')

    with raises(DivergenceError):
        loss()

def test_check_positive():

    @check_positive('ratios')
    def total(ratios, scale=1.):
        return np.sum(ratios) * scale

    assert total([1., 2.]) == 3.
    assert total(ratios=[1.], scale=2.) == 2.

    with raises(ValueError):
        total([1., 0.])
    with raises(ValueError):
        total(ratios=[-1.])
