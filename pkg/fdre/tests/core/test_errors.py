"""Tests for fdre.core.errors."""

from pytest import raises

from fdre.core.errors import *

###################################################################################################
###################################################################################################

def test_error_hierarchy():

    for error in [ShapeError, NonFiniteError, TapeError, HypothesisError, ConfigError,
                  InconsistentDataError]:
        assert issubclass(error, FdreError)

    assert issubclass(DivergenceError, NonFiniteError)
    assert issubclass(ShapeError, ValueError)
    assert issubclass(ConfigError, ValueError)
    assert issubclass(NonFiniteError, ArithmeticError)

def test_errors_catchable_as_builtins():

    with raises(ValueError):
        raise HypothesisError('kappa exceeds d')

    with raises(RuntimeError):
        raise TapeError('consumed')
