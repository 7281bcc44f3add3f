"""Adam optimizer, as a pure update of parameter arrays."""

from dataclasses import dataclass, replace

import numpy as np

from fdre.core.errors import NonFiniteError, ShapeError

###################################################################################################
###################################################################################################

@dataclass(frozen=True)
class AdamState():
    """State of the Adam optimizer.

    Attributes
    ----------
    first, second : tuple of ndarray
        First and second moment accumulators, one for each parameter.
    step : int
        Number of updates that have been applied.
    learning_rate : float
        Step size.
    beta1, beta2 : float
        Exponential decay rates of the moment accumulators.
    eps : float
        Constant added to the denominator of each update.
    """

    first: tuple
    second: tuple
    step: int = 0
    learning_rate: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    def __post_init__(self):

        if self.learning_rate <= 0:
            raise ValueError('The learning rate must be positive.')
        if self.step < 0:
            raise ValueError('The step counter can not be negative.')
        if len(self.first) != len(self.second):
            raise ShapeError('Moment accumulators are inconsistent.')


    @classmethod
    def for_params(cls, params, learning_rate=1e-4, beta1=0.9, beta2=0.999, eps=1e-8):
        """Initialize an optimizer state with zero accumulators.

        Parameters
        ----------
        params : list of ndarray
            Parameters to be optimized.
        learning_rate : float, optional, default: 1e-4
            Step size.
        beta1, beta2 : float, optional, default: 0.9, 0.999
            Exponential decay rates of the moment accumulators.
        eps : float, optional, default: 1e-8
            Constant added to the denominator of each update.

        Returns
        -------
        AdamState
            Initial optimizer state.
        """

        zeros = tuple(np.zeros(np.shape(param)) for param in params)

        return cls(zeros, zeros, 0, learning_rate, beta1, beta2, eps)


def adam_step(state, params, grads, weight_decay=0.):
    """Apply one Adam update, with bias correction.

    Parameters
    ----------
    state : AdamState
        Current optimizer state.
    params : list of ndarray
        Current parameter values.
    grads : list of ndarray
        Gradients of the loss with respect to each parameter.
    weight_decay : float, optional, default: 0.
        Coefficient of an L2 penalty added to the gradients.

    Returns
    -------
    new_params : list of ndarray
        Updated parameter values.
    new_state : AdamState
        Updated optimizer state, with the step counter incremented.

    Raises
    ------
    ShapeError
        If parameters, gradients and accumulators do not align.
    NonFiniteError
        If any gradient is not finite.

    Examples
    --------
    A zero gradient leaves parameters unchanged:

    >>> state = AdamState.for_params([np.ones(2)])
    >>> new_params, state = adam_step(state, [np.ones(2)], [np.zeros(2)])
    >>> new_params[0], state.step
    (array([1., 1.]), 1)
    """

    if not len(params) == len(grads) == len(state.first):
        raise ShapeError('Parameters, gradients and optimizer state do not align.')

    step = state.step + 1
    correct1 = 1. - state.beta1 ** step
    correct2 = 1. - state.beta2 ** step

    new_params, new_first, new_second = [], [], []
    for param, grad, first, second in zip(params, grads, state.first, state.second):

        if np.shape(param) != np.shape(grad) or np.shape(grad) != first.shape:
            raise ShapeError('Gradient of shape {} does not match parameter of shape {}.'.format(
                np.shape(grad), np.shape(param)))
        if not np.all(np.isfinite(grad)):
            raise NonFiniteError('Gradients must be finite.')

        grad = grad + weight_decay * param if weight_decay else grad

        first = state.beta1 * first + (1. - state.beta1) * grad
        second = state.beta2 * second + (1. - state.beta2) * grad ** 2

        update = state.learning_rate * (first / correct1) / (np.sqrt(second / correct2) + state.eps)

        new_params.append(param - update)
        new_first.append(first)
        new_second.append(second)

    return new_params, replace(state, first=tuple(new_first), second=tuple(new_second), step=step)
