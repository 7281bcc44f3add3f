"""Finite difference checks of reverse-mode gradients."""

import numpy as np

from fdre.autodiff.tensor import Tape, backward

###################################################################################################
###################################################################################################

def numerical_gradient(func, values, step=1e-6):
    """Compute a central finite difference gradient of a scalar function.

    Parameters
    ----------
    func : callable
        Function mapping a list of arrays to a scalar.
    values : list of ndarray
        Point at which to evaluate the gradient.
    step : float, optional, default: 1e-6
        Finite difference step size.

    Returns
    -------
    grads : list of ndarray
        Gradient with respect to each input array.
    """

    values = [np.array(val, dtype=np.float64) for val in values]
    grads = [np.zeros_like(val) for val in values]

    for val, grad in zip(values, grads):
        for ind in np.ndindex(val.shape):

            orig = val[ind]

            val[ind] = orig + step
            upper = float(func(values))
            val[ind] = orig - step
            lower = float(func(values))
            val[ind] = orig

            grad[ind] = (upper - lower) / (2 * step)

    return grads


def relative_error(grad_a, grad_b):
    """Compute the norm-wise relative error between two gradients.

    Parameters
    ----------
    grad_a, grad_b : ndarray
        Gradients to compare.

    Returns
    -------
    float
        Relative error, or absolute error if both gradients are close to zero.
    """

    diff = np.linalg.norm(np.ravel(grad_a) - np.ravel(grad_b))
    scale = max(np.linalg.norm(grad_a), np.linalg.norm(grad_b))

    return diff / scale if scale > 1e-8 else diff


def check_gradients(func, values, step=1e-6):
    """Compare tape gradients of a function against central finite differences.

    Parameters
    ----------
    func : callable
        Function mapping a list of inputs to a scalar. It is called with watched
        Tensors for the tape pass, and with arrays for the finite difference pass.
    values : list of ndarray
        Point at which to compare the gradients.
    step : float, optional, default: 1e-6
        Finite difference step size.

    Returns
    -------
    errors : list of float
        Relative error for each input.

    Examples
    --------
    Check the gradient of the mean of an exponential:

    >>> from fdre.autodiff.ops import mean, exp
    >>> errors = check_gradients(lambda ins: mean(exp(ins[0])), [np.array([0.5, -1.])])
    >>> errors[0] < 1e-5
    True
    """

    tape = Tape()
    grads = backward(tape, func([tape.watch(val) for val in values]))
    numerical = numerical_gradient(func, values, step)

    return [relative_error(grad, num) for grad, num in zip(grads, numerical)]
