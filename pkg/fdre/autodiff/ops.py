"""Primitive operations, with their local gradient rules.

Notes
-----
Every operation accepts Tensor or array-like inputs.
If any input is a Tensor, the output is a Tensor and the operation is recorded on the
inputs' tape. If no input is a Tensor, the operation is computed directly with numpy,
and the array result is returned. Loss functions built from these operations can
therefore be evaluated with or without a tape.
"""

import numpy as np
from scipy.special import expit

from fdre.core.errors import NonFiniteError, ShapeError, TapeError
from fdre.autodiff.tensor import Tensor

###################################################################################################
###################################################################################################

def add(a, b):
    """Elementwise addition, with broadcasting."""

    if not _any_tensor(a, b):
        return np.add(a, b)

    a, b = _as_tensors(a, b)
    out = a.data + b.data

    return _record('add', (a, b), out,
                   lambda grad: (_unbroadcast(grad, a.shape), _unbroadcast(grad, b.shape)))


def sub(a, b):
    """Elementwise subtraction, with broadcasting."""

    if not _any_tensor(a, b):
        return np.subtract(a, b)

    a, b = _as_tensors(a, b)
    out = a.data - b.data

    return _record('sub', (a, b), out,
                   lambda grad: (_unbroadcast(grad, a.shape), _unbroadcast(-grad, b.shape)))


def mul(a, b):
    """Elementwise multiplication, with broadcasting."""

    if not _any_tensor(a, b):
        return np.multiply(a, b)

    a, b = _as_tensors(a, b)
    out = a.data * b.data

    return _record('mul', (a, b), out,
                   lambda grad: (_unbroadcast(grad * b.data, a.shape),
                                 _unbroadcast(grad * a.data, b.shape)))


def div(a, b):
    """Elementwise division, with broadcasting."""

    if not _any_tensor(a, b):
        return np.divide(a, b)

    a, b = _as_tensors(a, b)
    with np.errstate(divide='ignore', invalid='ignore'):
        out = a.data / b.data

    return _record('div', (a, b), out,
                   lambda grad: (_unbroadcast(grad / b.data, a.shape),
                                 _unbroadcast(-grad * a.data / b.data ** 2, b.shape)))


def neg(x):
    """Elementwise negation."""

    if not isinstance(x, Tensor):
        return np.negative(x)

    return _record('neg', (x,), -x.data, lambda grad: (-grad,))


def matmul(a, b):
    """Matrix product of two 2d inputs."""

    if not _any_tensor(a, b):
        return np.matmul(a, b)

    a, b = _as_tensors(a, b)
    if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError('Matrix shapes {} and {} do not compose.'.format(a.shape, b.shape))
    out = a.data @ b.data

    return _record('matmul', (a, b), out, lambda grad: (grad @ b.data.T, a.data.T @ grad))


def relu(x):
    """Elementwise rectifier.

    Notes
    -----
    The subgradient at 0 is taken to be 0.
    """

    if not isinstance(x, Tensor):
        return np.maximum(x, 0.)

    mask = x.data > 0

    return _record('relu', (x,), np.where(mask, x.data, 0.), lambda grad: (grad * mask,))


def exp(x):
    """Elementwise exponential."""

    if not isinstance(x, Tensor):
        with np.errstate(over='ignore'):
            return np.exp(x)

    with np.errstate(over='ignore'):
        out = np.exp(x.data)

    return _record('exp', (x,), out, lambda grad: (grad * out,))


def log(x):
    """Elementwise natural logarithm."""

    if not isinstance(x, Tensor):
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.log(x)

    with np.errstate(divide='ignore', invalid='ignore'):
        out = np.log(x.data)

    return _record('log', (x,), out, lambda grad: (grad / x.data,))


def power(x, exponent):
    """Elementwise power, with a constant scalar exponent."""

    exponent = float(exponent)

    if not isinstance(x, Tensor):
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            return np.power(x, exponent)

    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        out = np.power(x.data, exponent)

    def grad_fn(grad):
        with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
            return (grad * exponent * np.power(x.data, exponent - 1.),)

    return _record('power', (x,), out, grad_fn)


def softplus(x):
    """Elementwise softplus, log(1 + e^x)."""

    if not isinstance(x, Tensor):
        return np.logaddexp(0., x)

    return _record('softplus', (x,), np.logaddexp(0., x.data),
                   lambda grad: (grad * expit(x.data),))


def mean(x):
    """Mean over all elements."""

    if not isinstance(x, Tensor):
        return np.mean(x)

    return _record('mean', (x,), np.asarray(np.mean(x.data)),
                   lambda grad: (np.broadcast_to(grad / x.size, x.shape),))


def tsum(x):
    """Sum over all elements."""

    if not isinstance(x, Tensor):
        return np.sum(x)

    return _record('sum', (x,), np.asarray(np.sum(x.data)),
                   lambda grad: (np.broadcast_to(grad, x.shape),))


def take(x, index):
    """Select elements along the first axis, by a slice or an array of indices."""

    if not isinstance(x, Tensor):
        return np.asarray(x)[index]

    def grad_fn(grad):
        full = np.zeros(x.shape)
        np.add.at(full, index, grad)
        return (full,)

    return _record('take', (x,), x.data[index], grad_fn)


def _any_tensor(*inputs):
    """Check whether any of the inputs is a Tensor."""

    return any(isinstance(inp, Tensor) for inp in inputs)


def _as_tensors(*inputs):
    """Convert inputs to Tensor, leaving constants off of any tape."""

    return tuple(inp if isinstance(inp, Tensor) else Tensor(inp) for inp in inputs)


def _get_tape(inputs):
    """Get the single tape shared by a set of inputs, if any."""

    tapes = {id(inp.tape) : inp.tape for inp in inputs if inp.tape is not None}

    if len(tapes) > 1:
        raise TapeError('Inputs are recorded on different tapes.')

    return next(iter(tapes.values())) if tapes else None


def _record(op, inputs, out, grad_fn):
    """Wrap an output array as a Tensor, recording the operation if inputs are taped."""

    if not np.all(np.isfinite(out)):
        raise NonFiniteError('Operation {} produced non-finite values.'.format(op))

    tape = _get_tape(inputs)
    output = Tensor(np.ascontiguousarray(out, dtype=np.float64), tape=tape, _copy=False)

    if tape is not None:
        tape.record(op, inputs, output, grad_fn)

    return output


def _unbroadcast(grad, shape):
    """Sum a gradient over broadcast dimensions, to match the input shape."""

    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)

    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)

    return grad
