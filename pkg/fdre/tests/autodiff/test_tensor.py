"""Tests for fdre.autodiff.tensor."""

from pytest import raises

import numpy as np

from fdre.core.errors import NonFiniteError, ShapeError, TapeError
from fdre.autodiff.ops import tsum, mean, mul
from fdre.autodiff.tensor import *

###################################################################################################
###################################################################################################

def test_tensor():

    tensor = Tensor([[1., 2.], [3., 4.]])

    assert tensor.shape == (2, 2)
    assert tensor.size == 4
    assert tensor.data.dtype == np.float64
    assert tensor.data.flags.c_contiguous
    assert not tensor.data.flags.writeable
    assert tensor.tape is None

def test_tensor_copy():

    values = np.array([1., 2.])
    tensor = Tensor(values)
    values[0] = 10.

    assert tensor.data[0] == 1.
    assert tensor.numpy().flags.writeable

def test_tensor_non_finite():

    with raises(NonFiniteError):
        Tensor([1., np.nan])
    with raises(NonFiniteError):
        Tensor([np.inf])

def test_tensor_item():

    assert Tensor(2.5).item() == 2.5

    with raises(ShapeError):
        Tensor([1., 2.]).item()

def test_tensor_operators():

    tensor = Tensor([1., 2.])

    assert np.array_equal((tensor + 1).data, [2., 3.])
    assert np.array_equal((1 - tensor).data, [0., -1.])
    assert np.array_equal((tensor * tensor).data, [1., 4.])
    assert np.array_equal((2 / tensor).data, [2., 1.])
    assert np.array_equal((-tensor).data, [-1., -2.])
    assert np.array_equal((tensor ** 2).data, [1., 4.])
    assert np.array_equal(tensor[1:].data, [2.])

def test_tensor_array_left_operand():

    result = np.array([1., 1.]) + Tensor([1., 2.])

    assert isinstance(result, Tensor)
    assert np.array_equal(result.data, [2., 3.])

def test_tape_records_in_order():

    tape = Tape()
    wt = tape.watch([1., 2.])
    out = tsum(mul(wt, wt))

    assert len(tape) == 2
    assert [node.op for node in tape.nodes] == ['mul', 'sum']
    assert tape.nodes[-1].output is out

def test_backward_linear():

    tape = Tape()
    wt = tape.watch([1., 2., 3.])
    xs = np.array([4., 5., 6.])

    grads = backward(tape, tsum(wt * xs))

    assert np.array_equal(grads[0], xs)
    assert tape.consumed

def test_backward_constant_loss():

    tape = Tape()
    wt = tape.watch(np.ones((2, 2)))
    loss = mean(tape.constant([1., 2.]))

    grads = backward(tape, loss)

    assert np.array_equal(grads[0], np.zeros((2, 2)))

def test_backward_shared_input():

    tape = Tape()
    wt = tape.watch([3.])

    # d/dw (w * w + w) = 2w + 1
    grads = backward(tape, tsum(wt * wt + wt))

    assert np.array_equal(grads[0], [7.])

def test_backward_errors():

    tape = Tape()
    wt = tape.watch([1., 2.])

    with raises(ShapeError):
        backward(tape, wt * 2)

    with raises(TapeError):
        backward(tape, tsum(Tensor([1., 2.])))

    with raises(TapeError):
        backward(Tape(), tsum(wt))

def test_tape_consumed():

    tape = Tape()
    wt = tape.watch([1.])
    loss = tsum(wt)
    backward(tape, loss)

    with raises(TapeError):
        backward(tape, loss)
    with raises(TapeError):
        tape.watch([2.])

    tape.reset()
    wt = tape.watch([2.])
    assert np.array_equal(backward(tape, tsum(wt * 3))[0], [3.])
