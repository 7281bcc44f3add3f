"""Tensor and gradient tape objects for reverse-mode automatic differentiation."""

from collections import namedtuple

import numpy as np

from fdre.core.errors import NonFiniteError, ShapeError, TapeError

###################################################################################################
###################################################################################################

class Node(namedtuple('Node', ['op', 'inputs', 'output', 'grad_fn'])):
    """A recorded operation on a gradient tape.

    Attributes
    ----------
    op : str
        Name of the operation.
    inputs : tuple of Tensor
        Inputs to the operation.
    output : Tensor
        Output of the operation.
    grad_fn : callable
        Maps the gradient with respect to the output to a tuple of gradients
        with respect to each input (None for inputs that need no gradient).
    """
    __slots__ = ()


class Tensor():
    """A dense array of 64-bit floats, optionally recorded on a gradient tape.

    Attributes
    ----------
    data : ndarray
        Read-only, contiguous, row-major array of finite float64 values.
    tape : Tape or None
        The tape on which operations on this tensor are recorded.

    Notes
    -----
    Tensors are immutable snapshots. Non-finite values raise a NonFiniteError on creation,
    so NaN or Inf values are caught at every operation boundary.
    """

    __slots__ = ('data', 'tape')
    __array_ufunc__ = None

    def __init__(self, data, tape=None, _copy=True):
        """Initialize a Tensor object.

        Parameters
        ----------
        data : array_like
            Values of the tensor.
        tape : Tape, optional
            Tape to record operations on.

        Examples
        --------
        Create a constant tensor, not recorded on any tape:

        >>> Tensor([[1., 2.], [3., 4.]]).shape
        (2, 2)
        """

        data = np.array(data, dtype=np.float64, order='C', copy=True) if _copy else data
        if not np.all(np.isfinite(data)):
            raise NonFiniteError('Tensor values must be finite.')
        data.flags.writeable = False

        self.data = data
        self.tape = tape


    def __repr__(self):

        return 'Tensor(shape={}, taped={})'.format(self.shape, self.tape is not None)


    def __len__(self):

        return len(self.data)


    @property
    def shape(self):
        """The shape of the tensor."""

        return self.data.shape


    @property
    def size(self):
        """The number of elements in the tensor."""

        return self.data.size


    def item(self):
        """Get the value of a single element tensor, as a float."""

        if self.size != 1:
            raise ShapeError('Only single element tensors can be converted to a scalar.')

        return float(self.data.reshape(-1)[0])


    def numpy(self):
        """Get a writeable copy of the tensor values."""

        return self.data.copy()


    # Operators dispatch to the primitive operations, imported here to avoid circular imports
    def __add__(self, other):
        from fdre.autodiff.ops import add
        return add(self, other)

    def __radd__(self, other):
        from fdre.autodiff.ops import add
        return add(other, self)

    def __sub__(self, other):
        from fdre.autodiff.ops import sub
        return sub(self, other)

    def __rsub__(self, other):
        from fdre.autodiff.ops import sub
        return sub(other, self)

    def __mul__(self, other):
        from fdre.autodiff.ops import mul
        return mul(self, other)

    def __rmul__(self, other):
        from fdre.autodiff.ops import mul
        return mul(other, self)

    def __truediv__(self, other):
        from fdre.autodiff.ops import div
        return div(self, other)

    def __rtruediv__(self, other):
        from fdre.autodiff.ops import div
        return div(other, self)

    def __neg__(self):
        from fdre.autodiff.ops import neg
        return neg(self)

    def __pow__(self, exponent):
        from fdre.autodiff.ops import power
        return power(self, exponent)

    def __matmul__(self, other):
        from fdre.autodiff.ops import matmul
        return matmul(self, other)

    def __rmatmul__(self, other):
        from fdre.autodiff.ops import matmul
        return matmul(other, self)

    def __getitem__(self, index):
        from fdre.autodiff.ops import take
        return take(self, index)


class Tape():
    """A gradient tape, recording operations for a single backward pass.

    Attributes
    ----------
    nodes : list of Node
        Recorded operations, in the order they were executed.
    watched : list of Tensor
        Leaf tensors for which gradients are returned by the backward pass.
    consumed : bool
        Whether the backward pass has been run on this tape.

    Notes
    -----
    Nodes are recorded as operations execute, so every node's inputs precede it.
    A tape supports one backward pass; use `reset` to record a new forward pass.
    """

    def __init__(self):
        """Initialize a Tape object."""

        self.nodes = []
        self.watched = []
        self.consumed = False


    def __len__(self):

        return len(self.nodes)


    def watch(self, data):
        """Add a leaf tensor, whose gradient is computed by the backward pass.

        Parameters
        ----------
        data : array_like or Tensor
            Values of the leaf tensor.

        Returns
        -------
        Tensor
            Leaf tensor recorded on this tape.
        """

        self._check_active()

        tensor = Tensor(getattr(data, 'data', data), tape=self)
        self.watched.append(tensor)

        return tensor


    def constant(self, data):
        """Add a leaf tensor that does not require a gradient.

        Parameters
        ----------
        data : array_like or Tensor
            Values of the constant.

        Returns
        -------
        Tensor
            Constant tensor attached to this tape.
        """

        self._check_active()

        return Tensor(getattr(data, 'data', data), tape=self)


    def record(self, op, inputs, output, grad_fn):
        """Record an operation.

        Parameters
        ----------
        op : str
            Name of the operation.
        inputs : tuple of Tensor
            Inputs to the operation.
        output : Tensor
            Output of the operation.
        grad_fn : callable
            Local gradient rule for the operation.
        """

        self._check_active()
        self.nodes.append(Node(op, inputs, output, grad_fn))


    def reset(self):
        """Clear the tape, so that it can record a new forward pass."""

        self.nodes = []
        self.watched = []
        self.consumed = False


    def backward(self, root):
        """Run the backward pass from a scalar root.

        Parameters
        ----------
        root : Tensor
            Scalar tensor produced on this tape.

        Returns
        -------
        grads : list of ndarray
            Gradient of the root with respect to each watched tensor, in watch order.

        Raises
        ------
        TapeError
            If the tape has already been consumed, or the root was not recorded on this tape.
        ShapeError
            If the root is not a scalar.
        """

        self._check_active()

        if not isinstance(root, Tensor) or root.tape is not self:
            raise TapeError('The loss node was not produced on this tape.')
        if root.size != 1:
            raise ShapeError('Backward requires a scalar root, got shape {}.'.format(root.shape))

        adjoints = {id(root) : np.ones(root.shape)}

        for node in reversed(self.nodes):

            grad_out = adjoints.pop(id(node.output), None)
            if grad_out is None:
                continue

            for tensor, grad in zip(node.inputs, node.grad_fn(grad_out)):
                if grad is None or tensor.tape is not self:
                    continue
                key = id(tensor)
                adjoints[key] = adjoints[key] + grad if key in adjoints else grad

        grads = [adjoints.get(id(tensor), np.zeros(tensor.shape)) for tensor in self.watched]
        self.consumed = True

        return grads


    def _check_active(self):
        """Check the tape has not already been consumed by a backward pass."""

        if self.consumed:
            raise TapeError('Tape has been consumed by a backward pass - reset it first.')


def backward(tape, loss_node):
    """Compute gradients of a scalar loss with respect to every watched tensor on a tape.

    Parameters
    ----------
    tape : Tape
        Tape that recorded the forward pass.
    loss_node : Tensor
        Scalar loss produced on the tape.

    Returns
    -------
    list of ndarray
        Gradients, in the order the tensors were watched, which for a model forward
        pass is the order of the model parameters.

    Examples
    --------
    Gradient of a linear function, with respect to its weights:

    >>> from fdre.autodiff.ops import tsum
    >>> tape = Tape()
    >>> w = tape.watch([1., 2.])
    >>> backward(tape, tsum(w * [3., 4.]))[0]
    array([3., 4.])
    """

    return tape.backward(loss_node)
