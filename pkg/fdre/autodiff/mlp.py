"""Multilayer perceptron model, used as the ratio estimator network."""

import numpy as np

from fdre.core.errors import ShapeError, NonFiniteError
from fdre.autodiff.tensor import Tensor
from fdre.autodiff.ops import matmul, add, relu

###################################################################################################
###################################################################################################

class MlpModel():
    """A multilayer perceptron with rectifier hidden layers and a scalar, linear output.

    Attributes
    ----------
    widths : tuple of int
        Layer widths, from the input width d, through the hidden widths, to the output width 1.
    weights : tuple of 2d array
        Weight matrix for each layer, of shape (fan_in, fan_out).
    biases : tuple of 1d array
        Bias vector for each layer, of shape (fan_out,).

    Notes
    -----
    Model objects are immutable: parameter arrays are read-only, and updates
    create a new object, with `with_params`.
    """

    def __init__(self, weights, biases):
        """Initialize a MlpModel object.

        Parameters
        ----------
        weights : list of 2d array
            Weight matrix for each layer.
        biases : list of 1d array
            Bias vector for each layer.

        Raises
        ------
        ShapeError
            If layer shapes do not compose, or the output is not of width 1.
        """

        if len(weights) != len(biases) or not weights:
            raise ShapeError('There must be one bias vector for each weight matrix.')

        self.weights = tuple(_freeze(weight) for weight in weights)
        self.biases = tuple(_freeze(bias) for bias in biases)
        self.widths = (self.weights[0].shape[0],) + tuple(wt.shape[1] for wt in self.weights)

        self._check_shapes()


    def __repr__(self):

        return 'MlpModel(widths={})'.format(self.widths)


    @property
    def input_width(self):
        """The input width of the model."""

        return self.widths[0]


    @property
    def n_layers(self):
        """The number of layers in the model, including the output layer."""

        return len(self.weights)


    @property
    def params(self):
        """Model parameters, as a list alternating weights and biases for each layer."""

        return [param for layer in zip(self.weights, self.biases) for param in layer]


    @property
    def n_params(self):
        """The total number of scalar parameters."""

        return sum(param.size for param in self.params)


    def with_params(self, params):
        """Create a new model with the same architecture and new parameter values.

        Parameters
        ----------
        params : list of ndarray
            Parameters, in the order given by the `params` attribute.

        Returns
        -------
        MlpModel
            New model object.
        """

        if len(params) != 2 * self.n_layers:
            raise ShapeError('Number of parameters does not match the model.')
        for new, old in zip(params, self.params):
            if np.shape(new) != old.shape:
                raise ShapeError('Parameter shape {} does not match {}.'.format(
                    np.shape(new), old.shape))

        return MlpModel(params[0::2], params[1::2])


    def _check_shapes(self):
        """Check that the layer shapes compose, and end in a scalar output."""

        for weight, bias in zip(self.weights, self.biases):
            if weight.ndim != 2 or bias.shape != (weight.shape[1],):
                raise ShapeError('Layer with weights {} and bias {} is malformed.'.format(
                    weight.shape, bias.shape))

        for upper, lower in zip(self.weights[:-1], self.weights[1:]):
            if upper.shape[1] != lower.shape[0]:
                raise ShapeError('Layer shapes {} and {} do not compose.'.format(
                    upper.shape, lower.shape))

        if self.widths[-1] != 1:
            raise ShapeError('The model output must be of width 1.')


def make_widths(n_inputs, hidden_width=1024, n_hidden=5):
    """Make the list of layer widths for a model.

    Parameters
    ----------
    n_inputs : int
        Input width, the dimension of the data.
    hidden_width : int, optional, default: 1024
        Width of each hidden layer.
    n_hidden : int, optional, default: 5
        Number of hidden layers.

    Returns
    -------
    list of int
        Layer widths, ending with the output width of 1.
    """

    return [n_inputs] + [hidden_width] * n_hidden + [1]


def init_mlp(widths, rng):
    """Initialize a model with scaled uniform weights and zero biases.

    Parameters
    ----------
    widths : list of int
        Layer widths, from the input width to the output width of 1.
    rng : numpy.random.Generator
        Random generator to draw the weights from.

    Returns
    -------
    MlpModel
        Initialized model.

    Notes
    -----
    Weights are drawn uniformly within +/- sqrt(6 / (fan_in + fan_out)).

    Examples
    --------
    Initialize a model with two hidden layers:

    >>> model = init_mlp([3, 16, 16, 1], np.random.default_rng(0))
    >>> model.widths
    (3, 16, 16, 1)
    """

    weights, biases = [], []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        bound = np.sqrt(6. / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))

    return MlpModel(weights, biases)


def zeros_mlp(widths):
    """Initialize a model with all weights and biases set to zero.

    Parameters
    ----------
    widths : list of int
        Layer widths, from the input width to the output width of 1.

    Returns
    -------
    MlpModel
        Model whose output is zero for every input.
    """

    shapes = list(zip(widths[:-1], widths[1:]))

    return MlpModel([np.zeros((fan_in, fan_out)) for fan_in, fan_out in shapes],
                    [np.zeros(fan_out) for _, fan_out in shapes])


def forward(model, batch, tape):
    """Compute the network output, recording the computation on a tape.

    Parameters
    ----------
    model : MlpModel
        Model to evaluate.
    batch : Tensor or 2d array
        Input points, of shape (n, d).
    tape : Tape
        Tape to record on. Each model parameter is watched, in the order of `model.params`.

    Returns
    -------
    Tensor
        Network outputs, of shape (n, 1).

    Raises
    ------
    ShapeError
        If the batch width does not match the model input width.
    NonFiniteError
        If the batch contains non-finite values.
    """

    batch = batch if isinstance(batch, Tensor) else Tensor(batch)
    _check_batch(model, batch.data)

    params = [tape.watch(param) for param in model.params]

    return _propagate(params, tape.constant(batch))


def evaluate(model, points):
    """Compute the network output directly, without recording a tape.

    Parameters
    ----------
    model : MlpModel
        Model to evaluate.
    points : 2d array
        Input points, of shape (n, d).

    Returns
    -------
    1d array
        Network outputs, of length n.
    """

    points = np.asarray(points, dtype=np.float64)
    _check_batch(model, points)
    if not np.all(np.isfinite(points)):
        raise NonFiniteError('Input points must be finite.')

    return _propagate(model.params, points)[:, 0]


def _propagate(params, inputs):
    """Propagate inputs through layers, given parameters as Tensors or arrays."""

    hidden = inputs
    n_layers = len(params) // 2

    for ind in range(n_layers):
        hidden = add(matmul(hidden, params[2 * ind]), params[2 * ind + 1])
        if ind < n_layers - 1:
            hidden = relu(hidden)

    return hidden


def _check_batch(model, points):
    """Check an input batch against the model input width."""

    if points.ndim != 2 or points.shape[1] != model.input_width:
        raise ShapeError('Batch of shape {} does not match model input width {}.'.format(
            points.shape, model.input_width))


def _freeze(array):
    """Copy an array as a read-only float64 array."""

    array = np.array(array, dtype=np.float64, copy=True)
    array.flags.writeable = False

    return array
