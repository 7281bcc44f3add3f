"""Predictions from trained ratio estimators."""

import numpy as np

from fdre.core.errors import NonFiniteError
from fdre.autodiff.mlp import evaluate
from fdre.divergence.losses import Parameterization, DIRECT_EPS

###################################################################################################
###################################################################################################

def predict_ratio(trained, points):
    """Predict density ratios with a trained estimator.

    Parameters
    ----------
    trained : TrainedModel
        The trained estimator.
    points : 2d array
        Points at which to predict, of shape (n, d).

    Returns
    -------
    1d array
        Strictly positive ratio estimates, exp(T) in log-scale parameterization, or
        softplus(T) + eps in direct parameterization.

    Raises
    ------
    ShapeError
        If the points do not match the model input width.
    NonFiniteError
        If any prediction is not finite.
    """

    outputs = evaluate(trained.model, getattr(points, 'points', points))

    with np.errstate(over='ignore'):
        if trained.parameterization is Parameterization.LOG_SCALE:
            ratios = np.exp(outputs)
        else:
            ratios = np.logaddexp(0., outputs) + DIRECT_EPS

    if not np.all(np.isfinite(ratios)):
        raise NonFiniteError('Predicted ratios are not finite.')

    return ratios


def predict_energy(trained, points):
    """Predict the energy, -log of the density ratio, with a trained estimator.

    Parameters
    ----------
    trained : TrainedModel
        The trained estimator.
    points : 2d array
        Points at which to predict, of shape (n, d).

    Returns
    -------
    1d array
        Energy estimates. In log-scale parameterization, this is -T.
    """

    outputs = evaluate(trained.model, getattr(points, 'points', points))

    if trained.parameterization is Parameterization.LOG_SCALE:
        return -outputs

    return -np.log(np.logaddexp(0., outputs) + DIRECT_EPS)


def estimate_lipschitz(func, samples, n_pairs, rng):
    """Estimate the Lipschitz constant of a function, under the max norm, from random pairs.

    Parameters
    ----------
    func : callable
        Function mapping an array of points, of shape (n, d), to an array of n values.
    samples : SampleSet or 2d array
        Points from which pairs are drawn.
    n_pairs : int
        Number of pairs to draw.
    rng : numpy.random.Generator
        Random generator.

    Returns
    -------
    float
        Maximum over pairs of |func(y) - func(x)| / ||y - x||_inf.
        Coincident pairs are skipped, and 0 is returned if no valid pair is drawn.

    Notes
    -----
    The estimate is a lower bound on the true Lipschitz constant over the sample support.

    Examples
    --------
    For an affine function on the line, the estimate is the absolute slope:

    >>> rng = np.random.default_rng(0)
    >>> pts = rng.standard_normal((50, 1))
    >>> round(estimate_lipschitz(lambda x: -2. * x[:, 0] + 1., pts, 100, rng), 8)
    2.0
    """

    points = np.asarray(getattr(samples, 'points', samples), dtype=float)
    if points.ndim != 2 or points.shape[0] < 2:
        raise ValueError('At least two sample points are required.')
    if int(n_pairs) != n_pairs or n_pairs < 1:
        raise ValueError('The number of pairs must be a positive integer.')

    first = rng.integers(points.shape[0], size=int(n_pairs))
    second = rng.integers(points.shape[0], size=int(n_pairs))

    dists = np.max(np.abs(points[first] - points[second]), axis=1)
    valid = dists > 0
    if not np.any(valid):
        return 0.

    first, second, dists = first[valid], second[valid], dists[valid]
    values = np.asarray(func(points), dtype=float).reshape(-1)

    return float(np.max(np.abs(values[first] - values[second]) / dists))
