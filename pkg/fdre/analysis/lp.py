"""Lp errors of ratio estimators."""

import numpy as np

from fdre.data.estimate import Estimate
from fdre.synth.mixture import true_ratio
from fdre.train.predict import predict_ratio

###################################################################################################
###################################################################################################

def lp_error(model, spec, test_p, p):
    """Compute the Lp(P) error of a ratio estimator, by Monte Carlo.

    Parameters
    ----------
    model : TrainedModel or callable
        The ratio estimator. A callable maps an array of points to an array of ratios.
    spec : MixtureSpec
        The problem definition, which gives the true ratio.
    test_p : SampleSet or 2d array
        Test samples from P.
    p : float
        Order of the error, at least 1.

    Returns
    -------
    Estimate
        The error, (mean |r(x) - phi(x)|^p)^(1/p), with a delta method standard error.

    Examples
    --------
    The estimator phi = 1 is exact when P = Q:

    >>> from fdre.synth import make_mixture_spec, sample_p
    >>> spec = make_mixture_spec(2, kl_target=0.)
    >>> test_p = sample_p(spec, 100, np.random.default_rng(0))
    >>> lp_error(lambda x: np.ones(len(x)), spec, test_p, 2).value
    0.0
    """

    if not p >= 1:
        raise ValueError('The error order must be at least 1.')

    points = np.asarray(getattr(test_p, 'points', test_p), dtype=float)
    if points.ndim != 2 or points.shape[0] == 0:
        raise ValueError('The test set must be non-empty.')

    estimates = model(points) if callable(model) else predict_ratio(model, points)
    values = np.abs(true_ratio(spec, points) - np.asarray(estimates, dtype=float)) ** p

    moment = float(np.mean(values))
    value = moment ** (1. / p)

    if values.size < 2:
        return Estimate(value, np.nan)

    moment_se = float(np.std(values, ddof=1) / np.sqrt(values.size))
    stderr = (1. / p) * moment ** (1. / p - 1.) * moment_se if moment > 0 else 0.

    return Estimate(value, stderr)
