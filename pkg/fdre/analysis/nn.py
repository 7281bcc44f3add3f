"""Nearest neighbor distance moments under the max norm, checked against their bounds.

Notes
-----
Nearest neighbors are found by brute force, with chebyshev distances from `scipy.spatial`.
Ties are broken by taking the lowest index.
"""

from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.spatial.distance import cdist

from fdre.core.errors import HypothesisError
from fdre.core.logs import check_log
from fdre.synth.mixture import MixtureSpec, log_ratio
from fdre.synth.samples import sample_p, empirical_diag
from fdre.analysis.moments import group_stderr, analytic_moment, moment_estimate

###################################################################################################
###################################################################################################

LOWER_SLACK = 0.25
MAX_REL_STDERR = 0.5


@dataclass(frozen=True)
class NnMomentEstimate():
    """A Monte Carlo estimate of a nearest neighbor distance moment, compared to a bound.

    Attributes
    ----------
    kind : {'upper', 'weighted_upper', 'lower'}
        Which bound the estimate is compared to.
    n_points : int
        Number of points, N, the nearest neighbor is taken among.
    d : int
        Dimension.
    order : float
        Order of the moment, kappa or p.
    estimate : float
        The estimate.
    stderr : float
        Standard error of the estimate.
    bound : float
        The bound value.
    satisfied : bool or None
        Whether the estimate is consistent with the bound. None if inconclusive.
    trend : tuple of tuple
        For lower checks, the (N, estimate, stderr) values over the grid of N.
    """

    kind: str
    n_points: int
    d: int
    order: float
    estimate: float
    stderr: float
    bound: float
    satisfied: object
    trend: tuple = field(default_factory=tuple)

    def __post_init__(self):

        if self.estimate < 0 or self.stderr < 0:
            raise ValueError('Estimates and standard errors can not be negative.')


    def as_dict(self):
        """Get the estimate as a JSON serializable dictionary."""

        return asdict(self)


def nearest_neighbors(points, queries):
    """Find the nearest neighbor, under the max norm, of each query point.

    Parameters
    ----------
    points : 2d array
        Candidate points, of shape (N, d).
    queries : 2d array
        Query points, of shape (n, d).

    Returns
    -------
    indices : 1d array of int
        Index of the nearest candidate for each query, the lowest index if tied.
    dists : 1d array
        Max norm distance from each query to its nearest candidate.
    """

    dists = cdist(queries, points, metric='chebyshev')
    indices = np.argmin(dists, axis=1)

    return indices, dists[np.arange(len(queries)), indices]


def nn_moment_upper_check(domain, n_points, d, kappa, trials, rng, logging=None):
    """Check the upper bound on a nearest neighbor distance moment.

    Parameters
    ----------
    domain : 'cube' or 2d array
        Sampling distribution: the uniform unit cube, or uniform resampling of a point cloud.
    n_points : int
        Number of points, N.
    d : int
        Dimension. Must match the point cloud, if given.
    kappa : float
        Order of the moment, in [1, d].
    trials : int
        Number of independent trials, each drawing a query point and N points.
    rng : numpy.random.Generator
        Random generator.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for progress messages.

    Returns
    -------
    NnMomentEstimate
        The estimate of E||X_(1)(x) - x||^kappa, against the bound
        diag^kappa (1 / (N + 1))^(kappa / d). The bound is satisfied if the estimate is
        at most the bound plus 3 standard errors.

    Raises
    ------
    HypothesisError
        If kappa is outside [1, d].
    """

    if not 1 <= kappa <= d:
        raise HypothesisError('The moment order must be between 1 and the dimension.')
    _check_counts(n_points, trials)

    draw, diag = _get_sampler(domain, d)

    values = np.empty(trials)
    for trial in range(trials):
        pts = draw(rng, n_points + 1)
        _, dists = nearest_neighbors(pts[1:], pts[:1])
        values[trial] = dists[0] ** kappa

    estimate, stderr = float(np.mean(values)), _nonneg(group_stderr(values))
    bound = diag ** kappa * (1. / (n_points + 1)) ** (kappa / d)

    check_log(logging)('NN upper check: N={}, d={}, kappa={}: {:.4g} vs bound {:.4g}'.format(
        n_points, d, kappa, estimate, bound))

    return NnMomentEstimate('upper', n_points, d, kappa, estimate, stderr, bound,
                            bool(estimate <= bound + 3 * stderr))


def nn_moment_weighted_upper_check(spec, n_points, p, trials, rng, logging=None):
    """Check the upper bound on a ratio weighted nearest neighbor distance moment.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition. Points are drawn from P.
    n_points : int
        Number of points, N.
    p : float
        Order of the moment, in [1, d / 2].
    trials : int
        Number of independent trials.
    rng : numpy.random.Generator
        Random generator.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for progress messages.

    Returns
    -------
    NnMomentEstimate
        The estimate of N^(1/d) E_P[r(x)^p ||X_(1)(x) - x||^p]^(1/p), against the bound
        diag E_P[r^(2p)]^(1/(2p)), with diag from the bounding box of all drawn points.

    Raises
    ------
    HypothesisError
        If p is outside [1, d / 2].
    """

    if not 1 <= p <= spec.d / 2:
        raise HypothesisError('The moment order must be between 1 and half the dimension.')
    _check_counts(n_points, trials)

    values, pooled = np.empty(trials), []
    for trial in range(trials):
        pts = sample_p(spec, n_points + 1, rng).points
        _, dists = nearest_neighbors(pts[1:], pts[:1])
        values[trial] = np.exp(p * log_ratio(spec, pts[0])) * dists[0] ** p
        pooled.append(pts)

    estimate, stderr = _scaled_root(values, n_points, spec.d, p)
    bound = empirical_diag(*pooled) * _ratio_moment(spec, 2 * p, rng) ** (1. / (2 * p))

    check_log(logging)('NN weighted upper check: N={}, p={}: {:.4g} vs bound {:.4g}'.format(
        n_points, p, estimate, bound))

    return NnMomentEstimate('weighted_upper', n_points, spec.d, p, estimate, stderr, bound,
                            bool(estimate <= bound + 3 * stderr))


def nn_moment_lower_check(spec, n_values, p, trials, rng, d=None, logging=None):
    """Check the asymptotic lower bound on a ratio weighted nearest neighbor distance moment.

    Parameters
    ----------
    spec : MixtureSpec or 'cube'
        The problem definition, with points drawn from P, or the uniform unit cube,
        with a ratio of 1.
    n_values : int or list of int
        Number of points, N, or a grid of increasing values of N.
    p : float
        Order of the moment, at least 1.
    trials : int
        Number of independent trials, at each N.
    rng : numpy.random.Generator
        Random generator.
    d : int, optional
        Dimension. Required if `spec` is 'cube'.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for progress messages.

    Returns
    -------
    NnMomentEstimate
        The estimate of N^(1/d) E[r(X_(1)(x))^p ||X_(1)(x) - x||^p]^(1/p), at the largest N,
        against the constant exp(-1) E_P[r^p]^(1/p), with the trend over all N.

    Notes
    -----
    The bound holds in the limit of large N, so the check is directional: it is satisfied
    if the estimate at the largest N is at least 0.75 times the bound. It is inconclusive,
    with `satisfied` None, if the relative standard error of the moment exceeds 50%.
    """

    if not p >= 1:
        raise ValueError('The moment order must be at least 1.')

    n_values = sorted(np.atleast_1d(n_values).astype(int).tolist())
    for n_points in n_values:
        _check_counts(n_points, trials)

    if isinstance(spec, MixtureSpec):
        d = spec.d
        draw = lambda rng, n_draw: sample_p(spec, n_draw, rng).points
        weight = lambda pts: np.exp(p * log_ratio(spec, pts))
        target = np.exp(-1.) * _ratio_moment(spec, p, rng) ** (1. / p)
    else:
        draw, _ = _get_sampler(spec, d)
        weight = lambda pts: np.ones(len(pts))
        target = np.exp(-1.)

    run_log = check_log(logging)
    trend, rel_se = [], np.nan
    for n_points in n_values:

        values = np.empty(trials)
        for trial in range(trials):
            pts = draw(rng, n_points + 1)
            ind, dists = nearest_neighbors(pts[1:], pts[:1])
            values[trial] = weight(pts[1:][ind])[0] * dists[0] ** p

        estimate, stderr = _scaled_root(values, n_points, d, p)
        moment = np.mean(values)
        rel_se = group_stderr(values) / moment if moment > 0 else np.inf
        trend.append((n_points, estimate, stderr))

        run_log('NN lower check: N={}, p={}: {:.4g} vs target {:.4g}'.format(
            n_points, p, estimate, target))

    n_points, estimate, stderr = trend[-1]
    satisfied = None if not rel_se <= MAX_REL_STDERR else \
        bool(estimate >= (1. - LOWER_SLACK) * target)

    return NnMomentEstimate('lower', n_points, d, p, estimate, stderr, float(target),
                            satisfied, tuple(trend))


def _get_sampler(domain, d):
    """Get a sampling function and diameter for a domain."""

    if isinstance(domain, str):
        if domain != 'cube':
            raise ValueError('Domain {} not understood.'.format(domain))
        if d is None or int(d) != d or d < 1:
            raise ValueError('A positive dimension is required for the cube domain.')
        return (lambda rng, n_draw: rng.random((n_draw, int(d)))), 1.

    cloud = np.asarray(domain, dtype=float)
    if cloud.ndim != 2 or cloud.shape[0] < 1 or cloud.shape[1] != d:
        raise ValueError('The point cloud must be non-empty, with dimension {}.'.format(d))

    return (lambda rng, n_draw: cloud[rng.integers(len(cloud), size=n_draw)]), \
        empirical_diag(cloud)


def _ratio_moment(spec, k, rng):
    """Get a ratio moment, exactly for integer orders, or else by Monte Carlo."""

    if int(k) == k:
        return analytic_moment(spec, int(k))

    return moment_estimate(spec, k, 10 ** 5, rng).value


def _scaled_root(values, n_points, d, p):
    """Compute N^(1/d) mean(values)^(1/p), with a delta method standard error."""

    moment = float(np.mean(values))
    moment_se = _nonneg(group_stderr(values))
    scale = n_points ** (1. / d)

    estimate = scale * moment ** (1. / p)
    stderr = scale * (1. / p) * moment ** (1. / p - 1.) * moment_se if moment > 0 else 0.

    return estimate, stderr


def _nonneg(stderr):
    """Replace an undefined standard error by 0."""

    return 0. if not np.isfinite(stderr) else stderr


def _check_counts(n_points, trials):
    """Check the number of points and trials."""

    if int(n_points) != n_points or n_points < 1:
        raise ValueError('The number of points must be a positive integer.')
    if int(trials) != trials or trials < 1:
        raise ValueError('The number of trials must be a positive integer.')
