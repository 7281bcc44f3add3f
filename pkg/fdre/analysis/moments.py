"""Moments of density ratios, and Monte Carlo divergence estimates."""

from itertools import combinations_with_replacement

import numpy as np
from scipy.special import gammaln, logsumexp

from fdre.data.estimate import Estimate
from fdre.synth.mixture import log_ratio
from fdre.synth.samples import sample_p, sample_q

###################################################################################################
###################################################################################################

N_GROUPS = 20


def group_stderr(values, n_groups=N_GROUPS):
    """Compute the standard error of a mean, from the variance of group means.

    Parameters
    ----------
    values : 1d array
        Monte Carlo values.
    n_groups : int, optional, default: 20
        Number of groups to split the values into.

    Returns
    -------
    float
        Standard error of the mean of the values. NaN if there are fewer than 2 values.
    """

    values = np.asarray(values, dtype=float).reshape(-1)
    n_groups = min(n_groups, values.size)

    if n_groups < 2:
        return np.nan

    group_means = np.array([np.mean(group) for group in np.array_split(values, n_groups)])

    return float(np.std(group_means, ddof=1) / np.sqrt(n_groups))


def moment_estimate(spec, k, n, rng):
    """Estimate a moment of the density ratio, E_P[(dQ/dP)^k], by Monte Carlo.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    k : float
        Order of the moment, at least 1.
    n : int
        Number of samples from P.
    rng : numpy.random.Generator
        Random generator.

    Returns
    -------
    Estimate
        The moment estimate, with its standard error.
    """

    if not k >= 1:
        raise ValueError('The moment order must be at least 1.')

    samples = sample_p(spec, n, rng)
    with np.errstate(over='ignore'):
        values = np.exp(k * log_ratio(spec, samples.points))

    return Estimate(float(np.mean(values)), group_stderr(values))


def analytic_moment(spec, k):
    """Compute a moment of the density ratio, E_P[(dQ/dP)^k], exactly, for integer orders.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    k : int
        Order of the moment, a non-negative integer.

    Returns
    -------
    float
        The moment. Can be infinite if it overflows.

    Notes
    -----
    Expanding the k-th power of the mixture ratio gives a sum over multisets of modes
    {m_1, ..., m_k}, each term having expectation exp(mu^2 / 2 ||sum_i r_(m_i)||^2 - k mu^2 / 2).
    For a single mode, the moment is exp(k (k - 1) mu^2 / 2).

    Examples
    --------
    For a single mode in one dimension, with mu = 1, the second moment is e:

    >>> from fdre.synth.mixture import make_mixture_spec
    >>> round(analytic_moment(make_mixture_spec(1, kl_target=0.5), 2), 6)
    2.718282
    """

    if int(k) != k or k < 0:
        raise ValueError('Exact moments are only available for non-negative integer orders.')
    k = int(k)

    if k == 0:
        return 1.

    mu = spec.mu
    log_terms = []
    for modes in combinations_with_replacement(range(spec.n_modes), k):
        counts = np.bincount(modes, minlength=spec.n_modes)
        log_weight = gammaln(k + 1) - np.sum(gammaln(counts + 1))
        total = counts @ spec.directions
        log_terms.append(log_weight + mu ** 2 / 2. * (total @ total) - k * mu ** 2 / 2.)

    with np.errstate(over='ignore'):
        return float(np.exp(logsumexp(log_terms) - k * np.log(spec.n_modes)))


def monte_carlo_kl(spec, n, rng, direction='PQ'):
    """Estimate a KL divergence between P and Q, by Monte Carlo.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    n : int
        Number of samples.
    rng : numpy.random.Generator
        Random generator.
    direction : {'PQ', 'QP'}
        Whether to estimate KL(P || Q), as E_P[-log r], or KL(Q || P), as E_Q[log r].

    Returns
    -------
    Estimate
        The KL estimate, with its standard error.
    """

    if direction == 'PQ':
        values = -log_ratio(spec, sample_p(spec, n, rng).points)
    elif direction == 'QP':
        values = log_ratio(spec, sample_q(spec, n, rng).points)
    else:
        raise ValueError('Direction {} not understood.'.format(direction))

    return Estimate(float(np.mean(values)), group_stderr(values))
