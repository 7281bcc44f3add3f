"""Sampling from synthetic problems."""

from enum import Enum

import numpy as np

from fdre.core.errors import ShapeError
from fdre.synth.rng import derive_rng

###################################################################################################
###################################################################################################

class Source(str, Enum):
    """Distribution that a sample set was drawn from."""

    P = 'P'
    Q = 'Q'
    MU = 'mu'


class Split(str, Enum):
    """Role of a sample set in an experiment."""

    TRAIN = 'train'
    VAL = 'val'
    TEST = 'test'


class SampleSet():
    """A set of i.i.d. samples from a synthetic problem.

    Attributes
    ----------
    points : 2d array
        Samples, with shape (n, d). Read-only.
    source : Source
        Distribution the samples were drawn from.
    spec : MixtureSpec
        The problem the samples were drawn from.
    split : Split or None
        Role of the samples in an experiment.
    modes : 1d array of int or None
        Mode index of each sample, for samples drawn from Q.
    """

    def __init__(self, points, source, spec, split=None, modes=None):
        """Initialize a SampleSet object.

        Parameters
        ----------
        points : array_like
            Samples, with shape (n, d).
        source : Source or {'P', 'Q', 'mu'}
            Distribution the samples were drawn from.
        spec : MixtureSpec
            The problem the samples were drawn from.
        split : Split or {'train', 'val', 'test'}, optional
            Role of the samples in an experiment.
        modes : array_like of int, optional
            Mode index of each sample.
        """

        points = np.array(points, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ShapeError('Samples must be a 2d array with at least one row.')
        if points.shape[1] != spec.d:
            raise ShapeError('Samples must have {} columns.'.format(spec.d))
        points.flags.writeable = False

        self.points = points
        self.source = Source(source)
        self.spec = spec
        self.split = Split(split) if split is not None else None
        self.modes = np.asarray(modes, dtype=int) if modes is not None else None


    def __repr__(self):

        split = self.split.value if self.split else None
        return 'SampleSet(n={}, d={}, source={}, split={})'.format(
            self.n, self.d, self.source.value, split)


    def __len__(self):

        return self.n


    @property
    def n(self):
        """The number of samples."""

        return self.points.shape[0]


    @property
    def d(self):
        """The dimension of the samples."""

        return self.points.shape[1]


def sample_p(spec, n, rng, split=None):
    """Draw samples from P, the standard normal distribution.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    n : int
        Number of samples.
    rng : numpy.random.Generator
        Random generator.
    split : {'train', 'val', 'test'}, optional
        Role of the samples.

    Returns
    -------
    SampleSet
        The samples.
    """

    n = _check_n(n)

    return SampleSet(rng.standard_normal((n, spec.d)), Source.P, spec, split)


def sample_q(spec, n, rng, split=None):
    """Draw samples from Q, the mixture of shifted normal distributions.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    n : int
        Number of samples.
    rng : numpy.random.Generator
        Random generator.
    split : {'train', 'val', 'test'}, optional
        Role of the samples.

    Returns
    -------
    SampleSet
        The samples, with the mode of each sample.

    Notes
    -----
    Each sample picks a mode uniformly at random, and is then drawn from N(mu r_m, I).
    """

    n = _check_n(n)

    modes = rng.integers(spec.n_modes, size=n)
    points = rng.standard_normal((n, spec.d)) + spec.mu * spec.directions[modes]

    return SampleSet(points, Source.Q, spec, split, modes)


def sample_mu(spec, n, rng, split=None):
    """Draw samples from the mixture mu = (P + Q) / 2.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    n : int
        Number of samples.
    rng : numpy.random.Generator
        Random generator.
    split : {'train', 'val', 'test'}, optional
        Role of the samples.

    Returns
    -------
    SampleSet
        The samples.
    """

    n = _check_n(n)

    from_q = rng.random(n) < 0.5
    modes = rng.integers(spec.n_modes, size=n)
    points = rng.standard_normal((n, spec.d)) + \
        spec.mu * spec.directions[modes] * from_q[:, None]

    return SampleSet(points, Source.MU, spec, split)


def make_splits(spec, n_train, n_val, n_test, seed, trial=0):
    """Draw train, validation and test samples from P and Q, on independent streams.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    n_train, n_val, n_test : int
        Number of samples, per distribution, for each split.
    seed : int
        Master seed.
    trial : int, optional, default: 0
        Index of the trial.

    Returns
    -------
    dict
        Sample sets, keyed by (split, source), such as ('train', 'P').

    Examples
    --------
    Draw a small set of splits:

    >>> from fdre.synth.mixture import make_mixture_spec
    >>> splits = make_splits(make_mixture_spec(2), 10, 5, 5, seed=0)
    >>> splits['val', 'Q'].n
    5
    """

    samplers = {'P' : sample_p, 'Q' : sample_q}
    sizes = {'train' : n_train, 'val' : n_val, 'test' : n_test}

    splits = {}
    for split, n_samples in sizes.items():
        for source, sampler in samplers.items():
            rng = derive_rng(seed, trial, split, source)
            splits[split, source] = sampler(spec, n_samples, rng, split)

    return splits


def empirical_diag(*samples):
    """Compute the side length of the bounding box of a set of samples, under the max norm.

    Parameters
    ----------
    *samples : SampleSet or array_like
        Samples to pool, each with shape (n, d).

    Returns
    -------
    float
        The maximum, over coordinates, of the range of the pooled samples.

    Notes
    -----
    This is used as a proxy for the diameter of the domain, which is unbounded for normal data.

    Examples
    --------
    >>> empirical_diag(np.array([[0., 0.], [1., 3.]]))
    3.0
    """

    arrays = [np.atleast_2d(np.asarray(getattr(smp, 'points', smp), dtype=float))
              for smp in samples]
    arrays = [arr for arr in arrays if arr.size > 0]

    if not arrays:
        raise ValueError('At least one point is required.')

    pooled = np.concatenate(arrays, axis=0)

    return float(np.max(pooled.max(axis=0) - pooled.min(axis=0)))


def _check_n(n):
    """Check a requested number of samples."""

    if int(n) != n or n < 1:
        raise ValueError('The number of samples must be a positive integer.')

    return int(n)
