"""Synthetic problems with analytically known density ratios.

Notes
-----
P is the d-dimensional standard normal distribution, and Q is an equal-weight mixture of
M unit-covariance normal distributions, centered at mu * r_m for unit vectors r_m.
With mu = sqrt(2 * kl_target), KL(P || Q) = mu^2 / 2 when M = 1.
"""

import json

import numpy as np
from scipy.special import logsumexp

from fdre.core.errors import ShapeError
from fdre.synth.rng import derive_rng

###################################################################################################
###################################################################################################

class MixtureSpec():
    """Parameters of a synthetic density ratio problem.

    Attributes
    ----------
    d : int
        Dimension of the data.
    n_modes : int
        Number of modes of Q.
    kl_target : float
        Target KL(P || Q), in nats.
    directions : 2d array
        Unit vectors for each mode, with shape (n_modes, d). Read-only.
    seed : int
        Seed used to draw the directions.
    """

    def __init__(self, d, n_modes, kl_target, directions, seed=0):
        """Initialize a MixtureSpec object.

        Parameters
        ----------
        d : int
            Dimension of the data.
        n_modes : int
            Number of modes of Q.
        kl_target : float
            Target KL(P || Q), in nats.
        directions : array_like
            Unit vectors for each mode, with shape (n_modes, d).
        seed : int, optional, default: 0
            Seed used to draw the directions.
        """

        if int(d) != d or d < 1:
            raise ValueError('Dimension must be a positive integer.')
        if int(n_modes) != n_modes or n_modes < 1:
            raise ValueError('The number of modes must be a positive integer.')
        if not kl_target >= 0:
            raise ValueError('The KL target must be non-negative.')

        directions = np.array(directions, dtype=float)
        if directions.shape != (n_modes, d):
            raise ShapeError('Directions must have shape {}.'.format((n_modes, d)))
        if not np.allclose(np.linalg.norm(directions, axis=1), 1., rtol=0, atol=1e-12):
            raise ValueError('Directions must be unit vectors.')
        directions.flags.writeable = False

        self.d = int(d)
        self.n_modes = int(n_modes)
        self.kl_target = float(kl_target)
        self.directions = directions
        self.seed = int(seed)


    def __repr__(self):

        return 'MixtureSpec(d={}, n_modes={}, kl_target={:g}, seed={})'.format(
            self.d, self.n_modes, self.kl_target, self.seed)


    def __eq__(self, other):

        return isinstance(other, MixtureSpec) and self.d == other.d and \
            self.n_modes == other.n_modes and self.kl_target == other.kl_target and \
            np.array_equal(self.directions, other.directions)


    __hash__ = None


    @property
    def mu(self):
        """Offset magnitude of the modes of Q."""

        return np.sqrt(2. * self.kl_target)


    def as_dict(self):
        """Get the spec as a JSON serializable dictionary."""

        return {'d' : self.d, 'n_modes' : self.n_modes, 'kl_target' : self.kl_target,
                'mu' : float(self.mu), 'seed' : self.seed,
                'directions' : self.directions.tolist()}


    @classmethod
    def from_dict(cls, spec_dict):
        """Create a spec from a dictionary, as created by `as_dict`."""

        return cls(spec_dict['d'], spec_dict['n_modes'], spec_dict['kl_target'],
                   spec_dict['directions'], spec_dict.get('seed', 0))


    def to_json(self):
        """Get the spec as a JSON string."""

        return json.dumps(self.as_dict())


def make_mixture_spec(d, n_modes=1, kl_target=1., seed=0):
    """Make a synthetic problem, drawing mode directions uniformly on the sphere.

    Parameters
    ----------
    d : int
        Dimension of the data.
    n_modes : int, optional, default: 1
        Number of modes of Q.
    kl_target : float, optional, default: 1.
        Target KL(P || Q), in nats.
    seed : int, optional, default: 0
        Master seed. Directions are drawn from the 'directions' stream.

    Returns
    -------
    MixtureSpec
        The problem definition.

    Examples
    --------
    Make a 5 dimensional problem with 2 modes:

    >>> spec = make_mixture_spec(5, 2, kl_target=2.)
    >>> spec.directions.shape
    (2, 5)
    """

    if int(d) != d or d < 1 or int(n_modes) != n_modes or n_modes < 1:
        raise ValueError('Dimension and number of modes must be positive integers.')

    rng = derive_rng(seed, 'directions')
    directions = rng.standard_normal((int(n_modes), int(d)))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)

    return MixtureSpec(d, n_modes, kl_target, directions, seed)


def log_ratio(spec, x):
    """Compute the log density ratio, log dQ/dP, in log space.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    x : array_like
        A single point of shape (d,), or a set of points of shape (n, d).

    Returns
    -------
    float or 1d array
        The log ratio at each point.
    """

    points, single = _check_points(spec, x)

    mu = spec.mu
    terms = mu * points @ spec.directions.T - mu ** 2 / 2.
    values = logsumexp(terms, axis=1) - np.log(spec.n_modes)

    return float(values[0]) if single else values


def true_ratio(spec, x):
    """Compute the density ratio, dQ/dP.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    x : array_like
        A single point of shape (d,), or a set of points of shape (n, d).

    Returns
    -------
    float or 1d array
        The ratio (1 / M) sum_m exp(mu <r_m, x> - mu^2 / 2) at each point.

    Examples
    --------
    With a KL target of 0, the ratio is 1 everywhere:

    >>> true_ratio(make_mixture_spec(3, kl_target=0.), [1., -2., 0.5])
    1.0
    """

    values = np.exp(-energy(spec, x))

    return values if isinstance(values, np.ndarray) else float(values)


def energy(spec, x):
    """Compute the energy function, -log dQ/dP.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    x : array_like
        A single point of shape (d,), or a set of points of shape (n, d).

    Returns
    -------
    float or 1d array
        The energy at each point.

    Notes
    -----
    For a single mode, the energy is affine: mu^2 / 2 - mu <r_1, x>.
    """

    values = log_ratio(spec, x)

    return -values if isinstance(values, np.ndarray) else float(-values)


def mu_densities(spec, x):
    """Compute the densities of Q and P with respect to mu = (P + Q) / 2.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.
    x : array_like
        A single point of shape (d,), or a set of points of shape (n, d).

    Returns
    -------
    dq_dmu, dp_dmu : float or 1d array
        The densities, 2 r / (1 + r) and 2 / (1 + r), for the ratio r = dQ/dP.
    """

    # Computed from the log ratio, so that large ratios do not overflow
    log_r = log_ratio(spec, x)
    dq_dmu = 2. * np.exp(-np.logaddexp(0., -log_r))
    dp_dmu = 2. * np.exp(-np.logaddexp(0., log_r))

    return dq_dmu, dp_dmu


def analytic_kl(spec):
    """Get the analytic KL(P || Q) of the problem.

    Parameters
    ----------
    spec : MixtureSpec
        The problem definition.

    Returns
    -------
    float
        The value mu^2 / 2, which is the KL target by construction.

    Notes
    -----
    The value is exact for a single mode. For more modes, it is an upper bound on KL(P || Q).
    """

    return spec.kl_target


def _check_points(spec, x):
    """Check points against the problem dimension, returning a 2d array."""

    points = np.asarray(x, dtype=float)
    single = points.ndim == 1

    if single:
        points = points.reshape(1, -1)

    if points.ndim != 2 or points.shape[1] != spec.d:
        raise ShapeError('Points must have dimension {}.'.format(spec.d))

    return points, single
