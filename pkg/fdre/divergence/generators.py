"""Convex generators of f-divergences, with their derivatives and conjugates.

Notes
-----
Generator maps are built from the primitive operations in `fdre.autodiff.ops`, so that
`f`, `f_prime` and `conj_of_fprime` can be applied to Tensors, recording on a tape,
as well as to arrays. The higher derivatives are only used numerically.

All generators are normalized so that f(1) = 0, and satisfy the Legendre identity
f*(f'(u)) = u * f'(u) - f(u) for u > 0.
"""

import numpy as np

from fdre.autodiff.ops import log, power, mul

###################################################################################################
###################################################################################################

LOG2 = np.log(2.)

GENERATOR_NAMES = ['kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha']
DEFAULT_ALPHA = 0.5


class ConvexGenerator():
    """A convex function f, generating an f-divergence.

    Attributes
    ----------
    name : {'kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha'}
        Name of the divergence.
    alpha : float or None
        Order of the alpha-divergence, if applicable.

    Notes
    -----
    Each generator satisfies f''(u) > 0 for u > 0, and is three times differentiable.
    The integrability condition E_P[f''(dQ/dP)] < inf depends on the data, and is noted
    in the docstring of each generator function, rather than checked.
    """

    def __init__(self, name, alpha=None):
        """Initialize a ConvexGenerator object.

        Parameters
        ----------
        name : {'kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha'}
            Name of the divergence.
        alpha : float, optional
            Order of the alpha-divergence, in (0, 1). Only used if `name` is 'alpha'.
        """

        if name not in GENERATOR_NAMES:
            raise ValueError('Generator name {} not understood.'.format(name))

        if name == 'alpha':
            alpha = DEFAULT_ALPHA if alpha is None else float(alpha)
            if not 0. < alpha < 1.:
                raise ValueError('The alpha-divergence order must be in (0, 1).')
        else:
            alpha = None

        self.name = name
        self.alpha = alpha
        self._funcs = _make_funcs(name, alpha)


    def __repr__(self):

        return 'ConvexGenerator({})'.format(self.label)


    def __eq__(self, other):

        return isinstance(other, ConvexGenerator) and self.label == other.label


    def __hash__(self):

        return hash(self.label)


    @property
    def label(self):
        """The name string of the generator, as used in configurations."""

        return self.name if self.alpha is None else '{}:{:g}'.format(self.name, self.alpha)


    def f(self, u):
        """The convex function, f(u)."""

        return self._funcs['f'](u)


    def f_prime(self, u):
        """The first derivative, f'(u)."""

        return self._funcs['f_prime'](u)


    def f_double_prime(self, u):
        """The second derivative, f''(u)."""

        return self._funcs['f_double_prime'](np.asarray(u, dtype=float))


    def f_triple_prime(self, u):
        """The third derivative, f'''(u)."""

        return self._funcs['f_triple_prime'](np.asarray(u, dtype=float))


    def conj_of_fprime(self, u):
        """The convex conjugate composed with the first derivative, f*(f'(u))."""

        return self._funcs['conj_of_fprime'](u)


def get_generator(name):
    """Get a convex generator from its name string.

    Parameters
    ----------
    name : str or ConvexGenerator
        One of 'kl', 'pearson_chi2', 'squared_hellinger', 'gan', 'alpha' or 'alpha:<value>'.
        A bare 'alpha' uses the default order of 0.5.

    Returns
    -------
    ConvexGenerator
        The requested generator.

    Examples
    --------
    Get the alpha-divergence generator of order 0.3:

    >>> get_generator('alpha:0.3')
    ConvexGenerator(alpha:0.3)
    """

    if isinstance(name, ConvexGenerator):
        return name

    label, _, value = name.strip().lower().partition(':')

    if label == 'alpha':
        try:
            alpha = float(value) if value else DEFAULT_ALPHA
        except ValueError:
            raise ValueError('Alpha value {} not understood.'.format(value))
        return ConvexGenerator('alpha', alpha)

    if value:
        raise ValueError('Generator {} does not take a parameter.'.format(label))

    return ConvexGenerator(label)


def _make_funcs(name, alpha):
    """Make the set of maps for a named generator."""

    if name == 'kl':

        # F3 requires E_P[(dQ/dP)^-1] < inf
        return {'f' : lambda u: mul(u, log(u)),
                'f_prime' : lambda u: log(u) + 1.,
                'f_double_prime' : lambda u: 1. / u,
                'f_triple_prime' : lambda u: -1. / u ** 2,
                'conj_of_fprime' : lambda u: u}

    if name == 'pearson_chi2':

        # F3 always holds, as f'' is constant
        return {'f' : lambda u: power(u - 1., 2),
                'f_prime' : lambda u: 2. * u - 2.,
                'f_double_prime' : lambda u: np.full_like(u, 2.),
                'f_triple_prime' : lambda u: np.zeros_like(u),
                'conj_of_fprime' : lambda u: power(u, 2) - 1.}

    if name == 'squared_hellinger':

        # F3 requires E_P[(dQ/dP)^-3/2] < inf
        return {'f' : lambda u: power(power(u, 0.5) - 1., 2),
                'f_prime' : lambda u: 1. - power(u, -0.5),
                'f_double_prime' : lambda u: 0.5 * u ** -1.5,
                'f_triple_prime' : lambda u: -0.75 * u ** -2.5,
                'conj_of_fprime' : lambda u: power(u, 0.5) - 1.}

    if name == 'gan':

        # Shifted by 2 log 2, so that f(1) = 0; F3 requires E_P[(dQ/dP)^-1] < inf
        return {'f' : lambda u: mul(u, log(u)) - mul(u + 1., log(u + 1.)) + 2. * LOG2,
                'f_prime' : lambda u: -log(1. + power(u, -1)),
                'f_double_prime' : lambda u: 1. / (u * (u + 1.)),
                'f_triple_prime' : lambda u: -1. / u ** 2 + 1. / (u + 1.) ** 2,
                'conj_of_fprime' : lambda u: log(1. + u) - 2. * LOG2}

    # F3 requires E_P[(dQ/dP)^(alpha - 2)] < inf
    scale = 1. / (alpha * (alpha - 1.))
    return {'f' : lambda u: scale * (power(u, alpha) - alpha * u - (1. - alpha)),
            'f_prime' : lambda u: (power(u, alpha - 1.) - 1.) / (alpha - 1.),
            'f_double_prime' : lambda u: u ** (alpha - 2.),
            'f_triple_prime' : lambda u: (alpha - 2.) * u ** (alpha - 3.),
            'conj_of_fprime' : lambda u: (power(u, alpha) - 1.) / alpha}
