"""Pointwise losses in the representation over the reference measure mu = (P + Q) / 2."""

from collections import namedtuple

import numpy as np

from fdre.divergence.generators import get_generator

###################################################################################################
###################################################################################################

class MuPoint(namedtuple('MuPoint', ['u', 'dq_dmu', 'dp_dmu'])):
    """A candidate ratio value at a point, with the densities of Q and P with respect to mu.

    Attributes
    ----------
    u : float or array
        Candidate ratio value, strictly positive.
    dq_dmu, dp_dmu : float or array
        Densities of Q and of P with respect to mu, non-negative and not both zero.
    """
    __slots__ = ()

    @classmethod
    def from_ratio(cls, u, ratio):
        """Create a point from the true ratio dQ/dP, with mu = (P + Q) / 2."""

        ratio = np.asarray(ratio, dtype=float)

        return cls(u, 2. * ratio / (1. + ratio), 2. / (1. + ratio))

    @property
    def ratio(self):
        """The true ratio at the point, dQ/dP, infinite where dP/dmu is zero."""

        with np.errstate(divide='ignore'):
            return np.divide(self.dq_dmu, self.dp_dmu)


def mu_loss_pointwise(generator, point):
    """Compute the loss at a point, -f'(u) dQ/dmu + f*(f'(u)) dP/dmu.

    Parameters
    ----------
    generator : ConvexGenerator or str
        The f-divergence generator.
    point : MuPoint
        Candidate ratio value and densities.

    Returns
    -------
    float or array
        The pointwise loss.

    Notes
    -----
    As a function of u, the loss is minimized at u = dQ/dP, where it equals -f(dQ/dP) dP/dmu.
    """

    generator = get_generator(generator)
    u, dq_dmu, dp_dmu = _check_point(point)

    return -generator.f_prime(u) * dq_dmu + generator.conj_of_fprime(u) * dp_dmu


def mu_loss_derivative(generator, point, order=1):
    """Compute the first or second derivative of the pointwise loss, with respect to u.

    Parameters
    ----------
    generator : ConvexGenerator or str
        The f-divergence generator.
    point : MuPoint
        Candidate ratio value and densities.
    order : {1, 2}
        Order of the derivative.

    Returns
    -------
    float or array
        The derivative. The first derivative is (u - dQ/dP) f''(u) dP/dmu, and the second is
        ((u - dQ/dP) f'''(u) + f''(u)) dP/dmu.

    Notes
    -----
    Derivatives are computed in the equivalent form f''(u) (u dP/dmu - dQ/dmu), which
    stays finite where dP/dmu is zero.
    """

    generator = get_generator(generator)
    u, dq_dmu, dp_dmu = _check_point(point)

    residual = u * dp_dmu - dq_dmu

    if order == 1:
        return generator.f_double_prime(u) * residual
    if order == 2:
        return generator.f_triple_prime(u) * residual + generator.f_double_prime(u) * dp_dmu

    raise ValueError('Derivative order must be 1 or 2.')


def mu_loss(generator, phi, dq_dmu, dp_dmu):
    """Compute the loss averaged over a set of points.

    Parameters
    ----------
    generator : ConvexGenerator or str
        The f-divergence generator.
    phi : 1d array
        Candidate ratio values at each point.
    dq_dmu, dp_dmu : 1d array
        Densities of Q and P with respect to mu at each point.

    Returns
    -------
    float
        The mean of the pointwise losses.

    Notes
    -----
    For points sampled from mu, this is an unbiased estimate of the population loss.
    """

    values = mu_loss_pointwise(generator, MuPoint(phi, dq_dmu, dp_dmu))

    return float(np.mean(values))


def _check_point(point):
    """Check and unpack a point."""

    u, dq_dmu, dp_dmu = (np.asarray(val, dtype=float) for val in point)

    if np.any(u <= 0):
        raise ValueError('Candidate ratio values must be strictly positive.')
    if np.any(dq_dmu < 0) or np.any(dp_dmu < 0):
        raise ValueError('Densities must be non-negative.')
    if np.any((dq_dmu == 0) & (dp_dmu == 0)):
        raise ValueError('Densities can not both be zero.')

    if u.ndim == 0 and dq_dmu.ndim == 0 and dp_dmu.ndim == 0:
        u, dq_dmu, dp_dmu = float(u), float(dq_dmu), float(dp_dmu)

    return u, dq_dmu, dp_dmu
