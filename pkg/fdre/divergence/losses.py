"""Variational losses for estimating density ratios with f-divergences."""

from enum import Enum

import numpy as np

from fdre.core.decorators import check_finite_loss, check_positive
from fdre.autodiff.tensor import Tensor
from fdre.autodiff.ops import exp, mean, neg, softplus
from fdre.divergence.generators import get_generator

###################################################################################################
###################################################################################################

DIRECT_EPS = 1e-6


class Parameterization(str, Enum):
    """How a raw network output T is mapped to a positive ratio estimate phi.

    Notes
    -----
    - LOG_SCALE: phi = exp(T), so that T estimates the log ratio, and -T the energy.
    - DIRECT: phi = softplus(T) + eps, for some small eps > 0.
    """

    LOG_SCALE = 'log_scale'
    DIRECT = 'direct'


class LossSpec():
    """Specification of a variational loss.

    Attributes
    ----------
    generator : ConvexGenerator
        The f-divergence generator.
    parameterization : Parameterization
        The mapping from raw network outputs to ratio estimates.
    """

    def __init__(self, generator, parameterization=Parameterization.LOG_SCALE):
        """Initialize a LossSpec object.

        Parameters
        ----------
        generator : ConvexGenerator or str
            The f-divergence generator, or its name.
        parameterization : Parameterization or str, optional, default: 'log_scale'
            The mapping from raw network outputs to ratio estimates.
        """

        self.generator = get_generator(generator)
        self.parameterization = Parameterization(parameterization)


    def __repr__(self):

        return 'LossSpec({}, {})'.format(self.generator.label, self.parameterization.value)


    def link(self, outputs):
        """Map raw network outputs to positive ratio estimates."""

        if self.parameterization is Parameterization.LOG_SCALE:
            return exp(outputs)

        return softplus(outputs) + DIRECT_EPS


@check_finite_loss
def empirical_loss(spec, outputs_p, outputs_q):
    """Compute the empirical variational loss of an f-divergence.

    Parameters
    ----------
    spec : LossSpec
        Definition of the loss.
    outputs_p, outputs_q : Tensor or array_like
        Raw network outputs, evaluated on samples from P and from Q.

    Returns
    -------
    Tensor or float
        The loss, -mean_Q[f'(phi)] + mean_P[f*(f'(phi))].
        A Tensor if either input is a Tensor.

    Notes
    -----
    The population version of this loss is minimized at phi = dQ/dP, where its value is
    -D_f(Q || P).

    Examples
    --------
    The KL loss of the constant ratio estimate 1 is 0:

    >>> float(empirical_loss(LossSpec('kl'), np.zeros(3), np.zeros(2)))
    0.0
    """

    outputs_p, outputs_q = _check_outputs(outputs_p, outputs_q)

    gen = spec.generator
    phi_p = spec.link(outputs_p)
    phi_q = spec.link(outputs_q)

    return neg(mean(gen.f_prime(phi_q))) + mean(gen.conj_of_fprime(phi_p))


@check_finite_loss
def kl_loss(outputs_p, outputs_q):
    """Compute the KL loss, in log-scale parameterization.

    Parameters
    ----------
    outputs_p, outputs_q : Tensor or array_like
        Raw network outputs, evaluated on samples from P and from Q.

    Returns
    -------
    Tensor or float
        The loss, mean_P[exp(T)] - mean_Q[T].

    Notes
    -----
    This equals the empirical KL loss in log-scale parameterization, plus 1.
    """

    outputs_p, outputs_q = _check_outputs(outputs_p, outputs_q)

    return mean(exp(outputs_p)) - mean(outputs_q)


@check_finite_loss
def alpha_loss(outputs_p, outputs_q, alpha=0.5):
    """Compute the alpha-divergence loss, in log-scale parameterization.

    Parameters
    ----------
    outputs_p, outputs_q : Tensor or array_like
        Raw network outputs, evaluated on samples from P and from Q.
    alpha : float, optional, default: 0.5
        Order of the divergence, in (0, 1).

    Returns
    -------
    Tensor or float
        The loss, (1 / alpha) mean_P[exp(alpha T)] + (1 / (1 - alpha)) mean_Q[exp((alpha - 1) T)].

    Notes
    -----
    The population loss is stationary at T = log(dQ/dP).
    It equals the empirical alpha loss in log-scale parameterization, plus 1 / (alpha (1 - alpha)).
    """

    if not 0. < alpha < 1.:
        raise ValueError('The alpha-divergence order must be in (0, 1).')
    outputs_p, outputs_q = _check_outputs(outputs_p, outputs_q)

    return (1. / alpha) * mean(exp(alpha * outputs_p)) + \
        (1. / (1. - alpha)) * mean(exp((alpha - 1.) * outputs_q))


def loss_offset(spec):
    """Get the constant difference between the closed form loss for a spec and its empirical loss.

    Parameters
    ----------
    spec : LossSpec
        Definition of the loss.

    Returns
    -------
    float
        Offset such that the training objective equals the empirical loss plus the offset.
    """

    if spec.parameterization is not Parameterization.LOG_SCALE:
        return 0.

    if spec.generator.name == 'kl':
        return 1.
    if spec.generator.name == 'alpha':
        alpha = spec.generator.alpha
        return 1. / (alpha * (1. - alpha))

    return 0.


def make_objective(spec):
    """Make the training objective for a loss specification.

    Parameters
    ----------
    spec : LossSpec
        Definition of the loss.

    Returns
    -------
    objective : callable
        Maps (outputs_p, outputs_q) to a loss value. The KL and alpha losses use their
        closed forms when the parameterization is log-scale.
    offset : float
        The value of `loss_offset` for the spec.
    """

    offset = loss_offset(spec)

    if spec.parameterization is Parameterization.LOG_SCALE:
        if spec.generator.name == 'kl':
            return kl_loss, offset
        if spec.generator.name == 'alpha':
            alpha = spec.generator.alpha
            return lambda outputs_p, outputs_q: alpha_loss(outputs_p, outputs_q, alpha), offset

    return lambda outputs_p, outputs_q: empirical_loss(spec, outputs_p, outputs_q), offset


@check_positive('ratios_p')
def monte_carlo_Df(generator, ratios_p, return_stderr=False):
    """Estimate an f-divergence D_f(Q || P) from true ratio values on samples from P.

    Parameters
    ----------
    generator : ConvexGenerator or str
        The f-divergence generator.
    ratios_p : 1d array
        True values of dQ/dP, evaluated on samples from P.
    return_stderr : bool, optional, default: False
        Whether to also return the standard error of the estimate.

    Returns
    -------
    value : float
        Estimate of the divergence, the mean of f(r) over the samples.
    stderr : float
        Standard error of the estimate. Only returned if `return_stderr` is True.
    """

    generator = get_generator(generator)
    ratios_p = np.asarray(ratios_p, dtype=float).reshape(-1)

    if ratios_p.size == 0:
        raise ValueError('At least one ratio value is required.')

    values = np.asarray(generator.f(ratios_p), dtype=float)
    value = float(np.mean(values))

    if return_stderr:
        stderr = float(np.std(values, ddof=1) / np.sqrt(values.size)) if values.size > 1 else np.nan
        return value, stderr

    return value


def _check_outputs(*outputs):
    """Check that every set of outputs is non-empty, converting non-Tensor inputs to arrays."""

    outputs = tuple(output if isinstance(output, Tensor) else np.asarray(output, dtype=float)
                    for output in outputs)

    for output in outputs:
        if output.size == 0:
            raise ValueError('Loss inputs must be non-empty.')

    return outputs
