"""Estimate object for fdre."""

from collections import namedtuple

###################################################################################################
###################################################################################################

class Estimate(namedtuple('Estimate', ['value', 'stderr'])):
    """A Monte Carlo estimate, with its standard error.

    Attributes
    ----------
    value : float
        The estimated value.
    stderr : float
        Standard error of the estimate. NaN if it can not be computed.

    Examples
    --------
    Define an estimate, and check whether a target is within 3 standard errors:

    >>> est = Estimate(1.02, 0.01)
    >>> abs(est.value - 1.) <= 3 * est.stderr
    True
    """
    __slots__ = ()
