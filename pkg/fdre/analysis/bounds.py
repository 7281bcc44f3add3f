"""Numeric right hand sides of the Lp error bounds."""

import numpy as np

from fdre.core.errors import NonFiniteError

###################################################################################################
###################################################################################################

def bound_rhs(lip_energy, lip_estimator, diag, moment_2p, moment_p, kl_qp, p):
    """Compute the right hand sides of the upper and lower Lp error bounds.

    Parameters
    ----------
    lip_energy : float
        Lipschitz constant L of the energy, -log dQ/dP, under the max norm.
    lip_estimator : float
        Lipschitz constant K of the estimator.
    diag : float
        Diameter of the domain.
    moment_2p, moment_p : float
        Ratio moments E_P[(dQ/dP)^(2p)] and E_P[(dQ/dP)^p].
    kl_qp : float
        KL(Q || P).
    p : float
        Order of the error, at least 1.

    Returns
    -------
    upper : float
        L diag E_P[r^(2p)]^(1/(2p)) + K diag.
    lower_moment : float or None
        (1 / L) E_P[r^p]^(1/p) - K diag. None if L is 0.
    lower_kl : float or None
        (1 / L) exp((p - 1) / p KL(Q || P) - 1) - K diag. None if L is 0.

    Notes
    -----
    These bound the scaled error N^(1/d) ||r - phi||_Lp(P), in the limit of large N.
    By Jensen's inequality, lower_kl <= lower_moment.

    Examples
    --------
    With p = 1, the KL lower bound does not depend on the divergence:

    >>> round(bound_rhs(1., 0., 1., 1., 1., 5., 1)[2], 6)
    0.367879
    """

    for label, value in [('moment_2p', moment_2p), ('moment_p', moment_p), ('kl_qp', kl_qp)]:
        if not np.isfinite(value):
            raise NonFiniteError('Bound input {} is not finite.'.format(label))

    if lip_energy < 0 or lip_estimator < 0:
        raise ValueError('Lipschitz constants can not be negative.')
    if not diag > 0:
        raise ValueError('The diameter must be positive.')
    if not p >= 1:
        raise ValueError('The error order must be at least 1.')

    upper = lip_energy * diag * moment_2p ** (1. / (2 * p)) + lip_estimator * diag

    if lip_energy == 0:
        return float(upper), None, None

    lower_moment = moment_p ** (1. / p) / lip_energy - lip_estimator * diag
    lower_kl = np.exp((p - 1.) / p * kl_qp - 1.) / lip_energy - lip_estimator * diag

    return float(upper), float(lower_moment), float(lower_kl)
