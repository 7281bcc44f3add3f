"""
Tutorial 01: Error Bounds
=========================

Ratio moments, error bounds and nearest neighbor checks.
"""

import numpy as np

from fdre.synth import make_mixture_spec
from fdre.analysis import (analytic_moment, bound_rhs, nn_moment_upper_check,
                           nn_moment_lower_check)

###################################################################################################
# Ratio Moments
# -------------
#
# The error bounds depend on moments of the density ratio, E_P[(dQ/dP)^k].
#
# For the synthetic problems, integer moments are available exactly.
#

###################################################################################################

spec = make_mixture_spec(1, kl_target=0.5)

# For a single mode, the k-th moment is exp(k (k - 1) mu^2 / 2)
for k in range(1, 5):
    print(k, analytic_moment(spec, k))

###################################################################################################
# Bound Values
# ------------
#
# Given Lipschitz constants of the energy and of the estimator, a diameter, moments and the
# KL divergence, :func:`~.bound_rhs` computes the upper bound, and two lower bounds.
#

###################################################################################################

upper, lower_moment, lower_kl = bound_rhs(1., 0., 1., analytic_moment(spec, 4),
                                          analytic_moment(spec, 2), spec.kl_target, 2)
print('upper: {:.4f}, lower (moment): {:.4f}, lower (KL): {:.4f}'.format(
    upper, lower_moment, lower_kl))

###################################################################################################
# Nearest Neighbor Checks
# -----------------------
#
# The bounds rely on moments of nearest neighbor distances. These can be checked by
# Monte Carlo.
#
# For two uniform points on the unit interval, the expected distance is 1/3.
#

###################################################################################################

rng = np.random.default_rng(0)

check = nn_moment_upper_check('cube', 1, 1, 1, 10000, rng)
print(check.estimate, check.bound, check.satisfied)

###################################################################################################
#
# The lower bound holds in the limit of many points, so it is checked over a
# grid of increasing N.
#

###################################################################################################

check = nn_moment_lower_check('cube', [16, 64, 256], 1, 2000, rng, d=2)
for n_points, estimate, stderr in check.trend:
    print(n_points, round(estimate, 3), round(stderr, 3))
print('Target: {:.3f}, satisfied: {}'.format(check.bound, check.satisfied))
