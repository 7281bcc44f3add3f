"""Analysis of ratio estimators: Lp errors, moments, error bounds and nearest neighbor checks."""

from .lp import lp_error
from .moments import moment_estimate, analytic_moment, monte_carlo_kl, group_stderr
from .bounds import bound_rhs
from .nn import (NnMomentEstimate, nearest_neighbors, nn_moment_upper_check,
                 nn_moment_weighted_upper_check, nn_moment_lower_check)
from .report import EvalReport, evaluate
