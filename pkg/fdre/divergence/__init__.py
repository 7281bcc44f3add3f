"""Divergences: convex generators, variational losses, and the mu-representation."""

from .generators import ConvexGenerator, get_generator
from .losses import (LossSpec, Parameterization, empirical_loss, kl_loss, alpha_loss,
                     make_objective, monte_carlo_Df)
from .mu_loss import MuPoint, mu_loss_pointwise, mu_loss_derivative, mu_loss
