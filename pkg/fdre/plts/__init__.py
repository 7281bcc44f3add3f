"""Plots for fdre."""

from .sweeps import plot_kl_sweep, plot_dim_sweep, plot_nn_bounds, plot_results
