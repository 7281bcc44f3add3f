"""Benchmark experiments: configuration, sweeps and the command line interface."""

from .config import ExperimentConfig, load_config, config_hash
from .sweeps import (run_trial, single_run, run_kl_sweep, run_dim_sweep, run_nn_bounds,
                     render_figure)
