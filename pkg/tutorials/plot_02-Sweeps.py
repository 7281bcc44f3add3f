"""
Tutorial 02: Experiment Sweeps
==============================

Running and plotting experiment sweeps.
"""

from fdre.bench import load_config, run_kl_sweep
from fdre.plts import plot_kl_sweep

###################################################################################################
# Configurations
# --------------
#
# Experiments are defined by an :class:`~.ExperimentConfig` object, resolved from a scale
# preset, an optional TOML config file, and any overrides.
#
# Each configuration has a hash, which is saved with its results.
#

###################################################################################################

cfg = load_config(scale='desk', experiment='kl_sweep', trials=2, kl_values=(0.5, 1., 2.),
                  d_kl=2, n_kl=500, n_val=200, n_test=200, hidden_width=16, n_hidden=2,
                  learning_rate=1e-2, max_epochs=20, losses=('kl', 'alpha'), n_pairs=500,
                  workers=2)
print(cfg.config_hash)

###################################################################################################
# Running a Sweep
# ---------------
#
# A sweep runs a number of trials for each cell of a grid. Here, we run without saving
# outputs, and without logging.
#

###################################################################################################

record = run_kl_sweep(cfg, logging=None, save=False)

for cell in record.cells:
    print(cell['kl_target'], cell['loss'], cell['n_completed'], cell['lp_error_p2_median'])

###################################################################################################
# Plotting Results
# ----------------
#
# Aggregated results can be plotted directly, or re-made later from saved results files.
#

###################################################################################################

plot_kl_sweep(record.cells)
