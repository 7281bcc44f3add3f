"""
Tutorial 00: Overview
=====================

Estimating a density ratio on a synthetic problem.
"""

import numpy as np

from fdre.synth import make_mixture_spec, make_splits, true_ratio, derive_rng
from fdre.autodiff import init_mlp, make_widths
from fdre.train import TrainConfig, train, predict_ratio
from fdre.analysis import evaluate

###################################################################################################
# Synthetic Problems
# ------------------
#
# A synthetic problem has P as a standard normal, and Q as a mixture of normals, each
# shifted away from the origin along a unit direction.
#
# The size of the shift is set from a target KL divergence, so that problems of a
# given difficulty can be created in any dimension, and the true density ratio is known.
#

###################################################################################################

# Define a 2 dimensional problem, with a single mode, and a KL divergence of 1
spec = make_mixture_spec(2, n_modes=1, kl_target=1., seed=0)
print(spec)

###################################################################################################
#
# Samples are drawn as train, validation and test splits, from both P and Q.
#
# Each split and source uses its own random stream, derived from the seed, so that
# results are reproducible.
#

###################################################################################################

splits = make_splits(spec, 2000, 500, 500, seed=0)
print(splits['train', 'P'].points.shape)

###################################################################################################
# Training an Estimator
# ---------------------
#
# Ratio estimators are multilayer perceptrons. Here, the network output is the log ratio.
#
# Training minimizes a variational f-divergence loss, with early stopping on the
# validation loss.
#

###################################################################################################

model = init_mlp(make_widths(spec.d, 32, 2), derive_rng(0, 'model'))
cfg = TrainConfig('kl', learning_rate=1e-3, batch_size=128, patience_epochs=5,
                  max_epochs=100)

trained, report = train(model, splits['train', 'P'], splits['train', 'Q'],
                        splits['val', 'P'], splits['val', 'Q'], cfg)

###################################################################################################

# Check how training went
print(report.epochs_run, report.stop_reason.value, report.best_epoch)

###################################################################################################
#
# The trained model predicts ratios, which we can compare to the true ratios.
#

###################################################################################################

test_points = splits['test', 'P'].points[:5]
print(np.round(predict_ratio(trained, test_points), 3))
print(np.round(true_ratio(spec, test_points), 3))

###################################################################################################
# Evaluating an Estimator
# -----------------------
#
# The :func:`~.evaluate` function computes Lp errors of the estimate, along with the
# right hand sides of the theoretical error bounds, for comparison.
#

###################################################################################################

results = evaluate(trained, spec, splits['test', 'P'], splits['train', 'P'],
                   splits['train', 'Q'], n_pairs=2000)

for p_order, error, upper in zip(results.p_orders, results.lp_errors, results.upper_bound):
    print('L{} error: {:.4f}, upper bound: {:.4f}'.format(p_order, error, upper))
