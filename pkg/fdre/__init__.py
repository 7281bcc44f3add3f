"""fdre: density ratio estimation with f-divergence losses."""

from fdre.version import __version__

from fdre.synth import make_mixture_spec, make_splits
from fdre.train import TrainConfig, train, predict_ratio
from fdre.analysis import evaluate
from fdre.bench import load_config, run_kl_sweep, run_dim_sweep, run_nn_bounds
