"""Experiment configuration: scale presets, config files and configuration hashes.

Notes
-----
Settings are resolved with the precedence: scale preset < config file < command line flags.

The config file is TOML, with settings grouped in the tables [experiment], [data], [model],
[train] and [nn]. For example::

    [experiment]
    scale = "desk"
    seed = 7
    trials = 4

    [data]
    kl_values = [1.0, 2.0]
"""

import os
import sys
import json
import hashlib
from dataclasses import dataclass, asdict, fields, replace

from fdre.core.errors import ConfigError
from fdre.divergence.generators import get_generator

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

###################################################################################################
###################################################################################################

EXPERIMENTS = ['kl_sweep', 'dim_sweep', 'nn_bounds', 'single_run']
SCALES = ['desk', 'paper']

# Settings that do not change results, and so are excluded from the config hash
UNHASHED = ['out_dir', 'workers']

FLOAT_SETTINGS = ['kl_values', 'kl_dim', 'learning_rate', 'weight_decay', 'nn_lower_kl',
                  'nn_lower_p', 'nn_weighted_p']

TABLES = {
    'experiment' : ['experiment', 'scale', 'seed', 'trials', 'out_dir', 'workers'],
    'data' : ['kl_values', 'kl_dim', 'd_kl', 'n_kl', 'dims', 'sizes', 'pool_size', 'n_val',
              'n_test', 'n_modes'],
    'model' : ['hidden_width', 'n_hidden'],
    'train' : ['losses', 'parameterization', 'learning_rate', 'batch_size', 'max_epochs',
               'patience_kl', 'patience_dim', 'weight_decay', 'p_orders', 'n_pairs'],
    'nn' : ['nn_dims', 'nn_sizes', 'nn_kappas', 'nn_trials', 'nn_lower_d', 'nn_lower_kl',
            'nn_lower_p', 'nn_lower_sizes', 'nn_lower_trials', 'nn_weighted_p'],
}

PRESETS = {
    'desk' : {'trials' : 10, 'kl_values' : (1., 2., 4.), 'dims' : (10, 25, 50),
              'sizes' : (2000, 4000, 8000), 'pool_size' : 8000, 'n_val' : 2000,
              'n_test' : 2000, 'hidden_width' : 256, 'n_hidden' : 3,
              'nn_trials' : 10000, 'nn_lower_trials' : 2000},
    'paper' : {'trials' : 100, 'kl_values' : (1., 2., 4., 6., 8., 10., 12., 14.),
               'dims' : (50, 100, 200), 'sizes' : (1000, 2000, 4000, 8000, 16000),
               'pool_size' : 20000, 'n_val' : 5000, 'n_test' : 5000,
               'n_modes' : (1, 2, 3, 4), 'hidden_width' : 1024, 'n_hidden' : 5,
               'nn_trials' : 100000, 'nn_lower_trials' : 10000},
}


@dataclass(frozen=True)
class ExperimentConfig():
    """Settings for an experiment.

    Attributes
    ----------
    experiment : {'kl_sweep', 'dim_sweep', 'nn_bounds', 'single_run'}
        Which experiment to run.
    scale : {'desk', 'paper'}
        The preset the settings were resolved from.
    seed : int
        Master seed.
    trials : int
        Number of trials per grid cell.
    out_dir : str
        Output directory.
    workers : int
        Number of worker threads for trials. 0 uses one per logical core.
    kl_values : tuple of float
        KL grid of the KL sweep. The first value is used for single runs.
    kl_dim : float
        KL of the dimension sweep.
    d_kl, n_kl : int
        Dimension and number of training samples of the KL sweep, and of single runs.
    dims, sizes : tuple of int
        Dimension and training size grids of the dimension sweep.
    pool_size : int
        Number of training samples generated for each dimension sweep trial, of which the
        first n are used for a training size n.
    n_val, n_test : int
        Number of validation and test samples.
    n_modes : tuple of int
        Grid of the number of modes of Q.
    hidden_width, n_hidden : int
        Width and number of hidden layers of the network.
    losses : tuple of str
        Losses to train with.
    parameterization : {'log_scale', 'direct'}
        Mapping from network outputs to ratios.
    learning_rate, batch_size, max_epochs, weight_decay
        Training settings, as in TrainConfig.
    patience_kl, patience_dim : int
        Early stopping patience, in epochs, for the KL and dimension sweeps.
    p_orders : tuple of int
        Orders of the Lp errors.
    n_pairs : int
        Number of random pairs for Lipschitz proxies.
    nn_dims, nn_sizes, nn_kappas : tuple
        Grid of the nearest neighbor upper bound check, on the unit cube.
    nn_trials : int
        Number of trials per upper bound cell.
    nn_lower_d, nn_lower_kl : int, float
        Problem of the nearest neighbor lower bound check.
    nn_lower_p : tuple of float
        Orders of the lower bound check.
    nn_lower_sizes : tuple of int
        Grid of N for the lower bound trend.
    nn_lower_trials : int
        Number of trials per N of the lower bound check.
    nn_weighted_p : tuple of float
        Orders of the ratio weighted upper bound check, run on the lower bound problem.
    """

    experiment: str = 'single_run'
    scale: str = 'desk'
    seed: int = 0
    trials: int = 10
    out_dir: str = 'fdre_results'
    workers: int = 0

    kl_values: tuple = (1., 2., 4.)
    kl_dim: float = 3.
    d_kl: int = 5
    n_kl: int = 10000
    dims: tuple = (10, 25, 50)
    sizes: tuple = (2000, 4000, 8000)
    pool_size: int = 8000
    n_val: int = 2000
    n_test: int = 2000
    n_modes: tuple = (1,)

    hidden_width: int = 256
    n_hidden: int = 3

    losses: tuple = ('kl', 'alpha:0.5')
    parameterization: str = 'log_scale'
    learning_rate: float = 1e-4
    batch_size: int = 128
    max_epochs: int = 5000
    patience_kl: int = 3
    patience_dim: int = 1
    weight_decay: float = 0.
    p_orders: tuple = (1, 2, 3)
    n_pairs: int = 10000

    nn_dims: tuple = (1, 2, 3, 5)
    nn_sizes: tuple = (1, 4, 16, 64, 256)
    nn_kappas: tuple = (1, 2)
    nn_trials: int = 10000
    nn_lower_d: int = 3
    nn_lower_kl: float = 0.
    nn_lower_p: tuple = (1.,)
    nn_lower_sizes: tuple = (128, 256, 512, 1024, 2048, 4096, 8192)
    nn_lower_trials: int = 2000
    nn_weighted_p: tuple = (1.,)

    def __post_init__(self):

        if self.experiment not in EXPERIMENTS:
            raise ConfigError('Experiment {} not understood.'.format(self.experiment))
        if self.scale not in SCALES:
            raise ConfigError('Scale {} not understood.'.format(self.scale))

        for fld in fields(self):
            value = getattr(self, fld.name)
            if isinstance(value, list):
                object.__setattr__(self, fld.name, tuple(value))
            if isinstance(getattr(self, fld.name), tuple) and not getattr(self, fld.name):
                raise ConfigError('Grid {} can not be empty.'.format(fld.name))

        # Floats are normalized, so that equal settings hash equally
        try:
            for label in FLOAT_SETTINGS:
                value = getattr(self, label)
                object.__setattr__(self, label, tuple(float(val) for val in value)
                                   if isinstance(value, tuple) else float(value))
        except (TypeError, ValueError) as error:
            raise ConfigError('Setting {} must be numeric.'.format(label)) from error

        _check_int(self, ['trials', 'd_kl', 'n_kl', 'pool_size', 'n_val', 'n_test',
                          'hidden_width', 'n_hidden', 'batch_size', 'max_epochs', 'patience_kl',
                          'patience_dim', 'n_pairs', 'nn_trials', 'nn_lower_d',
                          'nn_lower_trials'], minimum=1)
        _check_int(self, ['seed', 'workers'], minimum=0)
        for label in ['dims', 'sizes', 'n_modes', 'p_orders', 'nn_dims', 'nn_sizes',
                      'nn_lower_sizes']:
            _check_int(self, label, minimum=1, grid=True)

        if any(kl < 0 for kl in self.kl_values + (self.kl_dim, self.nn_lower_kl)):
            raise ConfigError('KL values can not be negative.')
        if max(self.sizes) > self.pool_size:
            raise ConfigError('Training size {} exceeds the generated pool of {}.'.format(
                max(self.sizes), self.pool_size))
        if max(self.patience_kl, self.patience_dim) > self.max_epochs:
            raise ConfigError('Patience can not exceed the maximum number of epochs.')
        if not self.learning_rate > 0 or self.weight_decay < 0:
            raise ConfigError('Learning rate must be positive, and weight decay non-negative.')
        if self.parameterization not in ['log_scale', 'direct']:
            raise ConfigError('Parameterization {} not understood.'.format(
                self.parameterization))

        labels = []
        for loss in self.losses:
            try:
                labels.append(get_generator(loss).label)
            except (AttributeError, ValueError) as error:
                raise ConfigError('Loss {} not understood: {}'.format(loss, error)) from error
        object.__setattr__(self, 'losses', tuple(labels))


    def as_dict(self):
        """Get the settings as a JSON serializable dictionary."""

        return {key : list(val) if isinstance(val, tuple) else val
                for key, val in asdict(self).items()}


    @property
    def config_hash(self):
        """The sha256 hash of the settings that determine results."""

        return config_hash(self)


    @property
    def n_workers(self):
        """The number of worker threads to use."""

        return self.workers if self.workers else os.cpu_count() or 1


def config_hash(cfg):
    """Compute the hash of an experiment configuration.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings.

    Returns
    -------
    str
        The sha256 hex digest of the canonical JSON of all settings that determine results.
    """

    settings = {key : val for key, val in cfg.as_dict().items() if key not in UNHASHED}
    canonical = json.dumps(settings, sort_keys=True, separators=(',', ':'))

    return hashlib.sha256(canonical.encode()).hexdigest()


def read_config_file(file_path):
    """Read settings from a TOML config file.

    Parameters
    ----------
    file_path : str
        Path to the config file.

    Returns
    -------
    dict
        Settings, flattened from their tables.

    Raises
    ------
    ConfigError
        If the file can not be parsed, or contains unknown tables or settings.
    """

    try:
        with open(file_path, 'rb') as f_obj:
            contents = tomllib.load(f_obj)
    except (OSError, tomllib.TOMLDecodeError) as error:
        raise ConfigError('Could not read config file {}: {}'.format(file_path, error)) from error

    settings = {}
    for table, values in contents.items():

        if table not in TABLES or not isinstance(values, dict):
            raise ConfigError('Config table [{}] not understood.'.format(table))

        for key, value in values.items():
            if key not in TABLES[table]:
                raise ConfigError('Setting {} is not part of table [{}].'.format(key, table))
            settings[key] = value

    return settings


def load_config(file_path=None, scale=None, **overrides):
    """Resolve experiment settings from a preset, a config file and overrides.

    Parameters
    ----------
    file_path : str, optional
        Path to a TOML config file.
    scale : {'desk', 'paper'}, optional
        Scale preset. Overrides the scale given in the config file. Defaults to 'desk'.
    **overrides
        Settings that override the preset and the config file. None values are ignored.

    Returns
    -------
    ExperimentConfig
        The resolved settings.

    Examples
    --------
    Resolve the desk scale settings, overriding the number of trials:

    >>> cfg = load_config(scale='desk', trials=2)
    >>> cfg.trials, cfg.hidden_width
    (2, 256)
    """

    from_file = read_config_file(file_path) if file_path else {}
    overrides = {key : val for key, val in overrides.items() if val is not None}

    scale = scale or from_file.get('scale', 'desk')
    if scale not in PRESETS:
        raise ConfigError('Scale {} not understood.'.format(scale))

    settings = dict(PRESETS[scale], scale=scale)
    settings.update(from_file)
    settings.update(overrides)
    settings['scale'] = scale

    names = {fld.name for fld in fields(ExperimentConfig)}
    unknown = set(settings) - names
    if unknown:
        raise ConfigError('Settings not understood: {}'.format(', '.join(sorted(unknown))))

    return ExperimentConfig(**settings)


def update_config(cfg, **updates):
    """Create a new configuration, with some settings updated."""

    return replace(cfg, **updates)


def _check_int(cfg, labels, minimum, grid=False):
    """Check settings are integers of at least a minimum value."""

    for label in [labels] if isinstance(labels, str) else labels:
        values = getattr(cfg, label)
        for value in values if grid else [values]:
            try:
                valid = not isinstance(value, bool) and int(value) == value and value >= minimum
            except (TypeError, ValueError):
                valid = False
            if not valid:
                raise ConfigError('Setting {} must be integers of at least {}.'.format(
                    label, minimum))
