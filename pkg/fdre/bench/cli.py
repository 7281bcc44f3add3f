"""Command line interface for fdre.

Exit codes are 0 for success, 2 for configuration errors, 3 for runtime failures, and 4
for failed bound checks.
"""

import os
import sys
import json
import argparse

from fdre.core.errors import ConfigError, FdreError
from fdre.autodiff.mlp import init_mlp, make_widths
from fdre.synth.rng import derive_rng
from fdre.synth.mixture import make_mixture_spec
from fdre.synth.samples import make_splits
from fdre.train.trainer import TrainConfig, TrainedModel, train
from fdre.analysis.report import evaluate
from fdre.utils.db import create_file_structure
from fdre.utils.io import (dump_dataset, load_dataset, save_model, load_model, save_json)
from fdre.bench.config import load_config
from fdre.bench.sweeps import (run_kl_sweep, run_dim_sweep, run_nn_bounds, single_run,
                               render_figure)

###################################################################################################
###################################################################################################

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3
EXIT_ACCEPTANCE = 4

SPLIT_NAMES = ['{}_{}'.format(split, source) for split in ['train', 'val', 'test']
               for source in ['P', 'Q']]


def make_parser():
    """Make the argument parser for the command line interface.

    Returns
    -------
    argparse.ArgumentParser
        The parser, with one sub-parser per command.
    """

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Path to a TOML config file.')
    common.add_argument('--seed', type=int, help='Master seed.')
    common.add_argument('--out', help='Output directory.')
    common.add_argument('--trials', type=int, help='Number of trials per grid cell.')
    scale = common.add_mutually_exclusive_group()
    scale.add_argument('--desk-scale', dest='scale', action='store_const', const='desk',
                       help='Use the desk scale preset (default).')
    scale.add_argument('--paper-scale', dest='scale', action='store_const', const='paper',
                       help='Use the paper scale preset.')
    common.add_argument('--loss', action='append',
                        help='Loss name, such as kl or alpha:0.5. Can be repeated.')
    common.add_argument('--workers', type=int, help='Number of worker threads.')
    common.add_argument('--log', choices=['print', 'store', 'file'], default='print',
                        help='Where to log progress messages.')

    parser = argparse.ArgumentParser(
        prog='fdre', description='Density ratio estimation with f-divergence losses.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    subparsers.add_parser('generate', parents=[common],
                          help='Generate and save train, validation and test datasets.')
    subparsers.add_parser('train', parents=[common],
                          help='Train an estimator on saved datasets, and save the model.')
    eval_parser = subparsers.add_parser(
        'eval', parents=[common],
        help='Evaluate a saved model, or run a single trial if no model is given.')
    eval_parser.add_argument('--model', help='Name of a saved model, in the output directory.')
    subparsers.add_parser('sweep-kl', parents=[common], help='Run the KL divergence sweep.')
    subparsers.add_parser('sweep-dim', parents=[common], help='Run the dimension sweep.')
    subparsers.add_parser('verify-bounds', parents=[common],
                          help='Run the nearest neighbor moment bound checks.')
    plot_parser = subparsers.add_parser('plot', parents=[common],
                                        help='Re-make a figure from a results CSV file.')
    plot_parser.add_argument('results', help='Path to a results CSV file.')
    plot_parser.add_argument('--figure', help='File name for the figure.')

    return parser


def resolve_config(args, experiment):
    """Resolve the experiment settings from parsed command line arguments."""

    return load_config(args.config, args.scale, experiment=experiment, seed=args.seed,
                       out_dir=args.out, trials=args.trials, workers=args.workers,
                       losses=tuple(args.loss) if args.loss else None)


def main(argv=None):
    """Run the command line interface.

    Parameters
    ----------
    argv : list of str, optional
        Command line arguments. Defaults to the arguments of the process.

    Returns
    -------
    int
        The exit code.
    """

    args = make_parser().parse_args(argv)

    try:
        return COMMANDS[args.command](args)
    except ConfigError as error:
        print('fdre: configuration error: {}'.format(error), file=sys.stderr)
        return EXIT_CONFIG
    except (FdreError, ArithmeticError, ValueError, OSError) as error:
        print('fdre: {} failed: {}: {}'.format(args.command, type(error).__name__, error),
              file=sys.stderr)
        return EXIT_RUNTIME


def _generate(args):
    """Generate and save datasets for a single problem."""

    cfg = resolve_config(args, 'single_run')
    db = _make_db(cfg)

    spec = make_mixture_spec(cfg.d_kl, cfg.n_modes[0], cfg.kl_values[0], seed=cfg.seed)
    splits = make_splits(spec, cfg.n_kl, cfg.n_val, cfg.n_test, cfg.seed)
    for (split, source), samples in splits.items():
        dump_dataset(samples, '{}_{}'.format(split, source), db)

    print('Saved datasets for d={}, M={}, KL={} to {}'.format(
        spec.d, spec.n_modes, spec.kl_target, db.get_folder_path('data')))

    return EXIT_OK


def _train(args):
    """Train an estimator on saved datasets."""

    cfg = resolve_config(args, 'single_run')
    db = _make_db(cfg)
    data = {name : load_dataset(name, db) for name in SPLIT_NAMES}

    spec = data['train_P'].spec
    model = init_mlp(make_widths(spec.d, cfg.hidden_width, cfg.n_hidden),
                     derive_rng(cfg.seed, 'model'))
    train_cfg = TrainConfig(cfg.losses[0], cfg.learning_rate, cfg.batch_size, cfg.patience_kl,
                            cfg.max_epochs, cfg.seed, cfg.weight_decay, cfg.parameterization)

    trained, report = train(model, data['train_P'], data['train_Q'], data['val_P'],
                            data['val_Q'], train_cfg, logging=args.log)

    save_model(trained.model, 'model', db)
    save_json(dict(report.as_dict(), config=train_cfg.as_dict()), 'train_report', db)
    print(json.dumps(report.as_dict(), indent=2))

    return EXIT_OK


def _eval(args):
    """Evaluate a saved model, or run and evaluate a single trial."""

    cfg = resolve_config(args, 'single_run')

    if args.model:
        db = _make_db(cfg)
        data = {name : load_dataset(name, db) for name in SPLIT_NAMES}
        train_cfg = TrainConfig(cfg.losses[0], parameterization=cfg.parameterization)
        trained = TrainedModel(load_model(args.model, db), train_cfg.loss_spec)
        report = evaluate(trained, data['test_P'].spec, data['test_P'], data['train_P'],
                          data['train_Q'], cfg.p_orders, cfg.n_pairs, cfg.seed)
    else:
        report, train_report = single_run(cfg, logging=args.log)
        print(json.dumps(train_report.as_dict(), indent=2), file=sys.stderr)

    print(json.dumps(report.as_dict(), indent=2))

    return EXIT_OK


def _sweep_kl(args):
    """Run the KL divergence sweep."""

    record = run_kl_sweep(resolve_config(args, 'kl_sweep'), logging=args.log)
    _report_failures(record)

    return EXIT_OK


def _sweep_dim(args):
    """Run the dimension sweep."""

    record = run_dim_sweep(resolve_config(args, 'dim_sweep'), logging=args.log)
    _report_failures(record)

    return EXIT_OK


def _verify_bounds(args):
    """Run the nearest neighbor bound checks."""

    cfg = resolve_config(args, 'nn_bounds')
    record = run_nn_bounds(cfg, logging=args.log)

    for row in record.rows:
        print('{kind:>15} d={d:<3} N={n_points:<6} order={order:<4} {status}'.format(**row))

    return EXIT_OK if record.passed else EXIT_ACCEPTANCE


def _plot(args):
    """Re-make a figure from a results file."""

    directory, f_name = os.path.split(args.results)
    if args.out:
        os.makedirs(args.out, exist_ok=True)

    path = render_figure(f_name, directory, args.figure, args.out)
    print('Saved figure to {}'.format(path))

    return EXIT_OK


COMMANDS = {'generate' : _generate, 'train' : _train, 'eval' : _eval, 'sweep-kl' : _sweep_kl,
            'sweep-dim' : _sweep_dim, 'verify-bounds' : _verify_bounds, 'plot' : _plot}


def _make_db(cfg):
    """Create the results database in the output directory."""

    base, name = os.path.split(os.path.abspath(cfg.out_dir))

    return create_file_structure(base, name)


def _report_failures(record):
    """Print a summary of cells with divergent or failed trials."""

    for cell in record.cells:
        if cell['n_divergent'] or cell['n_failed']:
            print('{kl_target} {d} {n_train} {loss}: {n_divergent} divergent, '
                  '{n_failed} failed'.format(**cell), file=sys.stderr)


if __name__ == '__main__':
    sys.exit(main())
