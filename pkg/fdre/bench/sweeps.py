"""Run experiment sweeps: trials over grids of problems, with aggregation and outputs."""

import os
import time
from itertools import product
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from fdre.core.errors import ConfigError, HypothesisError
from fdre.core.logs import check_log
from fdre.data.meta_data import MetaData
from fdre.autodiff.mlp import init_mlp, make_widths
from fdre.synth.rng import derive_rng
from fdre.synth.mixture import make_mixture_spec
from fdre.synth.samples import SampleSet, make_splits
from fdre.train.trainer import TrainConfig, StopReason, train
from fdre.analysis.report import evaluate
from fdre.analysis.nn import (nn_moment_upper_check, nn_moment_weighted_upper_check,
                              nn_moment_lower_check)
from fdre.utils.db import create_file_structure, check_directory
from fdre.utils.io import save_results, load_results, save_json

###################################################################################################
###################################################################################################

CELL_KEYS = ['experiment', 'kl_target', 'd', 'n_modes', 'n_train', 'loss']
TRAIN_KEYS = ['status', 'epochs_run', 'best_epoch', 'stop_reason', 'best_val_loss', 'val_gap',
              'error']
AGG_STATS = ['median', 'q25', 'q75']


@dataclass
class RunRecord():
    """Record of an experiment run.

    Attributes
    ----------
    experiment : str
        Which experiment was run.
    config_hash : str
        Hash of the experiment settings.
    rows : list of dict
        One row per trial, or per check for nearest neighbor runs.
    cells : list of dict
        Aggregated statistics per grid cell.
    reports : list of EvalReport
        Evaluation reports of the completed trials.
    seconds : dict
        Wall clock time, in seconds, per grid cell.
    meta_data : MetaData
        Meta data of the run.
    passed : bool or None
        For nearest neighbor runs, whether every conclusive check passed.
    """

    experiment: str
    config_hash: str
    rows: list = field(default_factory=list)
    cells: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    seconds: dict = field(default_factory=dict)
    meta_data: MetaData = None
    passed: bool = None


def trial_seed(seed, *keys):
    """Derive the seed of a trial from the master seed and the keys of its grid cell.

    Parameters
    ----------
    seed : int
        Master seed.
    *keys : int or float or str
        Keys identifying the trial. Floats are keyed by their string representation.

    Returns
    -------
    int
        Seed for the trial.
    """

    keys = [repr(float(key)) if isinstance(key, float) else key for key in keys]

    return int(derive_rng(seed, 'trial', *keys).integers(2 ** 63))


def run_trial(cfg, cell, trial, pool_size=None, patience=None, logging=None):
    """Run one trial: generate data, train an estimator, and evaluate it.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings.
    cell : dict
        Grid cell, with keys 'experiment', 'kl_target', 'd', 'n_modes', 'n_train' and 'loss'.
    trial : int
        Index of the trial.
    pool_size : int, optional
        Number of training samples to generate, of which the first 'n_train' are used.
        Defaults to 'n_train'.
    patience : int, optional
        Early stopping patience. Defaults to the KL sweep patience.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for training progress.

    Returns
    -------
    eval_report : EvalReport
        Evaluation of the trained estimator.
    train_report : TrainReport
        Summary of the training run.

    Notes
    -----
    Data, directions, initialization and shuffling depend on the trial and the problem,
    but not on the loss, so losses are compared on the same datasets.
    """

    seed = trial_seed(cfg.seed, cell['experiment'], cell['kl_target'], cell['d'],
                      cell['n_modes'], trial)
    n_train = cell['n_train']

    spec = make_mixture_spec(cell['d'], cell['n_modes'], cell['kl_target'], seed=seed)
    splits = make_splits(spec, pool_size or n_train, cfg.n_val, cfg.n_test, seed)
    train_p, train_q = [SampleSet(splits['train', source].points[:n_train], source, spec, 'train')
                        for source in ['P', 'Q']]

    model = init_mlp(make_widths(spec.d, cfg.hidden_width, cfg.n_hidden),
                     derive_rng(seed, 'model'))
    train_cfg = TrainConfig(cell['loss'], cfg.learning_rate, cfg.batch_size,
                            patience or cfg.patience_kl, cfg.max_epochs, seed,
                            cfg.weight_decay, cfg.parameterization)

    trained, train_report = train(model, train_p, train_q, splits['val', 'P'], splits['val', 'Q'],
                                  train_cfg, logging=logging)
    eval_report = evaluate(trained, spec, splits['test', 'P'], train_p, train_q,
                           cfg.p_orders, cfg.n_pairs, seed)

    return eval_report, train_report


def single_run(cfg, logging=None):
    """Run a single trial, with the first value of each grid.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings. Uses 'd_kl', 'n_kl', and the first KL value, number of modes
        and loss.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for training progress.

    Returns
    -------
    eval_report : EvalReport
        Evaluation of the trained estimator.
    train_report : TrainReport
        Summary of the training run.
    """

    cell = {'experiment' : 'single_run', 'kl_target' : cfg.kl_values[0], 'd' : cfg.d_kl,
            'n_modes' : cfg.n_modes[0], 'n_train' : cfg.n_kl, 'loss' : cfg.losses[0]}

    return run_trial(cfg, cell, 0, logging=logging)


def run_kl_sweep(cfg, logging='print', save=True):
    """Run the sweep over KL divergences, at a fixed dimension and training size.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional, default: 'print'
        What kind of logging, if any, to do for progress messages.
    save : bool, optional, default: True
        Whether to save results and figures to the output directory.

    Returns
    -------
    RunRecord
        The record of the run.
    """

    cells = [{'experiment' : 'kl_sweep', 'kl_target' : kl, 'd' : cfg.d_kl, 'n_modes' : n_modes,
              'n_train' : cfg.n_kl, 'loss' : loss}
             for kl, n_modes, loss in product(cfg.kl_values, cfg.n_modes, cfg.losses)]

    return _run_sweep(cfg, cells, 'sweep_kl', None, cfg.patience_kl, logging, save)


def run_dim_sweep(cfg, logging='print', save=True):
    """Run the sweep over dimensions and training sizes, at a fixed KL divergence.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional, default: 'print'
        What kind of logging, if any, to do for progress messages.
    save : bool, optional, default: True
        Whether to save results and figures to the output directory.

    Returns
    -------
    RunRecord
        The record of the run.

    Notes
    -----
    For each dimension and trial, a pool of training samples is generated once, and each
    training size uses its first n samples.
    """

    if max(cfg.sizes) > cfg.pool_size:
        raise ConfigError('Training sizes can not exceed the pool size.')

    cells = [{'experiment' : 'dim_sweep', 'kl_target' : cfg.kl_dim, 'd' : dim,
              'n_modes' : n_modes, 'n_train' : size, 'loss' : loss}
             for dim, size, n_modes, loss in product(cfg.dims, cfg.sizes, cfg.n_modes,
                                                     cfg.losses)]

    return _run_sweep(cfg, cells, 'sweep_dim', cfg.pool_size, cfg.patience_dim, logging, save)


def run_nn_bounds(cfg, logging='print', save=True):
    """Run the nearest neighbor moment checks, over the configured grids.

    Parameters
    ----------
    cfg : ExperimentConfig
        Experiment settings.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional, default: 'print'
        What kind of logging, if any, to do for progress messages.
    save : bool, optional, default: True
        Whether to save results and figures to the output directory.

    Returns
    -------
    RunRecord
        The record of the run. Each row has a 'status' of 'pass', 'fail', 'inconclusive', or
        'not_applicable', for cells outside the hypotheses of a bound.
    """

    db = _get_db(cfg, save)
    run_log = check_log(logging, db, 'nn_bounds_log')

    lower_spec = make_mixture_spec(cfg.nn_lower_d, 1, cfg.nn_lower_kl, seed=cfg.seed)
    checks = [('upper', dim, size, kappa) for dim, size, kappa
              in product(cfg.nn_dims, cfg.nn_sizes, cfg.nn_kappas)]
    checks += [('weighted_upper', cfg.nn_lower_d, size, p_order) for size, p_order
               in product(cfg.nn_lower_sizes, cfg.nn_weighted_p)]
    checks += [('lower', cfg.nn_lower_d, max(cfg.nn_lower_sizes), p_order)
               for p_order in cfg.nn_lower_p]

    def run_check(ind):

        kind, dim, size, order = checks[ind]
        rng = derive_rng(cfg.seed, 'nn', ind)
        start = time.perf_counter()

        try:
            if kind == 'upper':
                result = nn_moment_upper_check('cube', size, dim, order, cfg.nn_trials, rng)
            elif kind == 'weighted_upper':
                result = nn_moment_weighted_upper_check(lower_spec, size, order,
                                                        cfg.nn_trials, rng)
            else:
                result = nn_moment_lower_check(lower_spec, cfg.nn_lower_sizes, order,
                                               cfg.nn_lower_trials, rng)
        except HypothesisError:
            result = None

        return result, time.perf_counter() - start

    with ThreadPoolExecutor(max_workers=cfg.n_workers) as executor:
        results = list(executor.map(run_check, range(len(checks))))

    record = RunRecord('nn_bounds', cfg.config_hash, meta_data=MetaData(cfg.config_hash))
    for (kind, dim, size, order), (result, seconds) in zip(checks, results):

        row = {'kind' : kind, 'd' : dim, 'n_points' : size, 'order' : order,
               'estimate' : None, 'stderr' : None, 'bound' : None,
               'status' : 'not_applicable'}
        if result is not None:
            row.update(estimate=result.estimate, stderr=result.stderr, bound=result.bound,
                       status=_check_status(result.satisfied))
        record.rows.append(row)
        record.seconds['{}_d{}_n{}_o{}'.format(kind, dim, size, order)] = seconds

        if result is not None and kind == 'lower':
            record.cells.extend({'kind' : 'lower_trend', 'd' : dim, 'n_points' : n_points,
                                 'order' : order, 'estimate' : estimate, 'stderr' : stderr,
                                 'bound' : result.bound, 'status' : row['status']}
                                for n_points, estimate, stderr in result.trend)

        run_log('{} check d={} N={} order={}: {}'.format(kind, dim, size, order, row['status']))

    record.passed = all(row['status'] != 'fail' for row in record.rows)
    run_log('Bound checks {}.'.format('passed' if record.passed else 'FAILED'))

    if save:
        _save_record(record, db, 'nn_bounds', record.rows + record.cells, run_log)

    return _close(record, run_log, logging)


def aggregate_cell(cell, rows, p_orders):
    """Aggregate the trials of a grid cell, over completed, non-divergent trials.

    Parameters
    ----------
    cell : dict
        Grid cell definition.
    rows : list of dict
        Trial rows of the cell.
    p_orders : tuple of int
        Orders of the Lp errors.

    Returns
    -------
    dict
        Cell definition, counts of completed, divergent and failed trials, and the median
        and quartiles of each Lp error and of the validation gap. Statistics are None if no
        trial completed.
    """

    counts = {status : sum(row['status'] == status for row in rows)
              for status in ['completed', 'divergent', 'failed']}
    completed = [row for row in rows if row['status'] == 'completed']

    agg = dict(cell, n_completed=counts['completed'], n_divergent=counts['divergent'],
               n_failed=counts['failed'])

    labels = ['lp_error_p{}'.format(p_order) for p_order in p_orders] + ['val_gap']
    for label in labels:
        values = [row[label] for row in completed if row.get(label) is not None]
        quartiles = np.percentile(values, [50, 25, 75]).tolist() if values else [None] * 3
        agg.update({'{}_{}'.format(label, stat) : val for stat, val in zip(AGG_STATS, quartiles)})

    return agg


def render_figure(f_name, directory=None, fig_name=None, fig_directory=None):
    """Make the figure of a run from its saved results alone.

    Parameters
    ----------
    f_name : str
        Name of the results file: the cells file of a sweep, or the trials file of a
        nearest neighbor run.
    directory : str or ResultsDB, optional
        Folder or database object specifying the location of the results, and of the figure.
    fig_name : str, optional
        File name for the figure. Defaults to the results file name, with an svg extension.
    fig_directory : str, optional
        Folder to save the figure to. Defaults to the figures folder of the database, or to
        the folder of the results.

    Returns
    -------
    str
        Path of the saved figure.
    """

    # Import locally, as plotting dependencies are optional
    from fdre.plts.sweeps import plot_results

    _, rows = load_results(f_name, directory)

    fig_name = fig_name or os.path.splitext(os.path.basename(f_name))[0] + '.svg'
    fig_dir = fig_directory or check_directory(directory, 'figures')
    plot_results(rows, save_fig=True, f_name=fig_name, directory=fig_dir, close=True)

    return os.path.join(fig_dir, fig_name)


def _run_sweep(cfg, cells, name, pool_size, patience, logging, save):
    """Run all trials of a set of grid cells, with cells in sequence and trials in parallel."""

    db = _get_db(cfg, save)
    run_log = check_log(logging, db, name + '_log')
    record = RunRecord(cells[0]['experiment'], cfg.config_hash,
                       meta_data=MetaData(cfg.config_hash))

    def run_one(args):

        cell, trial = args
        row = dict(cell, trial=trial)
        try:
            eval_report, train_report = run_trial(cfg, cell, trial, pool_size, patience)
        except Exception as error:
            row.update(status='failed', error='{}: {}'.format(type(error).__name__, error))
            return row, None

        diverged = train_report.stop_reason is StopReason.DIVERGENCE
        row.update(status='divergent' if diverged else 'completed',
                   epochs_run=train_report.epochs_run, best_epoch=train_report.best_epoch,
                   stop_reason=train_report.stop_reason.value,
                   best_val_loss=train_report.best_val_loss, val_gap=train_report.val_gap)
        row.update(eval_report.as_row())

        return row, None if diverged else eval_report

    with ThreadPoolExecutor(max_workers=cfg.n_workers) as executor:
        for cell in cells:

            start = time.perf_counter()
            results = list(executor.map(run_one, [(cell, trial) for trial in range(cfg.trials)]))
            seconds = time.perf_counter() - start

            cell_rows = [row for row, _ in results]
            record.rows.extend(cell_rows)
            record.reports.extend(report for _, report in results if report is not None)

            agg = aggregate_cell(cell, cell_rows, cfg.p_orders)
            record.cells.append(agg)
            record.seconds[_cell_label(cell)] = seconds

            run_log('Cell {}: {} completed, {} divergent, {} failed, in {:.1f}s'.format(
                _cell_label(cell), agg['n_completed'], agg['n_divergent'], agg['n_failed'],
                seconds))
            if not agg['n_completed']:
                run_log('Cell {}: no completed trials, statistics not aggregated. {}'.format(
                    _cell_label(cell), '; '.join(sorted({row.get('error') or row['status']
                                                         for row in cell_rows}))))

    if save:
        _save_record(record, db, name, record.rows, run_log)

    return _close(record, run_log, logging)


def _save_record(record, db, name, rows, run_log):
    """Save the rows, aggregates, run information and figure of a record."""

    if record.experiment == 'nn_bounds':
        save_results(rows, name + '_trials', record.config_hash, db, _columns(rows))
    else:
        save_results(rows, name + '_trials', record.config_hash, db,
                     _columns(rows, CELL_KEYS + ['trial'] + TRAIN_KEYS))
        save_results(record.cells, name + '_cells', record.config_hash, db,
                     _columns(record.cells, CELL_KEYS))

    run_info = {'experiment' : record.experiment, 'config_hash' : record.config_hash,
                'seconds' : record.seconds, 'passed' : record.passed,
                'meta_data' : record.meta_data.as_dict()}
    save_json(run_info, name + '_run', db)

    results_name = name + ('_trials' if record.experiment == 'nn_bounds' else '_cells')
    try:
        render_figure(results_name, db, name + '.svg')
    except ImportError as error:
        run_log('Figure not saved: {}'.format(error))


def _get_db(cfg, save):
    """Get the results database of the output directory, creating it if saving."""

    if not save:
        return None

    base, name = os.path.split(os.path.abspath(cfg.out_dir))

    try:
        return create_file_structure(base, name)
    except OSError as error:
        raise ConfigError('Output directory {} is not writable.'.format(cfg.out_dir)) from error


def _close(record, run_log, logging):
    """Attach the log to the record meta data, closing the log if it was created here."""

    if run_log is logging:
        record.meta_data.run_log = {'name' : run_log.name, 'logging' : run_log.logging}
    else:
        record.meta_data.add_run_log(run_log)

    return record


def _columns(rows, prefix=()):
    """Get the union of row keys, after a fixed prefix, in order of first appearance."""

    columns = list(prefix)
    for row in rows:
        columns.extend(key for key in row if key not in columns)

    return columns


def _cell_label(cell):
    """Get a label for a grid cell."""

    return 'kl{}_d{}_m{}_n{}_{}'.format(cell['kl_target'], cell['d'], cell['n_modes'],
                                        cell['n_train'], cell['loss'])


def _check_status(satisfied):
    """Convert a check result to a status label."""

    return 'inconclusive' if satisfied is None else 'pass' if satisfied else 'fail'
