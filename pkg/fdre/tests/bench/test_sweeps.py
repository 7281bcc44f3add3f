"""Tests for fdre.bench.sweeps."""

import os

from pytest import raises, mark

import numpy as np

from fdre.core.errors import ConfigError
from fdre.analysis.report import EvalReport
from fdre.train.trainer import TrainReport
from fdre.utils.io import load_results, load_json
from fdre.bench import sweeps
from fdre.bench.sweeps import *
from fdre.bench.config import load_config

from fdre.tests.tobjs import load_experiment
from fdre.tests.tutils import optional_test

###################################################################################################
###################################################################################################

def _make_cell(**settings):

    cell = {'experiment' : 'kl_sweep', 'kl_target' : 1., 'd' : 2, 'n_modes' : 1,
            'n_train' : 200, 'loss' : 'kl'}
    cell.update(settings)

    return cell

def test_trial_seed():

    assert trial_seed(0, 'kl_sweep', 1., 2, 1, 0) == trial_seed(0, 'kl_sweep', 1., 2, 1, 0)
    assert trial_seed(0, 'kl_sweep', 1., 2, 1, 0) != trial_seed(0, 'kl_sweep', 1., 2, 1, 1)
    assert trial_seed(0, 'kl_sweep', 1., 2, 1, 0) != trial_seed(1, 'kl_sweep', 1., 2, 1, 0)
    assert trial_seed(0, 'kl_sweep', 1., 2, 1, 0) != trial_seed(0, 'kl_sweep', 2., 2, 1, 0)

def test_run_trial(texp):

    eval_report, train_report = run_trial(texp, _make_cell(), 0)

    assert isinstance(eval_report, EvalReport)
    assert isinstance(train_report, TrainReport)
    assert eval_report.n_train == 200
    assert eval_report.loss == 'kl'

def test_run_trial_shared_data(texp):

    # Losses are compared on the same data
    report_kl, _ = run_trial(texp, _make_cell(), 0)
    report_alpha, _ = run_trial(texp, _make_cell(loss='alpha:0.5'), 0)

    assert report_kl.diag == report_alpha.diag
    assert report_kl.lip_energy == report_alpha.lip_energy

def test_run_trial_pool(texp):

    report_pool, _ = run_trial(texp, _make_cell(experiment='dim_sweep', n_train=100), 0,
                               pool_size=200, patience=1)

    assert report_pool.n_train == 100

def test_single_run(texp):

    eval_report, train_report = single_run(texp)

    assert eval_report.loss == texp.losses[0]
    assert eval_report.d == texp.d_kl
    assert train_report.epochs_run <= texp.max_epochs

def test_run_kl_sweep():

    cfg = load_experiment('kl_sweep')
    record = run_kl_sweep(cfg, logging=None, save=False)

    assert record.experiment == 'kl_sweep'
    assert record.config_hash == cfg.config_hash
    assert len(record.rows) == len(cfg.kl_values) * len(cfg.losses) * cfg.trials
    assert len(record.cells) == len(cfg.kl_values) * len(cfg.losses)
    assert len(record.seconds) == len(record.cells)
    assert all(row['status'] in ['completed', 'divergent'] for row in record.rows)

    n_completed = sum(row['status'] == 'completed' for row in record.rows)
    assert len(record.reports) == n_completed
    assert sum(cell['n_completed'] for cell in record.cells) == n_completed

def test_run_kl_sweep_save(tmp_path):

    cfgs = [load_experiment('kl_sweep', out_dir=str(tmp_path / name)) for name in ['a', 'b']]
    records = [run_kl_sweep(cfg, logging='store') for cfg in cfgs]

    results = [os.path.join(cfg.out_dir, 'results') for cfg in cfgs]
    for f_name in ['sweep_kl_trials.csv', 'sweep_kl_cells.csv', 'sweep_kl_run.json']:
        assert os.path.isfile(os.path.join(results[0], f_name))

    meta, rows = load_results('sweep_kl_trials', results[0])
    assert meta['config_hash'] == cfgs[0].config_hash
    assert len(rows) == len(records[0].rows)

    run_info = load_json('sweep_kl_run', results[0])
    assert set(run_info['seconds']) == set(records[0].seconds)

    # Reruns with the same settings give identical result files
    for f_name in ['sweep_kl_trials.csv', 'sweep_kl_cells.csv']:
        with open(os.path.join(results[0], f_name), 'rb') as f_a, \
             open(os.path.join(results[1], f_name), 'rb') as f_b:
            assert f_a.read() == f_b.read()

@optional_test('seaborn')
def test_run_kl_sweep_modes(tmp_path):

    cfg = load_experiment('kl_sweep', n_modes=(1, 2), trials=1, out_dir=str(tmp_path))
    record = run_kl_sweep(cfg, logging=None)

    assert {cell['n_modes'] for cell in record.cells} == {1, 2}
    assert len(record.cells) == 2 * len(cfg.kl_values) * len(cfg.losses)

    assert os.path.isfile(os.path.join(cfg.out_dir, 'figures', 'sweep_kl.svg'))

def test_run_dim_sweep():

    cfg = load_experiment('dim_sweep')
    record = run_dim_sweep(cfg, logging=None, save=False)

    n_cells = len(cfg.dims) * len(cfg.sizes) * len(cfg.losses)
    assert len(record.cells) == n_cells
    assert len(record.rows) == n_cells * cfg.trials
    assert {cell['d'] for cell in record.cells} == set(cfg.dims)
    assert {row['n_train'] for row in record.rows} == set(cfg.sizes)

    with raises(ConfigError):
        load_experiment('dim_sweep', sizes=(100, 500))

def test_run_sweep_failures(monkeypatch):

    run_trial = sweeps.run_trial

    def failing_trial(cfg, cell, trial, pool_size=None, patience=None, logging=None):
        if trial == 1:
            raise FloatingPointError('overflow')
        return run_trial(cfg, cell, trial, pool_size, patience, logging)

    monkeypatch.setattr(sweeps, 'run_trial', failing_trial)

    cfg = load_experiment('kl_sweep', losses=('kl',))
    record = run_kl_sweep(cfg, logging=None, save=False)

    failed = [row for row in record.rows if row['status'] == 'failed']
    assert len(failed) == 1
    assert failed[0]['error'] == 'FloatingPointError: overflow'
    assert record.cells[0]['n_failed'] == 1

def test_run_nn_bounds(trun_log):

    cfg = load_experiment('nn_bounds', nn_kappas=(1, 2))
    record = run_nn_bounds(cfg, logging=trun_log, save=False)

    n_upper = len(cfg.nn_dims) * len(cfg.nn_sizes) * len(cfg.nn_kappas)
    n_weighted = len(cfg.nn_lower_sizes) * len(cfg.nn_weighted_p)
    assert len(record.rows) == n_upper + n_weighted + len(cfg.nn_lower_p)

    statuses = [row['status'] for row in record.rows]
    assert set(statuses) <= {'pass', 'fail', 'inconclusive', 'not_applicable'}

    # Orders above the dimension are outside the bound hypotheses
    not_applicable = [row for row in record.rows if row['status'] == 'not_applicable']
    assert [(row['d'], row['order']) for row in not_applicable] == [(1, 2)] * len(cfg.nn_sizes)
    assert all(row['estimate'] is None for row in not_applicable)

    assert len(record.cells) == len(cfg.nn_lower_sizes)
    assert record.passed
    assert trun_log.log[-1] == 'Bound checks passed.'
    assert record.meta_data.run_log['logging'] == 'store'

def test_aggregate_cell():

    cell = _make_cell()
    rows = [dict(cell, status='completed', lp_error_p1=val, val_gap=0.1) for val in [1., 2., 3.]]
    rows += [dict(cell, status='divergent', lp_error_p1=100., val_gap=None),
             dict(cell, status='failed')]

    agg = aggregate_cell(cell, rows, (1,))

    assert (agg['n_completed'], agg['n_divergent'], agg['n_failed']) == (3, 1, 1)
    assert agg['lp_error_p1_median'] == 2.
    assert np.isclose(agg['lp_error_p1_q25'], 1.5)
    assert np.isclose(agg['lp_error_p1_q75'], 2.5)
    assert np.isclose(agg['val_gap_median'], 0.1)

def test_aggregate_cell_empty():

    cell = _make_cell()
    agg = aggregate_cell(cell, [dict(cell, status='failed')], (1, 2))

    assert agg['n_completed'] == 0
    assert agg['lp_error_p2_median'] is None
    assert agg['val_gap_q75'] is None

def _check_sandwich(reports):

    for report in reports:
        if report.lower_kl_rhs is None:
            continue
        for lower_kl, lower_moment in zip(report.lower_kl_rhs, report.lower_moment_rhs):
            if lower_kl is not None:
                assert lower_kl <= lower_moment + 1e-12

def _medians(record, loss, key, label):

    cells = sorted([cell for cell in record.cells if cell['loss'] == loss],
                   key=lambda cell: cell[key])

    return [cell[label + '_median'] for cell in cells]

@mark.slow
def test_kl_sweep_trend():

    cfg = load_config(experiment='kl_sweep', kl_values=(1., 2., 4.), d_kl=5, n_kl=10000,
                      trials=10, losses=('kl', 'alpha:0.5'), p_orders=(1, 3), workers=0)
    record = run_kl_sweep(cfg, logging=None, save=False)

    for loss in cfg.losses:
        errors_1 = _medians(record, loss, 'kl_target', 'lp_error_p1')
        errors_3 = _medians(record, loss, 'kl_target', 'lp_error_p3')

        assert errors_3[0] <= errors_3[1] <= errors_3[2]
        assert errors_3[2] / errors_3[0] > errors_1[2] / errors_1[0]

    _check_sandwich(record.reports)

@mark.slow
def test_dim_sweep_trend():

    cfg = load_config(experiment='dim_sweep', kl_dim=3., dims=(10, 25, 50), sizes=(8000,),
                      pool_size=8000, trials=10, losses=('kl', 'alpha:0.5'), p_orders=(2,),
                      workers=0)
    record = run_dim_sweep(cfg, logging=None, save=False)

    for loss in cfg.losses:
        errors = _medians(record, loss, 'd', 'lp_error_p2')
        assert errors[0] <= errors[1] <= errors[2]

    _check_sandwich(record.reports)
