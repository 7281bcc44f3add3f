"""Tests for fdre.utils.io."""

import os
import json

from pytest import raises

import numpy as np

from fdre.core.errors import InconsistentDataError
from fdre.autodiff.mlp import evaluate
from fdre.utils.io import *

###################################################################################################
###################################################################################################

def test_check_ext():

    assert check_ext('file', '.csv') == 'file.csv'
    assert check_ext('file.csv', '.csv') == 'file.csv'

def test_save_load_model(tdb, tmodel):

    save_model(tmodel, 'test_model', tdb)
    loaded = load_model('test_model', tdb)

    assert loaded.widths == tmodel.widths
    assert all(np.array_equal(new, old) for new, old in zip(loaded.params, tmodel.params))

    points = np.random.default_rng(0).normal(size=(4, tmodel.input_width))
    assert np.array_equal(evaluate(loaded, points), evaluate(tmodel, points))

def test_load_model_errors(tdb, tmodel):

    save_model(tmodel, 'bad_model', tdb)
    f_path = tdb.get_file_path('models', 'bad_model.json')

    with open(f_path) as f_obj:
        checkpoint = json.load(f_obj)

    checkpoint['widths'] = [3, 8, 8, 1]
    with open(f_path, 'w') as f_obj:
        json.dump(checkpoint, f_obj)
    with raises(InconsistentDataError):
        load_model('bad_model', tdb)

    checkpoint['format'] = 'other/1'
    with open(f_path, 'w') as f_obj:
        json.dump(checkpoint, f_obj)
    with raises(InconsistentDataError):
        load_model('bad_model', tdb)

def test_dump_load_dataset(tdb, tsplits):

    samples = tsplits['train', 'Q']
    dump_dataset(samples, 'test_train_Q', tdb)

    with open(tdb.get_file_path('data', 'test_train_Q.csv')) as f_obj:
        assert f_obj.readline().strip() == 'x0,x1'

    loaded = load_dataset('test_train_Q.csv', tdb)

    assert np.array_equal(loaded.points, samples.points)
    assert loaded.spec == samples.spec
    assert loaded.source is samples.source
    assert loaded.split is samples.split

def test_load_dataset_inconsistent(tdb, tsplits):

    dump_dataset(tsplits['val', 'P'], 'test_short', tdb)
    f_path = tdb.get_file_path('data', 'test_short.csv')

    with open(f_path) as f_obj:
        lines = f_obj.readlines()
    with open(f_path, 'w') as f_obj:
        f_obj.writelines(lines[:-1])

    with raises(InconsistentDataError):
        load_dataset('test_short', tdb)

def test_save_load_json(tdb):

    save_json({'value' : 1.5, 'items' : [1, 2]}, 'test_json', tdb)

    assert load_json('test_json', tdb) == {'value' : 1.5, 'items' : [1, 2]}
    assert os.path.exists(tdb.get_file_path('results', 'test_json.json'))

def test_save_load_results(tdb):

    rows = [{'loss' : 'kl', 'lp_error_p1' : 0.5, 'bound' : None},
            {'loss' : 'alpha:0.5', 'lp_error_p1' : 1.25, 'bound' : 3.}]
    save_results(rows, 'test_results', 'abc123', tdb, columns=['loss', 'lp_error_p1', 'bound'])

    with open(tdb.get_file_path('results', 'test_results.csv')) as f_obj:
        assert f_obj.readline() == '# fdre-results schema=1 config_hash=abc123\n'
        assert f_obj.readline().strip() == 'loss,lp_error_p1,bound'

    meta, loaded = load_results('test_results', tdb)

    assert meta == {'schema' : 1, 'config_hash' : 'abc123'}
    assert loaded == rows

def test_save_results_missing_columns(tdb):

    save_results([{'a' : 1.}, {'b' : 2.}], 'test_missing', 'h', tdb, columns=['a', 'b'])
    _, loaded = load_results('test_missing', tdb)

    assert loaded == [{'a' : 1., 'b' : None}, {'a' : None, 'b' : 2.}]

def test_load_results_errors(tdb):

    f_path = tdb.get_file_path('results', 'test_plain.csv')
    with open(f_path, 'w') as f_obj:
        f_obj.write('a,b\n1,2\n')

    with raises(InconsistentDataError):
        load_results('test_plain', tdb)

    with open(f_path, 'w') as f_obj:
        f_obj.write('# fdre-results schema=99 config_hash=h\na\n1\n')

    with raises(InconsistentDataError):
        load_results('test_plain', tdb)
