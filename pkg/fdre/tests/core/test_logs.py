"""Tests for fdre.core.logs."""

import os

from pytest import raises

from fdre.core.logs import *

###################################################################################################
###################################################################################################

def test_run_log_store(trun_log):

    trun_log('first')
    trun_log('second')

    assert trun_log.n_messages == 2
    assert trun_log.log == ['first', 'second']

    trun_log.close()
    assert not trun_log.is_active
    assert trun_log.end_time

    with raises(ValueError):
        trun_log('after close')

def test_run_log_print(capsys):

    run_log = RunLog('print')
    run_log('message')

    assert capsys.readouterr().out == 'message\n'

def test_run_log_none():

    run_log = RunLog()
    run_log('dropped')

    assert run_log.log is None
    assert run_log.n_messages == 1

def test_run_log_file(tdb):

    run_log = RunLog('file', tdb, 'test_log')
    run_log('to file')
    run_log.close()

    f_path = os.path.join(tdb.get_folder_path('logs'), 'test_log.txt')
    with open(f_path) as f_obj:
        lines = f_obj.read().split('\n')

    assert lines[0].startswith('RUN LOG - STARTED AT')
    assert lines[1] == 'to file'
    assert lines[2].startswith('RUN LOG - CLOSED AT')

def test_run_log_bad_mode():

    with raises(ValueError):
        RunLog('bad')

def test_check_log(trun_log):

    assert check_log(trun_log) is trun_log

    run_log = check_log('store', name='other')
    assert isinstance(run_log, RunLog)
    assert run_log.name == 'other'
