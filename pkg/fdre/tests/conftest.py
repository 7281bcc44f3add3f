"""Configuration file for pytest."""

import pytest

import os
import shutil

from fdre.data.meta_data import MetaData
from fdre.core.logs import RunLog
from fdre.core.modutils import safe_import
from fdre.autodiff.mlp import zeros_mlp
from fdre.utils.db import create_file_structure

from fdre.tests.tobjs import (TestDB, load_spec, load_splits, load_model, load_trained,
                              load_experiment)
from fdre.tests.tsettings import TEST_DB_NAME, TEST_WIDTHS

plt = safe_import('.pyplot', 'matplotlib')

###################################################################################################
###################################################################################################

def pytest_addoption(parser):

    parser.addoption('--runslow', action='store_true', default=False,
                     help='Run slow Monte Carlo and training acceptance tests.')

def pytest_configure(config):

    config.addinivalue_line('markers', 'slow: slow Monte Carlo or training acceptance test')

    # Set backend for matplotlib tests, if mpl is available
    if plt:
        plt.switch_backend('agg')

def pytest_collection_modifyitems(config, items):

    if config.getoption('--runslow'):
        return

    skip_slow = pytest.mark.skip(reason='Slow test: use --runslow to run.')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)

@pytest.fixture(scope='session', autouse=True)
def check_db():
    """Once, prior to session, this will clear and re-initialize the test file database."""

    tests_dir = os.path.dirname(os.path.abspath(__file__))

    # If the directories already exist, clear them
    if os.path.exists(os.path.join(tests_dir, TEST_DB_NAME)):
        shutil.rmtree(os.path.join(tests_dir, TEST_DB_NAME))

    create_file_structure(tests_dir, TEST_DB_NAME)

@pytest.fixture(scope='session')
def tdb():
    return TestDB()

@pytest.fixture(scope='session')
def tspec():
    return load_spec()

@pytest.fixture(scope='session')
def tspec_null():
    return load_spec(kl_target=0.)

@pytest.fixture(scope='session')
def tspec_modes():
    return load_spec(d=3, n_modes=3, kl_target=2.)

@pytest.fixture(scope='session')
def tsplits(tspec):
    return load_splits(tspec)

@pytest.fixture(scope='function')
def tmodel():
    return load_model()

@pytest.fixture(scope='function')
def tmodel_zeros():
    return zeros_mlp(TEST_WIDTHS)

@pytest.fixture(scope='session')
def ttrained():
    return load_trained()

@pytest.fixture(scope='function')
def texp():
    return load_experiment()

@pytest.fixture(scope='function')
def tmetadata():
    return MetaData()

@pytest.fixture(scope='function')
def trun_log():
    return RunLog('store')
