"""Load & save functions for fdre."""

import os
import csv
import json

import numpy as np

from fdre.core.errors import InconsistentDataError, ShapeError
from fdre.utils.db import check_directory

###################################################################################################
###################################################################################################

MODEL_FORMAT = 'fdre-mlp/1'
RESULTS_SCHEMA = 1
RESULTS_TAG = '# fdre-results'


def check_ext(f_name, ext):
    """Check the extension for a file name, and add if missing.

    Parameters
    ----------
    f_name : str
        The name of the file.
    ext : str
        The extension to check and add.

    Returns
    -------
    str
        File name with the extension added.
    """

    return f_name + ext if not f_name.endswith(ext) else f_name


def save_model(model, f_name, directory=None):
    """Save a model checkpoint, as a JSON file.

    Parameters
    ----------
    model : MlpModel
        Model to save.
    f_name : str
        Name for the file to be saved out.
    directory : str or ResultsDB, optional
        Folder or database object specifying the save location.

    Notes
    -----
    Parameters are stored as row-major nested lists, which reload exactly.
    """

    file_path = os.path.join(check_directory(directory, 'models'), check_ext(f_name, '.json'))

    checkpoint = {'format' : MODEL_FORMAT,
                  'widths' : [int(width) for width in model.widths],
                  'weights' : [weight.tolist() for weight in model.weights],
                  'biases' : [bias.tolist() for bias in model.biases]}

    with open(file_path, 'w') as f_obj:
        json.dump(checkpoint, f_obj)


def load_model(f_name, directory=None):
    """Load a model checkpoint, from a JSON file.

    Parameters
    ----------
    f_name : str
        File name of the checkpoint to load.
    directory : str or ResultsDB, optional
        Folder or database object specifying the location to load from.

    Returns
    -------
    MlpModel
        The loaded model.

    Raises
    ------
    InconsistentDataError
        If the file is not a checkpoint, or its contents do not match its declared widths.
    """

    # Import locally, to avoid circular imports
    from fdre.autodiff.mlp import MlpModel

    file_path = os.path.join(check_directory(directory, 'models'), check_ext(f_name, '.json'))

    with open(file_path, 'r') as f_obj:
        checkpoint = json.load(f_obj)

    if checkpoint.get('format') != MODEL_FORMAT:
        raise InconsistentDataError('File is not a model checkpoint of format {}.'.format(
            MODEL_FORMAT))

    try:
        model = MlpModel([np.array(weight, dtype=float) for weight in checkpoint['weights']],
                         [np.array(bias, dtype=float) for bias in checkpoint['biases']])
    except ShapeError as error:
        raise InconsistentDataError('Checkpoint parameters are malformed.') from error

    if list(model.widths) != checkpoint['widths']:
        raise InconsistentDataError('Checkpoint parameters do not match the declared widths.')

    return model


def dump_dataset(samples, f_name, directory=None):
    """Save a sample set, as a CSV file with a sidecar JSON file of the problem definition.

    Parameters
    ----------
    samples : SampleSet
        Samples to save.
    f_name : str
        Name for the files, without extension.
    directory : str or ResultsDB, optional
        Folder or database object specifying the save location.
    """

    folder = check_directory(directory, 'data')

    with open(os.path.join(folder, check_ext(f_name, '.csv')), 'w', newline='') as f_obj:
        writer = csv.writer(f_obj)
        writer.writerow(['x{}'.format(ind) for ind in range(samples.d)])
        writer.writerows(samples.points.tolist())

    sidecar = {'spec' : samples.spec.as_dict(),
               'source' : samples.source.value,
               'split' : samples.split.value if samples.split else None,
               'n' : samples.n}
    with open(os.path.join(folder, check_ext(f_name, '.json')), 'w') as f_obj:
        json.dump(sidecar, f_obj)


def load_dataset(f_name, directory=None):
    """Load a sample set, as saved by `dump_dataset`.

    Parameters
    ----------
    f_name : str
        Name of the files, without extension.
    directory : str or ResultsDB, optional
        Folder or database object specifying the location to load from.

    Returns
    -------
    SampleSet
        The loaded samples, with the problem definition.
    """

    # Import locally, to avoid circular imports
    from fdre.synth.mixture import MixtureSpec
    from fdre.synth.samples import SampleSet

    folder = check_directory(directory, 'data')
    f_name = f_name[:-4] if f_name.endswith('.csv') else f_name

    with open(os.path.join(folder, check_ext(f_name, '.json')), 'r') as f_obj:
        sidecar = json.load(f_obj)
    spec = MixtureSpec.from_dict(sidecar['spec'])

    with open(os.path.join(folder, check_ext(f_name, '.csv')), 'r', newline='') as f_obj:
        reader = csv.reader(f_obj)
        header = next(reader)
        points = np.array([[float(val) for val in row] for row in reader if row])

    if len(header) != spec.d or points.shape != (sidecar['n'], spec.d):
        raise InconsistentDataError('Dataset file does not match its sidecar definition.')

    return SampleSet(points, sidecar['source'], spec, sidecar['split'])


def save_json(data, f_name, directory=None, folder='results'):
    """Save a dictionary, such as a report, as a JSON file.

    Parameters
    ----------
    data : dict
        Data to save. Must be JSON serializable.
    f_name : str
        Name for the file to be saved out.
    directory : str or ResultsDB, optional
        Folder or database object specifying the save location.
    folder : str, optional, default: 'results'
        Which folder to save to, if `directory` is a database object.
    """

    file_path = os.path.join(check_directory(directory, folder), check_ext(f_name, '.json'))

    with open(file_path, 'w') as f_obj:
        json.dump(data, f_obj, indent=2)


def load_json(f_name, directory=None, folder='results'):
    """Load a dictionary from a JSON file.

    Parameters
    ----------
    f_name : str
        File name to load.
    directory : str or ResultsDB, optional
        Folder or database object specifying the location to load from.
    folder : str, optional, default: 'results'
        Which folder to load from, if `directory` is a database object.

    Returns
    -------
    dict
        The loaded data.
    """

    file_path = os.path.join(check_directory(directory, folder), check_ext(f_name, '.json'))

    with open(file_path, 'r') as f_obj:
        return json.load(f_obj)


def save_results(rows, f_name, config_hash, directory=None, columns=None):
    """Save result rows as a CSV file, with a metadata first row.

    Parameters
    ----------
    rows : list of dict
        Result rows. Missing and None values are written as empty fields.
    f_name : str
        Name for the file to be saved out.
    config_hash : str
        Hash of the configuration that produced the results.
    directory : str or ResultsDB, optional
        Folder or database object specifying the save location.
    columns : list of str, optional
        Column order. Defaults to the keys of the first row.

    Notes
    -----
    The first row is a comment, of the form ``# fdre-results schema=1 config_hash=<hash>``.
    """

    columns = list(columns) if columns else list(rows[0].keys()) if rows else []
    file_path = os.path.join(check_directory(directory, 'results'), check_ext(f_name, '.csv'))

    with open(file_path, 'w', newline='') as f_obj:
        f_obj.write('{} schema={} config_hash={}\n'.format(RESULTS_TAG, RESULTS_SCHEMA,
                                                           config_hash))
        writer = csv.DictWriter(f_obj, fieldnames=columns, extrasaction='ignore', restval='')
        writer.writeheader()
        for row in rows:
            writer.writerow({key : '' if val is None else val for key, val in row.items()})


def load_results(f_name, directory=None):
    """Load result rows from a CSV file, as saved by `save_results`.

    Parameters
    ----------
    f_name : str
        File name to load.
    directory : str or ResultsDB, optional
        Folder or database object specifying the location to load from.

    Returns
    -------
    meta : dict
        The metadata of the file, with keys 'schema' and 'config_hash'.
    rows : list of dict
        Result rows. Numeric fields are converted to float, and empty fields to None.

    Raises
    ------
    InconsistentDataError
        If the file does not start with a results metadata row.
    """

    file_path = os.path.join(check_directory(directory, 'results'), check_ext(f_name, '.csv'))

    with open(file_path, 'r', newline='') as f_obj:

        first = f_obj.readline().strip()
        if not first.startswith(RESULTS_TAG):
            raise InconsistentDataError('File does not start with a results metadata row.')

        meta = dict(item.split('=', 1) for item in first[len(RESULTS_TAG):].split())
        if int(meta.get('schema', -1)) != RESULTS_SCHEMA:
            raise InconsistentDataError('Results schema {} is not supported.'.format(
                meta.get('schema')))
        meta['schema'] = int(meta['schema'])

        rows = [{key : _parse_field(val) for key, val in row.items()}
                for row in csv.DictReader(f_obj)]

    return meta, rows


def _parse_field(value):
    """Parse a CSV field, to a float if numeric, or None if empty."""

    if value is None or value == '':
        return None

    try:
        return float(value)
    except ValueError:
        return value
