"""On-disk results database for fdre runs."""

import os

###################################################################################################
###################################################################################################

FOLDERS = ('data', 'models', 'results', 'figures', 'logs')

class ResultsDB():
    """Folder layout for the outputs of fdre runs.

    Attributes
    ----------
    paths : dict
        Paths of the base folder, under 'base', and of each sub-folder.

    Notes
    -----
    Sub-folders of the base folder hold:

    - data: dataset dumps, as CSV with a sidecar JSON file
    - models: model checkpoints, as JSON
    - results: results CSV files, report JSON files and run metadata
    - figures: figure files
    - logs: run log files
    """

    def __init__(self, base='', folders=FOLDERS):
        """Initialize a ResultsDB object.

        Parameters
        ----------
        base : str, optional
            Path to the base folder. Defaults to the current directory.
        folders : tuple of str, optional
            Names of the sub-folders.

        Examples
        --------
        >>> db = ResultsDB('fdre_db')
        >>> db.get_folder_path('models')
        'fdre_db/models'
        """

        self.paths = {'base' : base or ''}
        self.paths.update({folder : os.path.join(self.paths['base'], folder)
                           for folder in folders})


    def get_folder_path(self, folder):
        """Get the path to a folder of the database.

        Parameters
        ----------
        folder : str
            Folder name, or 'base'.

        Returns
        -------
        str
            Path to the folder.
        """

        try:
            return self.paths[folder]
        except KeyError:
            raise ValueError('Folder {} is not part of the results database.'.format(folder))


    def get_file_path(self, folder, f_name):
        """Get the path to a file in a folder of the database.

        Examples
        --------
        >>> ResultsDB('fdre_db').get_file_path('results', 'sweep_kl.csv')
        'fdre_db/results/sweep_kl.csv'
        """

        return os.path.join(self.get_folder_path(folder), f_name)


    def make_folders(self):
        """Create any missing folders of the database on disk."""

        for path in self.paths.values():
            if path:
                os.makedirs(path, exist_ok=True)

###################################################################################################
###################################################################################################

def check_directory(directory, folder):
    """Resolve a directory argument to a path.

    Parameters
    ----------
    directory : ResultsDB or str or None
        Where to find or put a file. None is the current directory.
    folder : str
        Folder to use if `directory` is a ResultsDB.

    Returns
    -------
    str
        The resolved path.
    """

    if isinstance(directory, ResultsDB):
        return directory.get_folder_path(folder)
    if isinstance(directory, str):
        return directory
    if directory is None:
        return ''

    raise ValueError('Directory must be a ResultsDB, a path or None.')


def create_file_structure(base=None, name='fdre_db', folders=FOLDERS):
    """Create a results database on disk.

    Parameters
    ----------
    base : str, optional
        Folder to create the database in. Defaults to the current directory.
    name : str, optional, default: 'fdre_db'
        Name of the base folder of the database.
    folders : tuple of str, optional
        Names of the sub-folders.

    Returns
    -------
    ResultsDB
        The created database. Existing folders and files are kept.
    """

    db = ResultsDB(os.path.join(base or os.getcwd(), name), folders)
    db.make_folders()

    return db
