"""Class to store meta data for runs."""

import platform
from copy import deepcopy
from datetime import datetime

import numpy as np
import scipy

from fdre.version import __version__

###################################################################################################
###################################################################################################

class MetaData():
    """An object to hold the meta data for a run.

    Attributes
    ----------
    date : str
        The date that the run was started.
    versions : dict
        Versions of Python, fdre, numpy and scipy used for the run.
    config_hash : str or None
        Hash of the resolved configuration of the run.
    run_log : dict or None
        Details of the log object used for the run.
    log : list or None
        Logged messages, if messages were stored.
    """

    def __init__(self, config_hash=None):
        """Initialize a MetaData object.

        Parameters
        ----------
        config_hash : str, optional
            Hash of the resolved configuration of the run.
        """

        self.date = None
        self.versions = {'python' : platform.python_version(),
                         'fdre' : __version__,
                         'numpy' : np.__version__,
                         'scipy' : scipy.__version__}
        self.config_hash = config_hash
        self.run_log = None
        self.log = None

        self.get_date()


    def __getitem__(self, attr):
        return getattr(self, attr)


    def __repr__(self):
        return str(self.__dict__)


    def as_dict(self):
        """Get the attributes of the MetaData object as a dictionary."""

        # Copy is so that attributes aren't dropped from object itself
        mt_dict = deepcopy(self.__dict__)

        for label in ['versions', 'run_log']:
            attr = mt_dict.pop(label)
            if attr:
                for key, val in attr.items():
                    mt_dict[label + '_' + key] = val

        return mt_dict


    def get_date(self):
        """Get the current date and attach to object."""

        self.date = datetime.now().strftime("%Y-%m-%d_%H:%M:%S")


    def add_run_log(self, run_log):
        """Add a run log to the MetaData object, closing the log.

        Parameters
        ----------
        run_log : RunLog
            The object used to log progress of the run.
        """

        if run_log.is_active:
            run_log.close()

        self.run_log = {'name' : run_log.name,
                        'logging' : run_log.logging,
                        'n_messages' : run_log.n_messages,
                        'start_time' : run_log.start_time,
                        'end_time' : run_log.end_time}

        if isinstance(run_log.log, list):
            self.log = list(run_log.log)
