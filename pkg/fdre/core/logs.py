"""Object for logging progress messages from long running computations."""

import os
import time

from fdre.utils.db import check_directory
from fdre.utils.io import check_ext

###################################################################################################
###################################################################################################

class RunLog():
    """Object to handle progress logging.

    Attributes
    ----------
    name : str
        Name of the log, used as the file name if logging to file.
    logging : {None, 'print', 'store', 'file'}
        What kind of logging, if any, to do for messages.
    log : None or list or FileObject
        Log of messages. Format depends on `logging`.
    n_messages : int
        Number of messages that have been logged.
    start_time : str
        Time when the log was opened.
    end_time : str
        Time when the log was closed.
    """

    def __init__(self, logging=None, directory=None, name='run_log'):
        """Initialize a RunLog object.

        Parameters
        ----------
        logging : {None, 'print', 'store', 'file'}, optional
            What kind of logging, if any, to do for messages.
        directory : ResultsDB or str or None, optional
            A string or object containing a file path, used if logging to file.
        name : str, optional, default: 'run_log'
            Name of the log.

        Examples
        --------
        Initialize a ``RunLog`` object that stores messages in memory:

        >>> run_log = RunLog('store')
        >>> run_log('epoch 1')
        >>> run_log.log
        ['epoch 1']
        """

        self.name = name
        self.n_messages = 0
        self.start_time = self._get_time()
        self.end_time = str()
        self.is_active = True

        self.logging, self.log = self._set_up_logging(logging, directory)


    def __call__(self, message):
        """Log a message.

        Parameters
        ----------
        message : str
            Message to log.
        """

        if not self.is_active:
            raise ValueError('RunLog object is not active.')

        self.n_messages += 1

        if self.logging == 'print':
            print(message)

        elif self.logging == 'store':
            self.log.append(message)

        elif self.logging == 'file':
            self.log.write('\n' + message)


    def close(self):
        """Set the current object as inactive."""

        self.end_time = self._get_time()
        self.is_active = False

        if self.logging == 'file':
            self.log.write('\nRUN LOG - CLOSED AT:  ' + self.end_time)
            self.log.close()


    def _set_up_logging(self, logging, directory):
        """Set up for message logging.

        Parameters
        ----------
        logging : {None, 'print', 'store', 'file'}
            What kind of logging, if any, to do for messages.
        directory : ResultsDB or str or None
            A string or object containing a file path.
        """

        if logging in [None, 'print']:
            log = None

        elif logging == 'store':
            log = []

        elif logging == 'file':
            log = open(os.path.join(check_directory(directory, 'logs'),
                                    check_ext(self.name, '.txt')), 'w')
            log.write('RUN LOG - STARTED AT:  ' + self.start_time)

        else:
            raise ValueError('Logging type not understood.')

        return logging, log


    @staticmethod
    def _get_time():
        """Get the current time.

        Returns
        -------
        str
            Current date & time.
        """

        return time.strftime('%H:%M:%S %A %d %B %Y')


def check_log(logging, directory=None, name='run_log'):
    """Get a RunLog object, passing through an already initialized one.

    Parameters
    ----------
    logging : RunLog or {None, 'print', 'store', 'file'}
        A log object, or the kind of logging to set up.
    directory : ResultsDB or str or None, optional
        A string or object containing a file path, used if logging to file.
    name : str, optional, default: 'run_log'
        Name of the log, if a new one is created.

    Returns
    -------
    RunLog
        The log object to use.
    """

    return logging if isinstance(logging, RunLog) else RunLog(logging, directory, name)
