"""Utility functions for dealing with optional dependencies of fdre."""

from importlib import import_module

###################################################################################################
###################################################################################################

class Dependency():
    """An object to represent an optional dependency that is not available.

    Attributes
    ----------
    mod_name : str
        The name of the module that was not imported.

    Notes
    -----
    This object raises an error if something tries to use the represented module,
    and evaluates as False, so that availability can be checked with `if mod:`.
    """

    def __init__(self, mod_name):

        self.mod_name = mod_name

    def __bool__(self):

        return False

    def __getattr__(self, val):

        message = "The {} module is required for this functionality - try `pip install fdre[plot]`."
        raise ImportError(message.format(self.mod_name))


def safe_import(*args):
    """Import a module, returning a placeholder if the module is not available.

    Parameters
    ----------
    *args : str
        Module to import, as pass through inputs to import_module.
        For a whole module, pass a single string, ex: ('matplotlib').
        For a sub-module, pass two strings, ex: ('.pyplot', 'matplotlib').

    Returns
    -------
    mod : module or Dependency
        Requested module, if successfully imported, otherwise a Dependency placeholder.
    """

    try:
        mod = import_module(*args)
    except ImportError:
        mod = Dependency(args[-1])

    return mod
