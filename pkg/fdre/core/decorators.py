"""Decorators for fdre."""

from functools import wraps

import numpy as np

from fdre.core.errors import NonFiniteError, DivergenceError

###################################################################################################
###################################################################################################

def check_finite_loss(func):
    """Decorator to diagnose non-finite loss values as training divergence.

    Notes
    -----
    Any NonFiniteError raised while computing the loss is re-raised as a DivergenceError.
    The returned value, either a Tensor or an array-like, is also checked to be finite.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):

        try:
            with np.errstate(over='ignore', invalid='ignore'):
                out = func(*args, **kwargs)
        except DivergenceError:
            raise
        except NonFiniteError as error:
            raise DivergenceError('Loss {} is not finite: {}'.format(func.__name__, error)) \
                from error

        value = getattr(out, 'data', out)
        if not np.all(np.isfinite(value)):
            raise DivergenceError('Loss {} is not finite.'.format(func.__name__))

        return out

    return wrapper


def check_positive(*names):
    """Decorator to check that named array arguments are strictly positive.

    Parameters
    ----------
    *names : str
        Names of the keyword or positional arguments to check.
    """

    def decorator(func):

        arg_names = func.__code__.co_varnames[:func.__code__.co_argcount]

        @wraps(func)
        def wrapper(*args, **kwargs):

            for name in names:
                if name in kwargs:
                    value = kwargs[name]
                elif name in arg_names and arg_names.index(name) < len(args):
                    value = args[arg_names.index(name)]
                else:
                    continue
                if np.any(np.asarray(value) <= 0):
                    raise ValueError('Input {} must be strictly positive.'.format(name))

            return func(*args, **kwargs)

        return wrapper

    return decorator
