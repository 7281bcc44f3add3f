"""Plot utilities."""

import os
from functools import wraps

from fdre.utils.db import ResultsDB
from fdre.core.modutils import safe_import

plt = safe_import('.pyplot', 'matplotlib')
sns = safe_import('seaborn')

###################################################################################################
###################################################################################################

# Fixed salt for the ids in SVG files, so that saved figures are reproducible
SVG_SALT = 'fdre'


def check_axes(axes, n_panels, panel_size=(4., 3.5)):
    """Check whether figure axes are defined, creating a row of panels if not.

    Parameters
    ----------
    axes : list of matplotlib.Axes or matplotlib.Axes or None
        Axes to check.
    n_panels : int
        Number of panels required.
    panel_size : (float, float), optional
        Size of each panel, for new axes.

    Returns
    -------
    list of matplotlib.Axes
        Axes to plot on.
    """

    if axes is None:
        _, axes = plt.subplots(1, n_panels, squeeze=False,
                               figsize=(panel_size[0] * n_panels, panel_size[1]))

    if hasattr(axes, 'flat'):
        axes = list(axes.flat)
    elif isinstance(axes, (list, tuple)):
        axes = list(axes)
    else:
        axes = [axes]

    if len(axes) < n_panels:
        raise ValueError('Requested {} panels, but only {} axes were given.'.format(
            n_panels, len(axes)))

    return axes


def get_colors(n_colors):
    """Get a list of colors, from the seaborn 'deep' palette.

    Parameters
    ----------
    n_colors : int
        Number of colors.

    Returns
    -------
    list of tuple
        RGB colors.
    """

    return sns.color_palette('deep', n_colors)


def unique(values):
    """Get the unique values of a sequence, in order of first appearance."""

    out = []
    for value in values:
        if value not in out:
            out.append(value)

    return out


def savefig(func):
    """Decorator to save out a figure, if requested.

    Notes
    -----
    SVG files are saved without a date, and with a fixed id salt, so that re-plotting the
    same data gives identical files.
    """

    @wraps(func)
    def decorated(*args, **kwargs):

        save_fig = kwargs.pop('save_fig', False)
        f_name = kwargs.pop('f_name', None)
        f_path = kwargs.pop('directory', None)
        close = kwargs.pop('close', None)
        transparent = kwargs.pop('transparent', False)

        if isinstance(f_path, ResultsDB):
            f_path = f_path.get_folder_path('figures')

        with plt.rc_context({'svg.hashsalt' : SVG_SALT}):

            out = func(*args, **kwargs)

            if save_fig:
                full_path = os.path.join(f_path, f_name) if f_path else f_name
                metadata = {'Date' : None} if full_path.endswith('.svg') else None
                plt.savefig(full_path, bbox_inches='tight', transparent=transparent,
                            metadata=metadata)

        if close:
            plt.close()

        return out

    return decorated
