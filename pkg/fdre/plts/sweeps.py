"""Plots for experiment sweeps and nearest neighbor checks.

Notes
-----
Plots take result rows, as returned by `fdre.utils.io.load_results`, or as held in a RunRecord,
so that figures can be re-made from saved results alone.
"""

import numpy as np

from fdre.plts.utils import check_axes, get_colors, unique, savefig
from fdre.core.modutils import safe_import

plt = safe_import('.pyplot', 'matplotlib')
sns = safe_import('seaborn')

###################################################################################################
###################################################################################################

@savefig
def plot_kl_sweep(cells, p_orders=None, axes=None, **plt_kwargs):
    """Plot Lp errors against the KL divergence, with one panel per error order.

    Parameters
    ----------
    cells : list of dict
        Aggregated cell rows of a KL sweep.
    p_orders : list of int, optional
        Error orders to plot. Defaults to all orders in the rows.
    axes : list of matplotlib.Axes, optional
        Figure axes upon which to plot.
    **plt_kwargs
        Additional arguments to pass into the plot function.

    Notes
    -----
    Points are medians over trials, and error bars span the 25th to 75th percentiles.
    """

    p_orders = p_orders or _get_p_orders(cells)
    axes = check_axes(axes, len(p_orders))

    groups = unique((row['loss'], _n_modes(row)) for row in cells)
    colors = get_colors(len(groups))

    with sns.plotting_context('notebook', font_scale=plt_kwargs.pop('font_scale', 1.0)):
        for ax, p_order in zip(axes, p_orders):
            for (loss, n_modes), color in zip(groups, colors):
                rows = sorted([row for row in cells
                               if (row['loss'], _n_modes(row)) == (loss, n_modes)],
                              key=lambda row: row['kl_target'])
                _plot_iqr(ax, [row['kl_target'] for row in rows], rows,
                          'lp_error_p{:g}'.format(p_order), color=color,
                          label=_group_label(loss, n_modes, groups), **plt_kwargs)

            ax.set_xlabel('KL divergence')
            ax.set_ylabel('L{:g} error'.format(p_order))
            ax.legend(title='loss')

    plt.tight_layout()


@savefig
def plot_dim_sweep(cells, p_order=2, axes=None, **plt_kwargs):
    """Plot Lp errors against the training size, with one line per dimension and one panel per loss.

    Parameters
    ----------
    cells : list of dict
        Aggregated cell rows of a dimension sweep.
    p_order : int, optional, default: 2
        Error order to plot.
    axes : list of matplotlib.Axes, optional
        Figure axes upon which to plot.
    **plt_kwargs
        Additional arguments to pass into the plot function.
    """

    losses = unique(row['loss'] for row in cells)
    groups = sorted(unique((row['d'], _n_modes(row)) for row in cells))
    multi_modes = len(unique(n_modes for _, n_modes in groups)) > 1
    colors = get_colors(len(groups))
    axes = check_axes(axes, len(losses))

    with sns.plotting_context('notebook', font_scale=plt_kwargs.pop('font_scale', 1.0)):
        for ax, loss in zip(axes, losses):
            for (dim, n_modes), color in zip(groups, colors):
                rows = sorted([row for row in cells if row['loss'] == loss and
                               (row['d'], _n_modes(row)) == (dim, n_modes)],
                              key=lambda row: row['n_train'])
                label = 'd={:g}'.format(dim) + (', M={:g}'.format(n_modes) if multi_modes else '')
                _plot_iqr(ax, [row['n_train'] for row in rows], rows,
                          'lp_error_p{:g}'.format(p_order), color=color, label=label,
                          **plt_kwargs)

            ax.set_xscale('log')
            ax.set_xlabel('Training samples')
            ax.set_ylabel('L{:g} error'.format(p_order))
            ax.set_title(loss)
            ax.legend()

    plt.tight_layout()


@savefig
def plot_nn_bounds(rows, axes=None, **plt_kwargs):
    """Plot nearest neighbor moment estimates against N, on log-log axes, with their bounds.

    Parameters
    ----------
    rows : list of dict
        Check rows of a nearest neighbor run.
    axes : list of matplotlib.Axes, optional
        Figure axes upon which to plot. The first panel shows upper bound checks, and the
        second the lower bound trend.
    **plt_kwargs
        Additional arguments to pass into the plot function.

    Notes
    -----
    Upper check estimates of E||X_(1) - x||^kappa are shown on the distance scale,
    as N^(1/d) estimate^(1/kappa), along with the bound on the same scale.
    """

    axes = check_axes(axes, 2)
    upper = [row for row in rows if row['kind'] == 'upper' and row['estimate'] is not None]
    trend = [row for row in rows if row['kind'] == 'lower_trend']

    groups = unique((row['d'], row['order']) for row in upper)
    colors = get_colors(max(len(groups), 1))

    with sns.plotting_context('notebook', font_scale=plt_kwargs.pop('font_scale', 1.0)):

        for (dim, kappa), color in zip(groups, colors):
            cell = sorted([row for row in upper if (row['d'], row['order']) == (dim, kappa)],
                          key=lambda row: row['n_points'])
            n_points = np.array([row['n_points'] for row in cell], dtype=float)
            scale = n_points ** (1. / dim)
            estimates = scale * np.array([row['estimate'] for row in cell]) ** (1. / kappa)
            bounds = scale * np.array([row['bound'] for row in cell]) ** (1. / kappa)
            axes[0].plot(n_points, estimates, 'o-', color=color,
                         label='d={:g}, k={:g}'.format(dim, kappa), **plt_kwargs)
            axes[0].plot(n_points, bounds, '--', color=color, alpha=0.6)

        axes[0].set_xscale('log')
        axes[0].set_yscale('log')
        axes[0].set_xlabel('N')
        axes[0].set_ylabel('Scaled NN distance')
        axes[0].set_title('Upper bound')
        if groups:
            axes[0].legend(fontsize='small')

        for order, color in zip(unique(row['order'] for row in trend), colors):
            cell = sorted([row for row in trend if row['order'] == order],
                          key=lambda row: row['n_points'])
            n_points = [row['n_points'] for row in cell]
            axes[1].errorbar(n_points, [row['estimate'] for row in cell],
                             yerr=[row['stderr'] for row in cell], fmt='o-', color=color,
                             label='p={:g}'.format(order), **plt_kwargs)
            axes[1].axhline(cell[0]['bound'], linestyle='--', color=color, alpha=0.6)

        axes[1].set_xscale('log')
        axes[1].set_yscale('log')
        axes[1].set_xlabel('N')
        axes[1].set_ylabel('Scaled weighted NN moment')
        axes[1].set_title('Lower bound')
        if trend:
            axes[1].legend()

    plt.tight_layout()


def plot_results(rows, **kwargs):
    """Plot result rows, choosing the plot from the kind of experiment.

    Parameters
    ----------
    rows : list of dict
        Aggregated cell rows of a sweep, or check rows of a nearest neighbor run.
    **kwargs
        Additional arguments, passed into the plot function, including save options.
    """

    if not rows:
        raise ValueError('There are no result rows to plot.')

    if 'kind' in rows[0]:
        plot_nn_bounds(rows, **kwargs)
    elif rows[0].get('experiment') == 'dim_sweep':
        plot_dim_sweep(rows, **kwargs)
    else:
        plot_kl_sweep(rows, **kwargs)


def _plot_iqr(ax, xs, rows, metric, **plt_kwargs):
    """Plot medians of a metric with interquartile error bars, skipping rows without statistics."""

    points = [(xval, row[metric + '_median'], row[metric + '_q25'], row[metric + '_q75'])
              for xval, row in zip(xs, rows) if row.get(metric + '_median') is not None]
    if not points:
        return

    xvals, medians, lower, upper = (np.array(vals, dtype=float) for vals in zip(*points))
    ax.errorbar(xvals, medians, yerr=[medians - lower, upper - medians], fmt='o-', capsize=3,
                **plt_kwargs)


def _n_modes(row):
    """Get the number of modes of a row, which is 1 for rows saved without it."""

    return row.get('n_modes') or 1


def _group_label(loss, n_modes, groups):
    """Label a line by its loss, adding the number of modes if rows have more than one."""

    if len(unique(modes for _, modes in groups)) > 1:
        return '{}, M={:g}'.format(loss, n_modes)

    return loss


def _get_p_orders(cells):
    """Get the error orders present in aggregated cell rows."""

    return sorted({float(key[len('lp_error_p'):-len('_median')]) for key in cells[0]
                   if key.startswith('lp_error_p') and key.endswith('_median')})
