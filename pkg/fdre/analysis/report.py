"""Evaluation reports for trained ratio estimators."""

from dataclasses import dataclass, asdict

import numpy as np

from fdre.core.errors import InconsistentDataError
from fdre.synth.mixture import analytic_kl, energy
from fdre.synth.samples import empirical_diag
from fdre.synth.rng import derive_rng
from fdre.train.predict import predict_ratio, estimate_lipschitz
from fdre.analysis.lp import lp_error
from fdre.analysis.bounds import bound_rhs
from fdre.analysis.moments import analytic_moment, monte_carlo_kl

###################################################################################################
###################################################################################################

P_ORDERS = (1, 2, 3)
SANDWICH_TOL = 1e-12

# Per order fields, with their labels in flat rows
PER_ORDER = {'lp_errors' : 'lp_error', 'lp_stderrs' : 'lp_stderr',
             'upper_rhs' : 'upper_rhs', 'lower_moment_rhs' : 'lower_moment_rhs',
             'lower_kl_rhs' : 'lower_kl_rhs', 'upper_bound' : 'upper_bound',
             'lower_moment_bound' : 'lower_moment_bound', 'lower_kl_bound' : 'lower_kl_bound',
             'bound_applies' : 'bound_applies'}


@dataclass(frozen=True)
class EvalReport():
    """Evaluation of a trained ratio estimator, with the error bounds for comparison.

    Attributes
    ----------
    loss : str
        Name of the loss the estimator was trained with.
    seed : int
        Seed of the run.
    n_train : int
        Number of training samples, N = min(R, S).
    d, n_modes : int
        Dimension and number of modes of the problem.
    kl_target, analytic_kl, kl_qp : float
        Target KL(P || Q), its analytic value, and KL(Q || P), used in the lower bound.
    diag : float
        Diameter proxy: the max norm side of the bounding box of the training samples.
    lip_energy, lip_estimator : float
        Sampled pair proxies of the Lipschitz constants of the energy, L, and of the
        estimated ratio, K.
    p_orders : tuple of int
        Orders of the errors.
    lp_errors, lp_stderrs : tuple of float
        Lp errors, and their standard errors, for each order.
    upper_rhs, lower_moment_rhs, lower_kl_rhs : tuple of float or None
        Right hand sides of the bounds on N^(1/d) times the Lp error, for each order.
        Lower bounds are None if L is 0.
    upper_bound, lower_moment_bound, lower_kl_bound : tuple of float or None
        The right hand sides divided by N^(1/d), on the scale of the Lp errors.
    bound_applies : tuple of bool
        Whether each order is within the range 1 <= p <= d / 2 of the bounds.

    Notes
    -----
    The diameter and Lipschitz constants are proxies: the bounds assume a compact domain
    and Lipschitz classes, which the normal data and unconstrained networks do not satisfy.
    """

    loss: str
    seed: int
    n_train: int
    d: int
    n_modes: int
    kl_target: float
    analytic_kl: float
    kl_qp: float
    diag: float
    lip_energy: float
    lip_estimator: float
    p_orders: tuple
    lp_errors: tuple
    lp_stderrs: tuple
    upper_rhs: tuple
    lower_moment_rhs: tuple
    lower_kl_rhs: tuple
    upper_bound: tuple
    lower_moment_bound: tuple
    lower_kl_bound: tuple
    bound_applies: tuple

    def __post_init__(self):

        if any(err < 0 for err in self.lp_errors):
            raise InconsistentDataError('Lp errors can not be negative.')

        for lower_kl, lower_moment in zip(self.lower_kl_rhs, self.lower_moment_rhs):
            if lower_kl is not None and lower_kl > lower_moment + SANDWICH_TOL:
                raise InconsistentDataError('KL lower bound exceeds the moment lower bound.')


    def as_dict(self):
        """Get the report as a JSON serializable dictionary."""

        return {key : list(val) if isinstance(val, tuple) else val
                for key, val in asdict(self).items()}


    def as_row(self):
        """Get the report as a single flat row, with one column per error order for each value.

        Notes
        -----
        Per order values get a suffix, such as 'lp_error_p2' for the L2 error.
        """

        row = {key : val for key, val in asdict(self).items() if key not in PER_ORDER}
        row['p_orders'] = ' '.join(str(p_order) for p_order in self.p_orders)

        for key, label in PER_ORDER.items():
            for p_order, val in zip(self.p_orders, getattr(self, key)):
                row['{}_p{}'.format(label, p_order)] = val

        return row


def evaluate(trained, spec, test_p, train_p, train_q, p_orders=P_ORDERS, n_pairs=10000,
             seed=0, n_kl=10 ** 5):
    """Evaluate a trained ratio estimator, computing its errors and the bound values.

    Parameters
    ----------
    trained : TrainedModel
        The trained estimator.
    spec : MixtureSpec
        The problem definition.
    test_p : SampleSet
        Test samples from P.
    train_p, train_q : SampleSet
        Training samples, used for the diameter and Lipschitz proxies.
    p_orders : tuple of int, optional, default: (1, 2, 3)
        Orders of the errors.
    n_pairs : int, optional, default: 10000
        Number of random pairs for the Lipschitz proxies.
    seed : int, optional, default: 0
        Seed for the Lipschitz proxies and the Monte Carlo KL(Q || P).
    n_kl : int, optional, default: 100000
        Number of samples for the Monte Carlo KL(Q || P), used if there is more than one mode.

    Returns
    -------
    EvalReport
        The evaluation.
    """

    n_train = min(train_p.n, train_q.n)
    pooled = np.concatenate([train_p.points, train_q.points])

    diag = empirical_diag(train_p, train_q)
    lip_energy = estimate_lipschitz(lambda pts: energy(spec, pts), pooled, n_pairs,
                                    derive_rng(seed, 'lipschitz', 0))
    lip_estimator = estimate_lipschitz(lambda pts: predict_ratio(trained, pts), pooled, n_pairs,
                                       derive_rng(seed, 'lipschitz', 1))

    # KL is symmetric between P and Q for a single mode
    kl_qp = analytic_kl(spec) if spec.n_modes == 1 else \
        monte_carlo_kl(spec, n_kl, derive_rng(seed, 'moments'), 'QP').value

    scale = n_train ** (1. / spec.d)
    lp_errors, lp_stderrs, rhs, bounds = [], [], [], []
    for p_order in p_orders:

        est = lp_error(trained, spec, test_p, p_order)
        lp_errors.append(est.value)
        lp_stderrs.append(est.stderr)

        values = bound_rhs(lip_energy, lip_estimator, diag, analytic_moment(spec, 2 * p_order),
                           analytic_moment(spec, p_order), kl_qp, p_order)
        rhs.append(values)
        bounds.append(tuple(None if val is None else val / scale for val in values))

    upper_rhs, lower_moment_rhs, lower_kl_rhs = zip(*rhs)
    upper_bound, lower_moment_bound, lower_kl_bound = zip(*bounds)

    return EvalReport(trained.loss_spec.generator.label, seed, n_train, spec.d, spec.n_modes,
                      spec.kl_target, analytic_kl(spec), float(kl_qp), diag,
                      lip_energy, lip_estimator, tuple(p_orders),
                      tuple(lp_errors), tuple(lp_stderrs),
                      upper_rhs, lower_moment_rhs, lower_kl_rhs,
                      upper_bound, lower_moment_bound, lower_kl_bound,
                      tuple(bool(p_order <= spec.d / 2) for p_order in p_orders))
