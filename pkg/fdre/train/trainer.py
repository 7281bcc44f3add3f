"""Train ratio estimator networks, with mini-batches and early stopping."""

from math import ceil
from enum import Enum
from dataclasses import dataclass, field, asdict

import numpy as np

from fdre.core.errors import ConfigError, InconsistentDataError, NonFiniteError, ShapeError
from fdre.core.logs import check_log
from fdre.autodiff.tensor import Tape
from fdre.autodiff.mlp import forward, evaluate
from fdre.autodiff.adam import AdamState, adam_step
from fdre.divergence.losses import LossSpec, make_objective
from fdre.synth.mixture import true_ratio
from fdre.synth.rng import derive_rng

###################################################################################################
###################################################################################################

class StopReason(str, Enum):
    """Why a training run stopped."""

    PATIENCE = 'patience'
    MAX_EPOCHS = 'max_epochs'
    DIVERGENCE = 'divergence'


@dataclass(frozen=True)
class TrainConfig():
    """Settings for a training run.

    Attributes
    ----------
    loss : str or LossSpec
        The loss, as a generator name, such as 'kl' or 'alpha:0.5', or as a LossSpec.
    learning_rate : float
        Adam step size.
    batch_size : int
        Number of samples from each of P and Q per step.
    patience_epochs : int
        Number of epochs without validation improvement before stopping.
    max_epochs : int
        Maximum number of epochs.
    seed : int
        Seed for shuffling batches.
    weight_decay : float
        Coefficient of an L2 penalty on parameters. Off by default.
    parameterization : {'log_scale', 'direct'}
        Mapping from network outputs to ratios, used if `loss` is given by name.
    """

    loss: object = 'kl'
    learning_rate: float = 1e-4
    batch_size: int = 128
    patience_epochs: int = 3
    max_epochs: int = 5000
    seed: int = 0
    weight_decay: float = 0.
    parameterization: str = 'log_scale'

    def __post_init__(self):

        try:
            self.loss_spec
        except ValueError as error:
            raise ConfigError('Loss {} not understood: {}'.format(self.loss, error)) from error

        if not self.learning_rate > 0:
            raise ConfigError('The learning rate must be positive.')
        for label in ['batch_size', 'patience_epochs', 'max_epochs']:
            value = getattr(self, label)
            if int(value) != value or value < 1:
                raise ConfigError('Setting {} must be a positive integer.'.format(label))
        if self.patience_epochs > self.max_epochs:
            raise ConfigError('Patience can not exceed the maximum number of epochs.')
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError('The seed must be a non-negative integer.')
        if self.weight_decay < 0:
            raise ConfigError('Weight decay can not be negative.')


    @property
    def loss_spec(self):
        """The loss, as a LossSpec object."""

        if isinstance(self.loss, LossSpec):
            return self.loss

        return LossSpec(self.loss, self.parameterization)


    def as_dict(self):
        """Get the settings as a JSON serializable dictionary."""

        settings = asdict(self)
        spec = self.loss_spec
        settings['loss'] = spec.generator.label
        settings['parameterization'] = spec.parameterization.value

        return settings


@dataclass
class TrainReport():
    """Summary of a training run.

    Attributes
    ----------
    epochs_run : int
        Number of completed epochs.
    best_val_loss : float
        Lowest validation loss, that of the returned snapshot.
    best_epoch : int
        Epoch of the returned snapshot. 0 means the initial model.
    stop_reason : StopReason
        Why training stopped.
    train_history, val_history : list of float
        Mean training loss and validation loss for each completed epoch.
    initial_val_loss : float
        Validation loss of the model before training.
    val_gap : float or None
        Best validation loss minus the loss of the true ratio on the same validation samples,
        which estimates the minimal loss, -D_f(Q || P) plus the offset.
        None if the true ratio is not available.
    offset : float
        Constant by which the training objective exceeds the empirical f-divergence loss.
    """

    epochs_run: int
    best_val_loss: float
    best_epoch: int
    stop_reason: StopReason
    train_history: list = field(default_factory=list)
    val_history: list = field(default_factory=list)
    initial_val_loss: float = np.nan
    val_gap: float = None
    offset: float = 0.

    def __post_init__(self):

        self.stop_reason = StopReason(self.stop_reason)

        if not len(self.train_history) == len(self.val_history) == self.epochs_run:
            raise InconsistentDataError('History lengths do not match the number of epochs.')

        losses = [self.initial_val_loss] + list(self.val_history)
        if not np.isclose(self.best_val_loss, np.nanmin(losses), rtol=0, atol=1e-12):
            raise InconsistentDataError('Best validation loss is not the minimum over history.')


    def as_dict(self):
        """Get the report as a JSON serializable dictionary."""

        report = asdict(self)
        report['stop_reason'] = self.stop_reason.value

        return report


@dataclass(frozen=True)
class TrainedModel():
    """A trained ratio estimator.

    Attributes
    ----------
    model : MlpModel
        Network parameters.
    loss_spec : LossSpec
        The loss the network was trained with, which sets how outputs map to ratios.
    """

    model: object
    loss_spec: LossSpec

    @property
    def parameterization(self):
        """The mapping from network outputs to ratios."""

        return self.loss_spec.parameterization


def train(model, train_p, train_q, val_p, val_q, cfg, logging=None, verbose=False):
    """Train a ratio estimator network.

    Parameters
    ----------
    model : MlpModel
        Initial network.
    train_p, train_q : SampleSet or 2d array
        Training samples from P and from Q.
    val_p, val_q : SampleSet or 2d array
        Validation samples from P and from Q.
    cfg : TrainConfig
        Training settings.
    logging : {None, 'print', 'store', 'file'} or RunLog, optional
        What kind of logging, if any, to do for progress messages.
    verbose : bool, optional, default: False
        Whether to print out updates.

    Returns
    -------
    trained : TrainedModel
        The snapshot with the lowest validation loss.
    report : TrainReport
        Summary of the run.

    Notes
    -----
    - Each epoch shuffles both training sets, and takes ceil(n_min / batch_size) steps, each
      pairing a batch from P with a batch of the same size from Q, where n_min is the size of
      the smaller set.
    - Validation loss is computed on the full validation sets at the end of each epoch.
      Any strict improvement resets the patience counter.
    - If a loss or gradient becomes non-finite, training rewinds to the best snapshot and stops.
    """

    run_log = check_log(logging, name='train_log')

    points = [_get_points(samples) for samples in [train_p, train_q, val_p, val_q]]
    for arr in points:
        if arr.ndim != 2 or arr.shape[1] != model.input_width or arr.shape[0] < 1:
            raise ShapeError('Samples must be non-empty, and match the model input width.')
    train_p_pts, train_q_pts, val_p_pts, val_q_pts = points

    spec = cfg.loss_spec
    objective, offset = make_objective(spec)

    def val_loss(mdl):
        return float(objective(evaluate(mdl, val_p_pts), evaluate(mdl, val_q_pts)))

    rng = derive_rng(cfg.seed, 'shuffle')
    state = AdamState.for_params(model.params, cfg.learning_rate)

    n_min = min(len(train_p_pts), len(train_q_pts))
    n_steps = ceil(n_min / cfg.batch_size)

    best_model = model
    initial = best_loss = val_loss(model)
    best_epoch, wait = 0, 0
    train_history, val_history = [], []
    stop_reason = StopReason.MAX_EPOCHS

    for epoch in range(1, cfg.max_epochs + 1):

        perm_p = rng.permutation(len(train_p_pts))[:n_min]
        perm_q = rng.permutation(len(train_q_pts))[:n_min]

        try:
            step_losses = []
            for step in range(n_steps):

                start, stop = step * cfg.batch_size, min((step + 1) * cfg.batch_size, n_min)
                batch = np.concatenate([train_p_pts[perm_p[start:stop]],
                                        train_q_pts[perm_q[start:stop]]])

                tape = Tape()
                outputs = forward(model, batch, tape)
                loss = objective(outputs[:stop - start], outputs[stop - start:])
                grads = tape.backward(loss)

                params, state = adam_step(state, model.params, grads, cfg.weight_decay)
                model = model.with_params(params)
                step_losses.append(loss.item())

            epoch_val = val_loss(model)

        except NonFiniteError as error:
            stop_reason = StopReason.DIVERGENCE
            _log(run_log, verbose, 'Epoch {}: diverged, rewinding to epoch {} ({}).'.format(
                epoch, best_epoch, error))
            break

        train_history.append(float(np.mean(step_losses)))
        val_history.append(epoch_val)

        if epoch_val < best_loss:
            best_model, best_loss, best_epoch, wait = model, epoch_val, epoch, 0
        else:
            wait += 1

        _log(run_log, verbose, 'Epoch {}: train loss {:.6f}, val loss {:.6f}'.format(
            epoch, train_history[-1], epoch_val))

        if wait >= cfg.patience_epochs:
            stop_reason = StopReason.PATIENCE
            break

    report = TrainReport(len(val_history), best_loss, best_epoch, stop_reason,
                         train_history, val_history, initial,
                         _compute_val_gap(spec, val_p, val_q, best_loss, offset), offset)

    _log(run_log, verbose, 'Stopped after {} epochs ({}), best epoch {}.'.format(
        report.epochs_run, stop_reason.value, best_epoch))
    if run_log is not logging:
        run_log.close()

    return TrainedModel(best_model, spec), report


def _compute_val_gap(spec, val_p, val_q, best_loss, offset):
    """Compute the validation loss gap, if the true ratio is available for the samples.

    The minimal loss is estimated by the loss of the true ratio on the same validation samples,
    a Monte Carlo estimate of -D_f(Q || P) plus the offset.
    """

    mixture = getattr(val_p, 'spec', None)
    if mixture is None:
        return None

    gen = spec.generator
    with np.errstate(over='ignore', invalid='ignore', divide='ignore'):
        ratios_p = true_ratio(mixture, _get_points(val_p))
        ratios_q = true_ratio(mixture, _get_points(val_q))
        loss_at_truth = (np.mean(np.asarray(gen.conj_of_fprime(ratios_p), dtype=float))
                         - np.mean(np.asarray(gen.f_prime(ratios_q), dtype=float)) + offset)

    gap = best_loss - loss_at_truth

    return float(gap) if np.isfinite(gap) else None


def _get_points(samples):
    """Get the array of points from a sample set or array."""

    return np.asarray(getattr(samples, 'points', samples), dtype=float)


def _log(run_log, verbose, message):
    """Send a message to the run log, printing if verbose."""

    run_log(message)
    if verbose and run_log.logging != 'print':
        print(message)
