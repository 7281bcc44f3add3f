"""Training of ratio estimator networks."""

from .trainer import TrainConfig, TrainReport, TrainedModel, StopReason, train
from .predict import predict_ratio, predict_energy, estimate_lipschitz
