"""Dense array numerics with reverse-mode automatic differentiation."""

from .tensor import Tensor, Tape, backward
from .mlp import MlpModel, init_mlp, zeros_mlp, make_widths, forward, evaluate
from .adam import AdamState, adam_step
