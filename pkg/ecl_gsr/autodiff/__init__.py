"""Dense reverse-mode differentiation, parameters and optimizer."""

from ecl_gsr.autodiff import ops
from ecl_gsr.autodiff.gradcheck import check_gradients
from ecl_gsr.autodiff.optim import Adam, lr_schedule
from ecl_gsr.autodiff.params import ParamStore, glorot, read_checkpoint
from ecl_gsr.autodiff.tape import Tape, Value, backward, current_tape, gradient, no_grad

__all__ = [
    "ops",
    "check_gradients",
    "Adam",
    "lr_schedule",
    "ParamStore",
    "glorot",
    "read_checkpoint",
    "Tape",
    "Value",
    "backward",
    "current_tape",
    "gradient",
    "no_grad",
]
