"""Finite-difference gradient verification."""

import numpy as np

from ecl_gsr.autodiff.params import ParamStore
from ecl_gsr.autodiff.tape import Tape, gradient, no_grad


def check_gradients(f, values, eps=1e-5):
    """
    Compare analytic gradients of ``f`` with central differences.

    ``f`` takes no arguments and must read the current data of ``values``
    (a ParamStore or a list of Values). Each coordinate is perturbed in place
    and restored afterwards.

    Args:
        f: Callable returning a scalar Value
        values: Differentiated inputs
        eps: Finite-difference step

    Returns:
        Maximum of |a - n| / max(1, |a|, |n|) over all coordinates
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if isinstance(values, ParamStore):
        values = values.values()
    values = list(values)

    with Tape():
        loss = f()
        analytic = gradient(loss, values)

    worst = 0.0
    with no_grad():
        for value, grad in zip(values, analytic):
            flat = value.data.reshape(-1)
            for i in range(flat.size):
                original = flat[i]
                flat[i] = original + eps
                upper = f().item()
                flat[i] = original - eps
                lower = f().item()
                flat[i] = original
                numeric = (upper - lower) / (2.0 * eps)
                a = float(grad.reshape(-1)[i])
                worst = max(worst, abs(a - numeric) / max(1.0, abs(a), abs(numeric)))
    return worst
