"""Adam optimizer and step-decay learning-rate schedule."""

import numpy as np

from ecl_gsr.core.exceptions import GradientError


def lr_schedule(epoch, base=0.001, halve_every=20):
    """Learning rate halved every ``halve_every`` epochs."""
    return base * 0.5 ** (epoch // halve_every)


class Adam:
    """Adam with bias-corrected moments, one moment pair per named parameter."""

    def __init__(self, store, lr=0.001, betas=(0.9, 0.999), eps=1e-8):
        self.store = store
        self.lr = lr
        self.beta1, self.beta2 = betas
        self.eps = eps
        self.t = 0
        self.m = {name: np.zeros_like(p.data) for name, p in store.items()}
        self.v = {name: np.zeros_like(p.data) for name, p in store.items()}

    def step(self, lr=None):
        """
        Apply one update using the gradients currently held by the store.

        Args:
            lr: Step size for this update, defaults to the constructor value

        Raises:
            GradientError: A parameter has no gradient
        """
        lr = self.lr if lr is None else lr
        params = self.store.items()
        missing = [name for name, p in params if p.grad is None]
        if missing:
            raise GradientError(f"No gradient for parameters: {', '.join(missing)}")

        self.t += 1
        correction1 = 1.0 - self.beta1**self.t
        correction2 = 1.0 - self.beta2**self.t
        for name, p in params:
            g = p.grad
            self.m[name] = self.beta1 * self.m[name] + (1.0 - self.beta1) * g
            self.v[name] = self.beta2 * self.v[name] + (1.0 - self.beta2) * g * g
            m_hat = self.m[name] / correction1
            v_hat = self.v[name] / correction2
            p.data -= lr * m_hat / (np.sqrt(v_hat) + self.eps)
