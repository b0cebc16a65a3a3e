"""Reverse-mode differentiation over float64 numpy arrays.

Operations executed while a :class:`Tape` is active are recorded on it in
execution order, which is a topological order of the computation. Outside a
tape (or under :func:`no_grad`) operations only compute their forward value.
"""

import threading
from contextlib import contextmanager

import numpy as np

from ecl_gsr.core.exceptions import NumericalError, ShapeError, TapeError

_state = threading.local()
_NO_GRAD = object()


def _stack():
    if not hasattr(_state, "stack"):
        _state.stack = []
    return _state.stack


def current_tape():
    """Innermost active tape, or None when recording is off."""
    stack = _stack()
    if not stack or stack[-1] is _NO_GRAD:
        return None
    return stack[-1]


@contextmanager
def no_grad():
    """Suspend recording for the enclosed block."""
    stack = _stack()
    stack.append(_NO_GRAD)
    try:
        yield
    finally:
        stack.pop()


class Value:
    """A float64 array that may take part in differentiation.

    ``grad`` stays None until :func:`backward` reaches this value.
    """

    __array_priority__ = 1000

    def __init__(self, data, requires_grad=False, name=None):
        self.data = np.array(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad = None
        self.name = name
        self.op = "leaf"
        self._parents = ()
        self._backward = None
        self._tape = None

    def __repr__(self):
        label = self.name or self.op
        return f"Value({label}, shape={self.shape}, requires_grad={self.requires_grad})"

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def is_leaf(self):
        return self._backward is None

    @property
    def T(self):
        from ecl_gsr.autodiff import ops

        return ops.transpose(self)

    def item(self):
        if self.data.size != 1:
            raise ShapeError(f"item() needs a single element, got shape {self.shape}")
        return float(self.data.reshape(()))

    def numpy(self):
        return self.data

    def detach(self):
        return Value(self.data)

    def zero_grad(self):
        self.grad = None

    def sum(self, axis=None, keepdims=False):
        from ecl_gsr.autodiff import ops

        return ops.sum_(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims=False):
        from ecl_gsr.autodiff import ops

        return ops.mean(self, axis=axis, keepdims=keepdims)

    def __add__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.add(self, other)

    def __radd__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.add(other, self)

    def __sub__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.sub(self, other)

    def __rsub__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.sub(other, self)

    def __mul__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.mul(self, other)

    def __rmul__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.mul(other, self)

    def __truediv__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.div(self, other)

    def __neg__(self):
        from ecl_gsr.autodiff import ops

        return ops.neg(self)

    def __matmul__(self, other):
        from ecl_gsr.autodiff import ops

        return ops.matmul(self, other)

    def __pow__(self, exponent):
        from ecl_gsr.autodiff import ops

        return ops.power(self, exponent)

    def __getitem__(self, index):
        from ecl_gsr.autodiff import ops

        return ops.index(self, index)


def as_value(x):
    return x if isinstance(x, Value) else Value(x)


def make_value(data, parents, backward, op):
    """
    Wrap an op's forward result and record it on the active tape.

    Args:
        data: Forward result
        parents: Tuple of input Values
        backward: Callable mapping the output gradient to one gradient (or
            None) per parent
        op: Operation name used in errors

    Returns:
        Value
    """
    data = np.asarray(data, dtype=np.float64)
    if not np.isfinite(data).all():
        raise NumericalError(f"{op} produced non-finite values", op=op)
    out = Value(data)
    out.op = op
    tape = current_tape()
    if tape is not None and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._backward = backward
        tape.record(out)
    return out


class Tape:
    """Ordered record of differentiable operations.

    A tape supports one backward pass; a second one raises :class:`TapeError`.
    """

    def __init__(self):
        self.nodes = []
        self.consumed = False

    def __enter__(self):
        _stack().append(self)
        return self

    def __exit__(self, exc_type, exc, tb):
        stack = _stack()
        if stack and stack[-1] is self:
            stack.pop()
        return False

    def __len__(self):
        return len(self.nodes)

    def record(self, value):
        if self.consumed:
            raise TapeError("Cannot record on a tape that was already differentiated")
        value._tape = self
        self.nodes.append(value)

    def clear(self):
        self.nodes = []
        self.consumed = False


def _propagate(loss):
    if not isinstance(loss, Value):
        raise TapeError("backward() needs a Value")
    if loss.data.size != 1:
        raise TapeError(f"backward() needs a scalar loss, got shape {loss.shape}")
    tape = loss._tape
    if tape is None:
        raise TapeError("Loss was not recorded on a tape")
    if tape.consumed:
        raise TapeError("Tape is stale: backward() already ran on it")
    tape.consumed = True

    grads = {id(loss): np.ones_like(loss.data)}
    leaves = {}
    for node in reversed(tape.nodes):
        g = grads.get(id(node))
        if g is None:
            continue
        for parent, pg in zip(node._parents, node._backward(g)):
            if pg is None or not parent.requires_grad:
                continue
            pg = np.asarray(pg, dtype=np.float64)
            if pg.shape != parent.shape:
                raise ShapeError(
                    f"Gradient of {node.op} has shape {pg.shape}, expected {parent.shape}"
                )
            key = id(parent)
            grads[key] = grads[key] + pg if key in grads else pg
            if parent.is_leaf:
                leaves[key] = parent
    return grads, leaves


def backward(loss):
    """Accumulate d(loss)/d(leaf) into ``.grad`` of every leaf that requires it."""
    grads, leaves = _propagate(loss)
    for key, leaf in leaves.items():
        g = grads[key]
        leaf.grad = g if leaf.grad is None else leaf.grad + g


def gradient(loss, inputs):
    """Gradients of ``loss`` with respect to ``inputs``; ``.grad`` is left untouched.

    Inputs the loss does not depend on get a zero array.
    """
    grads, _ = _propagate(loss)
    return [grads.get(id(x), np.zeros_like(x.data)) for x in inputs]
