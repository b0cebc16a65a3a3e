"""Differentiable operations.

Every op checks shapes up front, computes its forward value in float64 and
registers the exact local gradient rule with the active tape.
"""

import numpy as np
import scipy.sparse as sp
from scipy.special import expit
from scipy.special import logsumexp as _logsumexp
from scipy.special import softmax as _softmax

from ecl_gsr.autodiff.tape import Value, as_value, make_value
from ecl_gsr.core.exceptions import ShapeError


def _unbroadcast(grad, shape):
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op, a, b):
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(f"{op}: cannot broadcast {a.shape} with {b.shape}") from None


# Elementwise arithmetic


def add(a, b):
    a, b = as_value(a), as_value(b)
    _broadcast_shape("add", a, b)

    def backward(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return make_value(a.data + b.data, (a, b), backward, "add")


def sub(a, b):
    a, b = as_value(a), as_value(b)
    _broadcast_shape("sub", a, b)

    def backward(g):
        return _unbroadcast(g, a.shape), -_unbroadcast(g, b.shape)

    return make_value(a.data - b.data, (a, b), backward, "sub")


def mul(a, b):
    a, b = as_value(a), as_value(b)
    _broadcast_shape("mul", a, b)

    def backward(g):
        return _unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)

    return make_value(a.data * b.data, (a, b), backward, "mul")


def div(a, b):
    a, b = as_value(a), as_value(b)
    _broadcast_shape("div", a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = a.data / b.data

    def backward(g):
        return (
            _unbroadcast(g / b.data, a.shape),
            _unbroadcast(-g * a.data / (b.data * b.data), b.shape),
        )

    return make_value(out, (a, b), backward, "div")


def scale(a, c):
    """Multiply by a Python scalar constant."""
    a = as_value(a)
    c = float(c)
    return make_value(a.data * c, (a,), lambda g: (g * c,), "scale")


def neg(a):
    a = as_value(a)
    return make_value(-a.data, (a,), lambda g: (-g,), "neg")


def square(a):
    a = as_value(a)
    return make_value(a.data * a.data, (a,), lambda g: (2.0 * a.data * g,), "square")


def power(a, p):
    a = as_value(a)
    p = float(p)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(a.data, p)

    def backward(g):
        with np.errstate(divide="ignore", invalid="ignore"):
            return (g * p * np.power(a.data, p - 1.0),)

    return make_value(out, (a,), backward, "power")


def relu(a):
    a = as_value(a)
    mask = a.data > 0
    return make_value(np.where(mask, a.data, 0.0), (a,), lambda g: (g * mask,), "relu")


def exp(a):
    a = as_value(a)
    with np.errstate(over="ignore"):
        out = np.exp(a.data)
    return make_value(out, (a,), lambda g: (g * out,), "exp")


def log(a):
    a = as_value(a)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(a.data)
    return make_value(out, (a,), lambda g: (g / a.data,), "log")


def sigmoid(a):
    a = as_value(a)
    out = expit(a.data)
    return make_value(out, (a,), lambda g: (g * out * (1.0 - out),), "sigmoid")


def clip(a, lo, hi):
    """Clamp to ``[lo, hi]``; the gradient passes only where no clamping happened."""
    a = as_value(a)
    inside = (a.data >= lo) & (a.data <= hi)
    return make_value(np.clip(a.data, lo, hi), (a,), lambda g: (g * inside,), "clip")


# Shape manipulation


def transpose(a):
    a = as_value(a)
    if a.ndim != 2:
        raise ShapeError(f"transpose needs a matrix, got shape {a.shape}")
    return make_value(a.data.T, (a,), lambda g: (g.T,), "transpose")


def reshape(a, shape):
    a = as_value(a)
    try:
        out = a.data.reshape(shape)
    except ValueError:
        raise ShapeError(f"reshape: cannot view {a.shape} as {shape}") from None
    return make_value(out, (a,), lambda g: (g.reshape(a.shape),), "reshape")


def index(a, key):
    """Basic or advanced indexing; repeated indices accumulate gradient."""
    a = as_value(a)
    try:
        out = a.data[key]
    except IndexError as e:
        raise ShapeError(f"index: {e}") from None

    def backward(g):
        grad = np.zeros_like(a.data)
        np.add.at(grad, key, g)
        return (grad,)

    return make_value(out, (a,), backward, "index")


def concat_rows(values):
    values = [as_value(v) for v in values]
    if not values:
        raise ShapeError("concat_rows needs at least one input")
    widths = {v.shape[1:] for v in values}
    if len(widths) != 1 or values[0].ndim != 2:
        raise ShapeError(f"concat_rows: incompatible shapes {[v.shape for v in values]}")
    bounds = np.cumsum([0] + [v.shape[0] for v in values])

    def backward(g):
        return tuple(g[bounds[i] : bounds[i + 1]] for i in range(len(values)))

    return make_value(
        np.concatenate([v.data for v in values], axis=0), tuple(values), backward, "concat_rows"
    )


def gather_rows(a, rows):
    a = as_value(a)
    rows = np.asarray(rows, dtype=np.int64)
    if a.ndim != 2:
        raise ShapeError(f"gather_rows needs a matrix, got shape {a.shape}")
    if rows.size and (rows.min() < -a.shape[0] or rows.max() >= a.shape[0]):
        raise ShapeError(f"gather_rows: row index out of range for {a.shape[0]} rows")

    def backward(g):
        grad = np.zeros_like(a.data)
        np.add.at(grad, rows, g)
        return (grad,)

    return make_value(a.data[rows], (a,), backward, "gather_rows")


def take(a, rows, cols):
    """Elements ``a[rows[k], cols[k]]`` as a vector."""
    a = as_value(a)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if a.ndim != 2 or rows.shape != cols.shape:
        raise ShapeError(f"take: bad index shapes {rows.shape}, {cols.shape} for {a.shape}")

    def backward(g):
        grad = np.zeros_like(a.data)
        np.add.at(grad, (rows, cols), g)
        return (grad,)

    return make_value(a.data[rows, cols], (a,), backward, "take")


def scatter_add(values, index, size):
    """``out[index[k]] += values[k]`` into a length-``size`` vector."""
    values = as_value(values)
    index = np.asarray(index, dtype=np.int64)
    if values.shape != index.shape or values.ndim != 1:
        raise ShapeError(f"scatter_add: values {values.shape} vs index {index.shape}")
    out = np.bincount(index, weights=values.data, minlength=size).astype(np.float64)
    return make_value(out, (values,), lambda g: (g[index],), "scatter_add")


# Reductions


def _expand(g, shape, axis, keepdims):
    if axis is not None and not keepdims:
        g = np.expand_dims(g, axis)
    return np.broadcast_to(g, shape).copy()


def sum_(a, axis=None, keepdims=False):
    a = as_value(a)
    out = a.data.sum(axis=axis, keepdims=keepdims)
    return make_value(out, (a,), lambda g: (_expand(g, a.shape, axis, keepdims),), "sum")


def mean(a, axis=None, keepdims=False):
    a = as_value(a)
    count = a.data.size if axis is None else np.prod([a.shape[ax] for ax in np.atleast_1d(axis)])
    if count == 0:
        raise ShapeError("mean of an empty array")
    out = a.data.mean(axis=axis, keepdims=keepdims)
    return make_value(
        out, (a,), lambda g: (_expand(g, a.shape, axis, keepdims) / count,), "mean"
    )


def logsumexp(a, axis=None, keepdims=False):
    """log(sum(exp(a))) computed with the max-shift trick."""
    a = as_value(a)
    if a.data.size == 0:
        raise ShapeError("logsumexp of an empty array")
    out = _logsumexp(a.data, axis=axis, keepdims=keepdims)
    out_keep = out if (axis is None or keepdims) else np.expand_dims(out, axis)

    def backward(g):
        weights = np.exp(a.data - out_keep)
        return (_expand(g, a.shape, axis, keepdims) * weights,)

    return make_value(out, (a,), backward, "logsumexp")


def mean_pool_rows(a):
    """Row mean as a (1, F) matrix."""
    a = as_value(a)
    if a.ndim != 2 or a.shape[0] == 0:
        raise ShapeError(f"mean_pool_rows needs at least one row, got shape {a.shape}")
    return mean(a, axis=0, keepdims=True)


# Matrix ops


def matmul(a, b):
    a, b = as_value(a), as_value(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul: cannot multiply {a.shape} by {b.shape}")

    def backward(g):
        return g @ b.data.T, a.data.T @ g

    return make_value(a.data @ b.data, (a, b), backward, "matmul")


def spmm(rows, cols, weights, x, num_rows):
    """
    Sparse-times-dense product ``S @ x`` with ``S[rows[k], cols[k]] += weights[k]``.

    Args:
        rows: (E,) output row of each stored entry
        cols: (E,) input row of each stored entry
        weights: (E,) entry values, a Value or a constant array
        x: (n, F) dense Value
        num_rows: Row count of the result

    Returns:
        Value of shape (num_rows, F)
    """
    x = as_value(x)
    weights = as_value(weights)
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    if x.ndim != 2 or weights.shape != rows.shape or rows.shape != cols.shape:
        raise ShapeError(
            f"spmm: weights {weights.shape}, rows {rows.shape}, cols {cols.shape}, x {x.shape}"
        )
    if cols.size and cols.max() >= x.shape[0]:
        raise ShapeError(f"spmm: column index out of range for {x.shape[0]} input rows")
    matrix = sp.csr_matrix((weights.data, (rows, cols)), shape=(num_rows, x.shape[0]))

    def backward(g):
        grad_w = np.einsum("kf,kf->k", g[rows], x.data[cols]) if weights.requires_grad else None
        return grad_w, matrix.T @ g

    return make_value(matrix @ x.data, (weights, x), backward, "spmm")


def softmax_rows(a):
    a = as_value(a)
    if a.ndim != 2:
        raise ShapeError(f"softmax_rows needs a matrix, got shape {a.shape}")
    out = _softmax(a.data, axis=1)

    def backward(g):
        return (out * (g - (g * out).sum(axis=1, keepdims=True)),)

    return make_value(out, (a,), backward, "softmax_rows")


def l2_normalize_rows(a):
    """Rows scaled to unit length; all-zero rows map to zero with zero gradient."""
    a = as_value(a)
    if a.ndim != 2:
        raise ShapeError(f"l2_normalize_rows needs a matrix, got shape {a.shape}")
    norms = np.linalg.norm(a.data, axis=1, keepdims=True)
    nonzero = norms > 0
    safe = np.where(nonzero, norms, 1.0)
    out = np.where(nonzero, a.data / safe, 0.0)

    def backward(g):
        radial = (g * out).sum(axis=1, keepdims=True)
        return (np.where(nonzero, (g - out * radial) / safe, 0.0),)

    return make_value(out, (a,), backward, "l2_normalize_rows")


def pairwise_sq_dist(a, b=None):
    """``out[i, j] = ||a_i - b_j||^2``; ``b`` defaults to ``a``."""
    a = as_value(a)
    b = a if b is None else as_value(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise ShapeError(f"pairwise_sq_dist: incompatible shapes {a.shape}, {b.shape}")
    diff = a.data[:, None, :] - b.data[None, :, :]
    out = np.einsum("ijf,ijf->ij", diff, diff)

    def backward(g):
        grad_a = 2.0 * np.einsum("ij,ijf->if", g, diff)
        grad_b = -2.0 * np.einsum("ij,ijf->jf", g, diff)
        return grad_a, grad_b

    return make_value(out, (a, b), backward, "pairwise_sq_dist")


def cosine_matrix(a, b=None):
    """Cosine similarity of every row pair; zero rows have cosine 0 with everything."""
    na = l2_normalize_rows(a)
    nb = na if b is None else l2_normalize_rows(b)
    return matmul(na, transpose(nb))


def row_cosine(a, b):
    """Cosine similarity of matching rows of ``a`` and ``b`` as a vector."""
    na, nb = l2_normalize_rows(a), l2_normalize_rows(b)
    return sum_(mul(na, nb), axis=1)


__all__ = [
    "Value",
    "add",
    "sub",
    "mul",
    "div",
    "scale",
    "neg",
    "square",
    "power",
    "relu",
    "exp",
    "log",
    "sigmoid",
    "clip",
    "transpose",
    "reshape",
    "index",
    "concat_rows",
    "gather_rows",
    "take",
    "scatter_add",
    "sum_",
    "mean",
    "logsumexp",
    "mean_pool_rows",
    "matmul",
    "spmm",
    "softmax_rows",
    "l2_normalize_rows",
    "pairwise_sq_dist",
    "cosine_matrix",
    "row_cosine",
]
