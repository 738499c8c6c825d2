"""Input validation helpers.

sklearn's ``check_array`` rejects complex input, so complex grids are
validated here instead.
"""
import numbers

import numpy as np


def as_complex_array(values, name="values", ndim=None):
    arr = np.asarray(values)
    if arr.dtype == object:
        raise TypeError(f"{name} must be numeric, got object array")
    arr = arr.astype(complex)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_positive(value, name):
    if not isinstance(value, numbers.Real) or not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be a positive real number, got {value!r}")
    return float(value)


def check_nonnegative_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    return int(value)


def check_weight(k):
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or k < 1:
        raise ValueError(f"weight k must be a positive integer, got {k!r}")
    return int(k)


def check_points(points, name="points"):
    """Return an (n, 2) complex array of (z, w) pairs."""
    arr = as_complex_array(points, name)
    if arr.ndim == 1 and arr.shape[0] == 2:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {arr.shape}")
    return arr
