"""Truncated Laurent series on circles and annuli.

A :class:`LaurentSeries` is a Laurent polynomial: a dense block of complex
coefficients for the exponents ``n_min .. n_max``.  Truncation happens once,
when a function is sampled on a circle; after that every operation is exact up
to roundoff.

Coefficients are recovered from equispaced circle samples with the trapezoid
rule, which on a circle is the discrete Fourier transform::

    c_n = (1/N) sum_j f(r w^j) (r w^j)^(-n),   w = exp(2 pi i / N)

The sum is exact for Laurent polynomials whose support fits in N consecutive
exponents.  Recovering ``c_n`` from radius ``r`` amplifies the roundoff in the
samples by roughly ``max|f| / r^n``, so for large ``|n|`` choose ``r`` near the
modulus where that term dominates.
"""
import json
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_complex_array, check_positive
from .errors import AliasingError, DomainError

__all__ = [
    "LaurentSeries",
    "CircleSamples",
    "evaluate",
    "coefficients_from_samples",
    "decompose",
    "residue_f0",
    "LaurentFit",
]


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Finitely supported Laurent series ``sum_n coeffs[n - n_min] * z**n``.

    An empty coefficient block is the zero series.
    """

    n_min: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = as_complex_array(self.coeffs, "coeffs", ndim=1).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "n_min", int(self.n_min))

    @classmethod
    def zero(cls):
        return cls(0, np.zeros(0, dtype=complex))

    @classmethod
    def from_dict(cls, mapping):
        """Build from ``{exponent: coefficient}``; zero entries are dropped."""
        items = {int(n): complex(c) for n, c in mapping.items() if c != 0}
        if not items:
            return cls.zero()
        lo, hi = min(items), max(items)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for n, c in items.items():
            arr[n - lo] = c
        return cls(lo, arr)

    @classmethod
    def monomial(cls, n, c=1.0):
        return cls(n, np.array([c], dtype=complex))

    @property
    def n_max(self):
        return self.n_min + len(self.coeffs) - 1

    @property
    def exponents(self):
        return np.arange(self.n_min, self.n_max + 1)

    def is_zero(self):
        return not np.any(self.coeffs)

    def coeff(self, n):
        i = n - self.n_min
        if 0 <= i < len(self.coeffs):
            return complex(self.coeffs[i])
        return 0j

    def as_dict(self):
        return {int(n): complex(c) for n, c in zip(self.exponents, self.coeffs) if c != 0}

    def trim(self, tol=0.0):
        """Drop leading and trailing coefficients with modulus ``<= tol``."""
        keep = np.flatnonzero(np.abs(self.coeffs) > tol)
        if keep.size == 0:
            return LaurentSeries.zero()
        return LaurentSeries(self.n_min + keep[0], self.coeffs[keep[0]:keep[-1] + 1])

    def restrict(self, lo=None, hi=None):
        """Keep only exponents in ``[lo, hi]`` (either bound may be None)."""
        out = {}
        for n, c in self.as_dict().items():
            if (lo is None or n >= lo) and (hi is None or n <= hi):
                out[n] = c
        return LaurentSeries.from_dict(out)

    def __call__(self, p):
        return evaluate(self, p)

    def _padded(self, lo, hi):
        arr = np.zeros(hi - lo + 1, dtype=complex)
        if len(self.coeffs):
            arr[self.n_min - lo:self.n_max - lo + 1] = self.coeffs
        return arr

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(0, other)
        if self.is_zero() and not len(self.coeffs):
            return other
        if not len(other.coeffs):
            return self
        lo = min(self.n_min, other.n_min)
        hi = max(self.n_max, other.n_max)
        return LaurentSeries(lo, self._padded(lo, hi) + other._padded(lo, hi))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.n_min, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            if not len(self.coeffs) or not len(other.coeffs):
                return LaurentSeries.zero()
            return LaurentSeries(self.n_min + other.n_min, np.convolve(self.coeffs, other.coeffs))
        return LaurentSeries(self.n_min, self.coeffs * complex(other))

    __rmul__ = __mul__

    def shift(self, m):
        """Multiply by ``z**m``."""
        return LaurentSeries(self.n_min + m, self.coeffs)

    def allclose(self, other, atol=1e-12):
        lo = min(self.n_min, other.n_min)
        hi = max(self.n_max, other.n_max)
        if hi < lo:
            return True
        return bool(np.all(np.abs(self._padded(lo, hi) - other._padded(lo, hi)) <= atol))

    def max_abs_diff(self, other):
        lo = min(self.n_min, other.n_min)
        hi = max(self.n_max, other.n_max)
        if hi < lo:
            return 0.0
        return float(np.max(np.abs(self._padded(lo, hi) - other._padded(lo, hi))))

    def to_json(self):
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            n_min, n_max, raw = int(doc["n_min"]), int(doc["n_max"]), doc["coeffs"]
            coeffs = np.array([complex(re, im) for re, im in raw], dtype=complex)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed Laurent series document: {exc}") from exc
        if len(coeffs) != n_max - n_min + 1:
            raise ValueError(
                f"coefficient count {len(coeffs)} does not match range [{n_min}, {n_max}]"
            )
        return cls(n_min, coeffs)

    def __repr__(self):
        terms = ", ".join(f"{n}: {c:.6g}" for n, c in self.as_dict().items())
        return f"LaurentSeries({{{terms}}})"


def evaluate(s, p):
    """Evaluate ``s`` at ``p`` (scalar or array), summing in ascending exponent order."""
    arr = np.asarray(p, dtype=complex)
    if s.n_min < 0 and len(s.coeffs) and np.any(arr == 0):
        raise DomainError("series with negative exponents evaluated at 0")
    out = np.zeros_like(arr)
    for n, c in zip(s.exponents, s.coeffs):
        if c != 0:
            out = out + c * arr ** int(n)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class CircleSamples:
    """Values of a function at ``radius * exp(2 pi i j / N)``, ``j = 0..N-1``."""

    radius: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "radius", check_positive(self.radius, "radius"))
        arr = as_complex_array(self.values, "values", ndim=1).copy()
        if arr.size == 0:
            raise ValueError("need at least one sample")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def N(self):
        return len(self.values)

    @staticmethod
    def nodes(radius, N):
        return radius * np.exp(2j * np.pi * np.arange(N) / N)

    @property
    def points(self):
        return self.nodes(self.radius, self.N)

    @classmethod
    def from_function(cls, func, radius, N):
        return cls(radius, np.asarray(func(cls.nodes(radius, N)), dtype=complex))


def _check_resolution(N, n_min, n_max):
    if n_max < n_min:
        raise ValueError(f"empty exponent range [{n_min}, {n_max}]")
    if N < n_max - n_min + 1 or N <= 2 * max(abs(n_min), abs(n_max)):
        raise AliasingError(
            f"{N} samples cannot resolve exponents [{n_min}, {n_max}]; "
            f"need N >= {max(n_max - n_min + 1, 2 * max(abs(n_min), abs(n_max)) + 1)}"
        )


def coefficients_from_samples(cs, n_min, n_max):
    """Recover the Laurent coefficients for ``n_min..n_max`` from circle samples."""
    N = cs.N
    _check_resolution(N, n_min, n_max)
    modes = np.fft.fft(cs.values) / N
    ns = np.arange(n_min, n_max + 1)
    return LaurentSeries(n_min, modes[ns % N] / cs.radius ** ns.astype(float))


def decompose(s):
    """Split into (positive powers, constant term, negative powers)."""
    return s.restrict(lo=1), s.coeff(0), s.restrict(hi=-1)


def residue_f0(s):
    """Residue of ``f (dz/z)^k``: the constant coefficient of ``f``."""
    return s.coeff(0)


class LaurentFit(BaseEstimator):
    """Estimator wrapper around :func:`coefficients_from_samples`.

    Parameters
    ----------
    n_min, n_max : int
        Exponent window to recover.
    trim_tol : float
        Coefficients at or below this modulus are trimmed from the ends of the
        fitted series.  ``0`` keeps the full window.

    Attributes
    ----------
    series_ : LaurentSeries
    f0_ : complex
        Constant term, i.e. the residue of ``f (dz/z)^k``.
    """

    def __init__(self, n_min=-8, n_max=8, trim_tol=0.0):
        self.n_min = n_min
        self.n_max = n_max
        self.trim_tol = trim_tol

    def fit(self, X, y=None):
        """Fit from a :class:`CircleSamples` or a 1-d array of samples on the unit circle."""
        cs = X if isinstance(X, CircleSamples) else CircleSamples(1.0, X)
        series = coefficients_from_samples(cs, self.n_min, self.n_max)
        self.series_ = series.trim(self.trim_tol) if self.trim_tol else series
        self.f0_ = residue_f0(self.series_)
        return self

    def predict(self, X):
        check_is_fitted(self, "series_")
        return evaluate(self.series_, as_complex_array(X, "X"))

    def transform(self, X=None):
        """Return ``(plus, f0, minus)`` of the fitted series."""
        check_is_fitted(self, "series_")
        return decompose(self.series_)
