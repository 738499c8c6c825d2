"""Complete hyperbolic metric on the fibers of ``zw = t`` (``c = c' = 1``).

The density with respect to ``|dzeta|`` is

    lambda(zeta) = Theta csc(Theta) / (|zeta| |log|zeta||),
    Theta = pi log|zeta| / log|t|,

and ``Theta`` runs from 0 at the outer boundary to pi at the inner one.  The
squared correction ``(Theta csc Theta)^2`` has the even Taylor series
``1 + Theta^2/3 + Theta^4/15 + ...`` computed here exactly with fractions.

For other disc radii rescale ``zeta -> zeta / c`` before evaluating.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, SingularDensityError

__all__ = [
    "CollarSpec",
    "theta",
    "theta_csc_theta",
    "hyperbolic_density",
    "factor_series_coefficients",
    "factor_series",
    "collar_ratio",
    "collar_ratio_bounds",
    "collar_band_equivalence",
    "CollarReport",
]


@dataclass(frozen=True)
class CollarSpec:
    """The collar ``|t|/rho <= |zeta| <= rho``."""

    t: complex
    rho: float

    def __post_init__(self):
        if self.t == 0:
            raise DomainError("collars are defined for t != 0")
        if not 0 < self.rho < 1:
            raise DomainError(f"rho must lie in (0, 1), got {self.rho}")
        if abs(self.t) / self.rho > self.rho * (1 + 1e-12):
            raise DomainError(f"empty collar: |t| = {abs(self.t)} > rho^2 = {self.rho**2}")

    @property
    def radii(self):
        lo = min(abs(self.t) / self.rho, self.rho)
        return lo, self.rho


def _check_t(t):
    a = np.abs(np.asarray(t, dtype=complex))
    if np.any((a <= 0) | (a >= 1)):
        raise DomainError(f"need 0 < |t| < 1, got {a}")
    return float(a) if a.ndim == 0 else a


def theta(z_mag, t):
    """``pi log|z| / log|t|``."""
    a = _check_t(t)
    z_mag = np.asarray(z_mag, dtype=float)
    if np.any((z_mag <= 0) | (z_mag >= 1)):
        raise DomainError("|z| must lie in (0, 1)")
    out = np.pi * np.log(z_mag) / np.log(a)
    return float(out) if out.ndim == 0 else out


def theta_csc_theta(th):
    """``Theta / sin(Theta)``, equal to 1 at ``Theta = 0``."""
    th = np.asarray(th, dtype=float)
    out = np.ones_like(th)
    nz = th != 0
    out[nz] = th[nz] / np.sin(th[nz])
    return float(out) if out.ndim == 0 else out


def hyperbolic_density(zeta, t):
    """Density of the fiber's complete hyperbolic metric at ``zeta``."""
    a = _check_t(t)
    r = np.abs(np.asarray(zeta, dtype=complex))
    if np.any((r <= a) | (r >= 1)):
        if np.any(r == a):
            raise SingularDensityError("density is singular on |zeta| = |t| (Theta = pi)")
        raise DomainError("zeta must lie in the open fiber annulus |t| < |zeta| < 1")
    th = np.pi * np.log(r) / np.log(a)
    out = theta_csc_theta(th) / (r * np.abs(np.log(r)))
    return float(out) if np.ndim(out) == 0 else out


@lru_cache(maxsize=None)
def factor_series_coefficients(terms):
    """Exact coefficients of ``Theta^0, Theta^2, ...`` in ``(Theta csc Theta)^2``.

    Obtained by inverting ``sin(x)/x = sum (-1)^j x^(2j) / (2j+1)!`` as a
    power series in ``x^2`` and squaring.
    """
    if terms < 0:
        raise ValueError("terms must be nonnegative")
    s = [Fraction((-1) ** j, math.factorial(2 * j + 1)) for j in range(terms)]
    inv = []
    for n in range(terms):
        acc = Fraction(1) if n == 0 else Fraction(0)
        acc -= sum((s[j] * inv[n - j] for j in range(1, n + 1)), Fraction(0))
        inv.append(acc / s[0])
    sq = [sum((inv[j] * inv[n - j] for j in range(n + 1)), Fraction(0)) for n in range(terms)]
    return tuple(sq)


def factor_series(th, terms):
    """Partial sum of ``(Theta csc Theta)^2`` with ``terms`` even-power terms."""
    if terms == 0:
        return 0.0 * np.asarray(th, dtype=float)
    coeffs = [float(c) for c in factor_series_coefficients(terms)]
    x2 = np.asarray(th, dtype=float) ** 2
    out = np.zeros_like(x2)
    for c in reversed(coeffs):
        out = out * x2 + c
    return float(out) if out.ndim == 0 else out


def collar_ratio(r, t):
    """``(1/|zeta|) / lambda(zeta) = |log|zeta|| / (Theta csc Theta)`` at radius ``r``."""
    a = _check_t(t)
    r = np.asarray(r, dtype=float)
    th = np.pi * np.log(r) / np.log(a)
    return np.abs(np.log(r)) / theta_csc_theta(th)


def _collar_radii(collar, grid):
    lo, hi = collar.radii
    if lo >= hi:
        return np.array([hi])
    return np.geomspace(lo, hi, grid)


def collar_ratio_bounds(t, rho, grid=2001):
    """Min and max of :func:`collar_ratio` over the collar.

    Both metrics are rotation invariant, so a radial grid suffices.  The max
    is attained at the core circle ``|zeta| = |t|^(1/2)`` and grows like
    ``|log|t|| / pi``; the min sits at the collar boundary and tends to
    ``|log rho|``.
    """
    collar = CollarSpec(t, rho)
    vals = collar_ratio(_collar_radii(collar, grid), t)
    return float(np.min(vals)), float(np.max(vals))


@dataclass
class CollarReport:
    collar_sup: float
    f_sup: float
    lo: float
    hi: float
    k: int

    @property
    def finite(self):
        return bool(np.isfinite(self.collar_sup) and np.isfinite(self.f_sup))

    @property
    def bracket_holds(self):
        """``lo^k sup|f| <= collar sup <= hi^k sup|f|`` up to roundoff."""
        slack = 1e-12 * max(1.0, self.hi**self.k * self.f_sup)
        return (self.lo**self.k * self.f_sup - slack <= self.collar_sup
                <= self.hi**self.k * self.f_sup + slack)


def collar_band_equivalence(d, collar, grid=257, N=256, c=1.0):
    """Sup of ``|f| * ratio^k`` over the collar, with the comparison constants.

    ``sup|f|`` over the collar is within ``[lo^-k, hi^-k]`` times the collar
    sup, so one is finite exactly when the other is.
    """
    lo_r, hi_r = collar.radii
    fib_lo, fib_hi = d.annulus.as_tuple()
    if lo_r * c < fib_lo or hi_r * c > fib_hi:
        raise DomainError(f"collar [{lo_r}, {hi_r}] is not inside the annulus {(fib_lo, fib_hi)}")
    radii = _collar_radii(collar, grid)
    ang = np.exp(2j * np.pi * np.arange(N) / N)
    fvals = np.abs(d.f(c * radii[:, None] * ang[None, :]))
    ratio = collar_ratio(radii, collar.t)[:, None] ** d.k
    lo, hi = collar_ratio_bounds(collar.t, collar.rho, grid)
    return CollarReport(float(np.max(fvals * ratio)), float(np.max(fvals)), lo, hi, d.k)
