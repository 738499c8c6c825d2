"""Holomorphic extension of band-bounded families across the node.

Given samples of the fiber functions ``F_t(zeta) = f(zeta, t/zeta)`` on a
torus ``|zeta| = r`` x ``|t| = rho``, recover the two-variable coefficients of
``f(z, w) = sum a[m, n] z^m w^n``.  Because

    f(zeta, t/zeta) = sum_{m,n} a[m, n] zeta^(m-n) t^n,

each pair ``(p, n) = (m - n, n)`` is a distinct Fourier mode on the torus and
a 2-d DFT reads off ``a[p + n, n] * r^p * rho^n`` directly.

Families whose inner-band bound grows like ``|t|^(-m0)`` are handled by
multiplying the samples by ``zeta^m0`` first; the result then represents
``f(z, w) z^(-m0)``.
"""
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import (
    as_complex_array,
    check_nonnegative_int,
    check_points,
    check_positive,
    check_weight,
)
from .differentials import NodalKDifferential
from .errors import AliasingError, ConditioningWarning, DomainError, PolarBranchError
from .laurent import LaurentSeries
from .nodal import AnnulusSpec

__all__ = [
    "TwoVarSeries",
    "FamilySamples",
    "sample_family",
    "extend",
    "extend_with_pole",
    "extend_lstsq",
    "nodal_restriction",
    "nodal_differential",
    "verify_normal_families",
    "NormalFamiliesReport",
    "FamilyExtension",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class TwoVarSeries:
    """Polynomial ``f(z, w) = sum a[m, n] z^m w^n``, optionally times ``z^(-pole_order)``."""

    coeffs: np.ndarray
    pole_order: int = 0

    def __post_init__(self):
        arr = as_complex_array(self.coeffs, "coeffs", ndim=2).copy()
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            arr = np.zeros((1, 1), dtype=complex)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "pole_order", check_nonnegative_int(self.pole_order, "pole_order"))

    @classmethod
    def from_dict(cls, mapping, pole_order=0):
        """Build from ``{(m, n): a_mn}``."""
        if not mapping:
            return cls(np.zeros((1, 1)), pole_order)
        M = max(m for m, _ in mapping)
        N = max(n for _, n in mapping)
        arr = np.zeros((M + 1, N + 1), dtype=complex)
        for (m, n), c in mapping.items():
            arr[m, n] = c
        return cls(arr, pole_order)

    @property
    def m_deg(self):
        return self.coeffs.shape[0] - 1

    @property
    def n_deg(self):
        return self.coeffs.shape[1] - 1

    def padded(self, m_deg, n_deg):
        arr = np.zeros((max(m_deg, self.m_deg) + 1, max(n_deg, self.n_deg) + 1), dtype=complex)
        arr[:self.m_deg + 1, :self.n_deg + 1] = self.coeffs
        return arr

    def max_abs_diff(self, other):
        m, n = max(self.m_deg, other.m_deg), max(self.n_deg, other.n_deg)
        return float(np.max(np.abs(self.padded(m, n) - other.padded(m, n))))

    def __neg__(self):
        return TwoVarSeries(-self.coeffs, self.pole_order)

    def __mul__(self, other):
        if isinstance(other, TwoVarSeries):
            out = np.zeros((self.m_deg + other.m_deg + 1, self.n_deg + other.n_deg + 1), dtype=complex)
            for m in range(self.m_deg + 1):
                for n in range(self.n_deg + 1):
                    if self.coeffs[m, n] != 0:
                        out[m:m + other.m_deg + 1, n:n + other.n_deg + 1] += self.coeffs[m, n] * other.coeffs
            return TwoVarSeries(out, self.pole_order + other.pole_order)
        return TwoVarSeries(self.coeffs * complex(other), self.pole_order)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = TwoVarSeries(np.ones((1, 1)))
        for _ in range(int(e)):
            out = out * self
        return out

    def numerator(self, z, w):
        """``sum a[m, n] z^m w^n`` (without the ``z^(-pole_order)`` factor)."""
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        # Horner in w inside Horner in z
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for m in range(self.m_deg, -1, -1):
            row = np.zeros_like(out)
            for n in range(self.n_deg, -1, -1):
                row = row * w + self.coeffs[m, n]
            out = out * z + row
        return out[()] if out.ndim == 0 else out

    def __call__(self, z, w):
        val = self.numerator(z, w)
        if self.pole_order:
            val = val * np.asarray(z, dtype=complex) ** (-self.pole_order)
        return val

    def fiber(self, zeta, t):
        """Fiber coefficient function ``F_t(zeta) = f(zeta, t/zeta)``."""
        zeta = np.asarray(zeta, dtype=complex)
        return self(zeta, t / zeta)

    def fiber_series(self, t):
        """``F_t`` as a Laurent series in ``zeta``."""
        terms = {}
        for m in range(self.m_deg + 1):
            for n in range(self.n_deg + 1):
                c = self.coeffs[m, n]
                if c != 0:
                    e = m - n - self.pole_order
                    terms[e] = terms.get(e, 0) + c * t**n
        return LaurentSeries.from_dict(terms)

    def axis_z(self):
        """``f(z, 0)`` numerator as a power series in ``z``."""
        return LaurentSeries(0, self.coeffs[:, 0])

    def axis_w(self):
        """``f(0, w)`` numerator as a power series in ``w``."""
        return LaurentSeries(0, self.coeffs[0, :])

    def to_json(self):
        return {
            "m_deg": self.m_deg,
            "n_deg": self.n_deg,
            "pole_order": self.pole_order,
            "coeffs": [[[float(c.real), float(c.imag)] for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            arr = np.array([[complex(re, im) for re, im in row] for row in doc["coeffs"]])
            series = cls(arr, int(doc.get("pole_order", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed two-variable series document: {exc}") from exc
        if "m_deg" in doc and (series.m_deg, series.n_deg) != (doc["m_deg"], doc["n_deg"]):
            raise ValueError("coefficient array shape does not match m_deg/n_deg")
        return series


@dataclass(frozen=True, eq=False)
class FamilySamples:
    """Fiber samples on the torus ``|zeta| = r_zeta`` x ``|t| = rho_t``.

    ``values[l, j] = F_{t_l}(zeta_j)`` with ``t_l = rho_t exp(2 pi i l / t_count)``
    and ``zeta_j = r_zeta exp(2 pi i j / zeta_count)``.
    """

    k: int
    r_zeta: float
    rho_t: float
    values: np.ndarray
    c: float = 1.0
    c_prime: float = 1.0

    def __post_init__(self):
        check_weight(self.k)
        for name in ("r_zeta", "rho_t", "c", "c_prime"):
            check_positive(getattr(self, name), name)
        arr = as_complex_array(self.values, "values", ndim=2).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if not (self.r_zeta < self.c and self.rho_t / self.r_zeta < self.c_prime):
            raise DomainError(
                f"sample circle |zeta| = {self.r_zeta} is not inside every fiber annulus "
                f"for |t| = {self.rho_t} (c = {self.c}, c' = {self.c_prime})"
            )

    @property
    def t_count(self):
        return self.values.shape[0]

    @property
    def zeta_count(self):
        return self.values.shape[1]

    @property
    def t_values(self):
        return self.rho_t * np.exp(2j * np.pi * np.arange(self.t_count) / self.t_count)

    @property
    def zeta_values(self):
        return self.r_zeta * np.exp(2j * np.pi * np.arange(self.zeta_count) / self.zeta_count)

    def to_json(self):
        return {
            "k": self.k,
            "r_zeta": self.r_zeta,
            "rho_t": self.rho_t,
            "c": self.c,
            "c_prime": self.c_prime,
            "t_count": self.t_count,
            "zeta_count": self.zeta_count,
            "values": [[[float(v.real), float(v.imag)] for v in row] for row in self.values],
        }

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            vals = np.array([[complex(re, im) for re, im in row] for row in doc["values"]])
            fs = cls(int(doc["k"]), float(doc["r_zeta"]), float(doc["rho_t"]), vals,
                     float(doc.get("c", 1.0)), float(doc.get("c_prime", 1.0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed family samples document: {exc}") from exc
        if fs.values.shape != (int(doc["t_count"]), int(doc["zeta_count"])):
            raise ValueError("values shape does not match t_count/zeta_count")
        return fs


def sample_family(func, k=1, r_zeta=0.5, rho_t=0.1, t_count=16, zeta_count=64, c=1.0, c_prime=1.0):
    """Sample ``func(zeta, t)`` on the torus grid.

    ``func`` may also be a :class:`TwoVarSeries`, sampled through its fiber
    function.
    """
    t = rho_t * np.exp(2j * np.pi * np.arange(t_count) / t_count)
    zeta = r_zeta * np.exp(2j * np.pi * np.arange(zeta_count) / zeta_count)
    if isinstance(func, TwoVarSeries):
        series = func
        func = lambda zz, tt: series.fiber(zz, tt)  # noqa: E731
    values = np.asarray(func(zeta[None, :], t[:, None]), dtype=complex)
    values = np.broadcast_to(values, (t_count, zeta_count))
    return FamilySamples(k, r_zeta, rho_t, values, c, c_prime)


def _check_torus_resolution(fs, m_deg, n_deg):
    if fs.t_count < n_deg + 1:
        raise AliasingError(f"t_count = {fs.t_count} cannot resolve t-degree {n_deg}")
    need = 2 * (m_deg + n_deg) + 1
    if fs.zeta_count < need:
        raise AliasingError(
            f"zeta_count = {fs.zeta_count} cannot resolve bidegree ({m_deg}, {n_deg}); need {need}"
        )


def _torus_modes(values, m_deg, n_deg):
    """DFT modes ``c[p, n]`` for ``p = m - n``; indexed ``[m, n]`` on return."""
    Nt, Nz = values.shape
    # values[l, j]: mode (p, n) is the coefficient of e^{i p theta_j} e^{i n phi_l}
    modes = np.fft.fft2(values) / (Nt * Nz)
    m = np.arange(m_deg + 1)[:, None]
    n = np.arange(n_deg + 1)[None, :]
    p = m - n
    return modes[n % Nt, p % Nz], p, n


def extend(fs, m_deg, n_deg, warn_digits=6):
    """Recover ``f(z, w)`` of bidegree ``<= (m_deg, n_deg)`` from torus samples.

    A :class:`ConditioningWarning` is issued when the worst coefficient has
    fewer than ``warn_digits`` significant digits left, estimated from the
    sample magnitude and the scaling ``r_zeta^p rho_t^n``.
    """
    m_deg = check_nonnegative_int(m_deg, "m_deg")
    n_deg = check_nonnegative_int(n_deg, "n_deg")
    _check_torus_resolution(fs, m_deg, n_deg)
    if not np.any(fs.values):
        return TwoVarSeries(np.zeros((m_deg + 1, n_deg + 1)))
    raw, p, n = _torus_modes(fs.values, m_deg, n_deg)
    scale = fs.r_zeta ** p.astype(float) * fs.rho_t ** n.astype(float)
    if np.any(scale == 0):
        raise AliasingError("r_zeta^p rho_t^n underflows; use larger sampling radii")
    coeffs = raw / scale
    err = _coefficient_error_bound(fs, scale)
    worst = float(np.max(err))
    if worst > 10.0 ** (-warn_digits) * max(1.0, float(np.max(np.abs(coeffs)))):
        warnings.warn(
            f"extension is ill-conditioned: coefficient error bound {worst:.2e}",
            ConditioningWarning,
            stacklevel=2,
        )
    return TwoVarSeries(coeffs)


def _coefficient_error_bound(fs, scale):
    # roundoff in the samples, divided by the mode scaling
    sample_err = _EPS * float(np.max(np.abs(fs.values))) * math.log2(fs.values.size + 1)
    return sample_err / scale


def extend_with_pole(fs, m0, m_deg, n_deg):
    """Extend a family with inner-band growth ``|t|^(-m0)``.

    The samples are multiplied by ``zeta^m0`` before extending; the result
    carries ``pole_order = m0``.
    """
    m0 = check_nonnegative_int(m0, "m0")
    if m0 == 0:
        return extend(fs, m_deg, n_deg)
    shifted = FamilySamples(fs.k, fs.r_zeta, fs.rho_t, fs.values * fs.zeta_values[None, :] ** m0,
                            fs.c, fs.c_prime)
    base = extend(shifted, m_deg, n_deg)
    return TwoVarSeries(base.coeffs, pole_order=m0)


def extend_lstsq(zeta, t, values, m_deg, n_deg, pole_order=0):
    """Least-squares extension from scattered ``(zeta, t)`` samples.

    Fallback for t-samples that are not on a uniform circle.  Columns are the
    monomials ``zeta^(m - n - pole_order) t^n``.
    """
    zeta = as_complex_array(zeta, "zeta").ravel()
    t = as_complex_array(t, "t").ravel()
    values = as_complex_array(values, "values").ravel()
    if not (zeta.shape == t.shape == values.shape):
        raise ValueError("zeta, t and values must have the same length")
    idx = [(m, n) for m in range(m_deg + 1) for n in range(n_deg + 1)]
    if len(values) < len(idx):
        raise AliasingError(f"{len(values)} samples for {len(idx)} unknowns")
    A = np.stack([zeta ** (m - n - pole_order) * t**n for m, n in idx], axis=1)
    # column scaling keeps the normal equations from being dominated by big monomials
    norms = np.linalg.norm(A, axis=0)
    norms[norms == 0] = 1.0
    sol, *_ = np.linalg.lstsq(A / norms, values, rcond=None)
    sol = sol / norms
    arr = np.zeros((m_deg + 1, n_deg + 1), dtype=complex)
    for (m, n), c in zip(idx, sol):
        arr[m, n] = c
    return TwoVarSeries(arr, pole_order)


def nodal_restriction(s, branch, k):
    """Coefficient series of the restriction to one branch of the nodal fiber.

    ``z``-branch: ``f(z, 0)`` with the form ``(dz/z)^k``.
    ``w``-branch: ``(-1)^k f(0, w)`` with the form ``(dw/w)^k``, since
    ``dz/z - dw/w`` restricts to ``-dw/w`` there.  For a polar section the
    w-branch series is the restriction of the holomorphic numerator.
    """
    k = check_weight(k)
    if branch == "z":
        if s.pole_order > 0:
            raise PolarBranchError(
                f"section has a pole of order {s.pole_order} along z = 0; "
                "its z-branch restriction is not a regular k-differential"
            )
        return s.axis_z()
    if branch == "w":
        return s.axis_w() * (-1) ** k
    raise ValueError(f"branch must be 'z' or 'w', got {branch!r}")


def nodal_differential(s, k):
    """Assemble both branch restrictions into a :class:`NodalKDifferential`."""
    return NodalKDifferential(k, nodal_restriction(s, "z", k), nodal_restriction(s, "w", k))


@dataclass
class NormalFamiliesReport:
    t_values: np.ndarray
    z_errors: np.ndarray
    w_errors: np.ndarray
    order: float
    monotone: bool

    @property
    def passed(self):
        return self.monotone


def _compactum_grid(a, n_circles, N):
    radii = np.linspace(a.r_inner, a.r_outer, n_circles)
    return (radii[:, None] * np.exp(2j * np.pi * np.arange(N) / N)[None, :]).ravel()


def verify_normal_families(s, t_sequence, compacta, n_circles=16, N=256):
    """Sup distance between fiber functions and their nodal limits on compacta.

    For each ``t``: the z-side error is ``sup |f(zeta, t/zeta) - f(zeta, 0)|``
    and the w-side error ``sup |f(t/w, w) - f(0, w)|``, each maximized over
    all compacta (annuli bounded away from the origin).  ``order`` is the
    least-squares slope of ``log(error)`` against ``log|t|`` using the larger
    of the two sides; ``monotone`` means every error is at most twice the
    previous one and the last is smaller than the first.
    """
    if s.pole_order:
        raise PolarBranchError("normal-families check needs a regular section")
    if isinstance(compacta, AnnulusSpec):
        compacta = [compacta]
    for a in compacta:
        if a.r_inner <= 0:
            raise DomainError("compacta must avoid the origin")
    t_seq = np.asarray(t_sequence, dtype=complex)
    pts = np.concatenate([_compactum_grid(a, n_circles, N) for a in compacta])
    fz = s.numerator(pts, 0)
    gw = s.numerator(0, pts)
    z_err = np.array([np.max(np.abs(s.numerator(pts, t / pts) - fz)) for t in t_seq])
    w_err = np.array([np.max(np.abs(s.numerator(t / pts, pts) - gw)) for t in t_seq])
    err = np.maximum(z_err, w_err)
    if np.all(err > 0) and len(t_seq) > 1:
        order = float(np.polyfit(np.log(np.abs(t_seq)), np.log(err), 1)[0])
    else:
        order = math.inf
    monotone = bool(np.all(err[1:] <= 2 * err[:-1] + 1e-300) and (err[-1] <= err[0]))
    return NormalFamiliesReport(np.abs(t_seq), z_err, w_err, order, monotone)


class FamilyExtension(BaseEstimator):
    """Estimator form of :func:`extend` / :func:`extend_with_pole`.

    ``fit`` takes :class:`FamilySamples`; ``predict`` takes an ``(n, 2)``
    array of ``(z, w)`` points and evaluates the extended section's
    coefficient function there, including at the node's branches.

    Attributes
    ----------
    coef_ : TwoVarSeries
    reconstruction_error_ : float
        Max deviation between the fitted fiber functions and the input samples.
    nodal_ : NodalKDifferential or None
        Branch restrictions (None for polar sections).
    """

    def __init__(self, m_deg=6, n_deg=6, pole_order=0):
        self.m_deg = m_deg
        self.n_deg = n_deg
        self.pole_order = pole_order

    def fit(self, X, y=None):
        if not isinstance(X, FamilySamples):
            raise TypeError("FamilyExtension.fit expects FamilySamples")
        self.coef_ = extend_with_pole(X, self.pole_order, self.m_deg, self.n_deg)
        self.k_ = X.k
        fitted = self.coef_.fiber(X.zeta_values[None, :], X.t_values[:, None])
        self.reconstruction_error_ = float(np.max(np.abs(fitted - X.values)))
        self.nodal_ = None if self.coef_.pole_order else nodal_differential(self.coef_, X.k)
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        pts = check_points(X)
        return self.coef_(pts[:, 0], pts[:, 1])

    def transform(self, X):
        """Fiber functions of the fitted section at ``(zeta, t)`` pairs."""
        check_is_fitted(self, "coef_")
        pts = check_points(X)
        return self.coef_.fiber(pts[:, 0], pts[:, 1])
