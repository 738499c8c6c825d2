"""Relative sections ``f alpha^k`` versus canonical forms ``F (2 dz ^ dw)^k``.

The correspondence is

    psi = Psi / (beta ^ pi*tau)^k * beta^k

for a reference section ``beta`` of the relative dualizing sheaf and a
nonvanishing form ``tau`` on the base.  With ``beta = alpha`` and ``tau = dt``
we have ``alpha ^ dpi = 2 dz ^ dw`` and the map is coefficient transport.
Other gauges are evaluated pointwise: with ``beta = g alpha`` and
``tau = h dt`` the denominator is ``(2 g h)^k`` and ``beta^k`` contributes
``g^k``, so ``g`` cancels and ``h`` does not.
"""
from dataclasses import dataclass

import numpy as np

from ._validation import check_points, check_weight
from .errors import DomainError
from .extension import TwoVarSeries
from .nodal import alpha, dpi, wedge

__all__ = [
    "RelativeSection",
    "CanonicalForm",
    "GaugeFunction",
    "psi_to_Psi",
    "Psi_to_psi",
    "Psi_values",
    "psi_values",
    "gauge_invariance_check",
    "tau_scaling",
    "poincare_residue",
    "residue_wedge_defect",
]


@dataclass(frozen=True, eq=False)
class RelativeSection:
    """``psi = f(z, w) (dz/z - dw/w)^k``."""

    k: int
    f: TwoVarSeries

    def __post_init__(self):
        check_weight(self.k)

    def to_json(self):
        return {"kind": "relative_section", "k": self.k, **self.f.to_json()}

    @classmethod
    def from_json(cls, doc):
        if doc.get("kind") != "relative_section":
            raise ValueError(f"expected kind 'relative_section', got {doc.get('kind')!r}")
        return cls(int(doc["k"]), TwoVarSeries.from_json(doc))


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """``Psi = F(z, w) (2 dz ^ dw)^k``."""

    k: int
    F: TwoVarSeries

    def __post_init__(self):
        check_weight(self.k)

    def dzdw_coefficient(self, z, w):
        """Coefficient on ``(dz ^ dw)^k``, i.e. ``2^k F``."""
        return 2.0**self.k * self.F(z, w)

    def to_json(self):
        return {"kind": "canonical_form", "k": self.k, **self.F.to_json()}

    @classmethod
    def from_json(cls, doc):
        if doc.get("kind") != "canonical_form":
            raise ValueError(f"expected kind 'canonical_form', got {doc.get('kind')!r}")
        return cls(int(doc["k"]), TwoVarSeries.from_json(doc))


class GaugeFunction:
    """Reference data ``beta = g alpha`` and ``tau = h dt``.

    ``g`` and ``h`` are vectorized callables.  Use :meth:`exp_series` for a
    ``g`` that is nonvanishing by construction.
    """

    def __init__(self, g=None, h=None):
        self.g = g if g is not None else (lambda z, w: np.ones(np.broadcast(z, w).shape))
        self.h = h if h is not None else (lambda t: np.ones(np.shape(t)))

    @classmethod
    def exp_series(cls, log_g, h=None):
        return cls(lambda z, w: np.exp(log_g(z, w)), h)

    @classmethod
    def constant(cls, g=1.0, h=1.0):
        return cls(lambda z, w: np.full(np.broadcast(z, w).shape, g, dtype=complex),
                   lambda t: np.full(np.shape(t), h, dtype=complex))


def psi_to_Psi(psi):
    """Default gauge: the coefficient carries over, ``2^k`` sits in the basis."""
    return CanonicalForm(psi.k, psi.f)


def Psi_to_psi(Psi):
    return RelativeSection(Psi.k, Psi.F)


def Psi_values(psi, gauge, points):
    """``(dz ^ dw)^k`` coefficient of ``Psi = psi beta^(-k) (beta ^ pi*tau)^k`` at points."""
    pts = check_points(points)
    z, w = pts[:, 0], pts[:, 1]
    g, h = _gauge_at(gauge, z, w)
    k = psi.k
    return psi.f(z, w) / g**k * (2 * g * h) ** k


def psi_values(Psi_dzdw, k, gauge, points):
    """``alpha^k`` coefficient of ``psi = Psi / (beta ^ pi*tau)^k beta^k`` at points.

    ``Psi_dzdw`` holds the ``(dz ^ dw)^k`` coefficients of ``Psi`` at the points.
    """
    pts = check_points(points)
    z, w = pts[:, 0], pts[:, 1]
    g, h = _gauge_at(gauge, z, w)
    return np.asarray(Psi_dzdw) / (2 * g * h) ** k * g**k


def _gauge_at(gauge, z, w, floor=1e-9):
    g = np.asarray(gauge.g(z, w), dtype=complex)
    h = np.asarray(gauge.h(z * w), dtype=complex)
    if np.any(np.abs(g) < floor) or np.any(np.abs(h) < floor):
        raise DomainError("gauge (nearly) vanishes at a sample point")
    return g, h


def gauge_invariance_check(psi, gauge, points):
    """Max deviation of the recovered ``psi`` between ``beta = g alpha`` and ``beta = alpha``.

    ``Psi`` is formed with ``tau = h dt`` and the default reference, then
    divided back out with both references (same ``tau``).
    """
    pts = check_points(points)
    ref = GaugeFunction(h=gauge.h)
    Psi = Psi_values(psi, ref, pts)
    return float(np.max(np.abs(psi_values(Psi, psi.k, gauge, pts) - psi_values(Psi, psi.k, ref, pts))))


def tau_scaling(psi, h, points):
    """``Psi`` for fixed ``psi`` under ``tau = h dt`` and under ``tau = dt``.

    The first is ``h^k`` times the second.
    """
    pts = check_points(points)
    return Psi_values(psi, GaugeFunction.constant(h=h), pts), Psi_values(psi, GaugeFunction(), pts)


def poincare_residue(Phi):
    """Solve ``Phi = dpi ^ phi`` for ``phi = c alpha`` (k = 1).

    ``dpi ^ alpha = -2 dz ^ dw``, so ``F (2 dz ^ dw) = dpi ^ (c alpha)`` gives
    ``c = -F``.  ``phi`` is unique modulo multiples of ``dpi``.
    """
    if Phi.k != 1:
        raise DomainError("the Poincare residue is defined here for k = 1")
    return RelativeSection(1, -Phi.F)


def residue_wedge_defect(Phi, phi, points, extra=None):
    """Max of ``|dpi ^ phi - Phi|`` (``dz ^ dw`` coefficients) over points.

    ``extra(z, w)`` optionally adds ``u(z, w) dpi`` to ``phi`` to exercise the
    ambiguity.
    """
    pts = check_points(points)
    worst = 0.0
    for z, w in pts:
        form = alpha(z, w).scale(phi.f(z, w))
        if extra is not None:
            form = form + dpi(z, w).scale(extra(z, w))
        lhs = wedge(dpi(z, w), form)
        rhs = Phi.dzdw_coefficient(z, w)
        worst = max(worst, abs(lhs - rhs))
    return worst

