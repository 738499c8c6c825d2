"""Geometry of the plumbing family ``zw = t``.

Forms and vectors here are pointwise: a cotangent element is ``a dz + b dw``
at a base point, a tangent element is ``p d/dz + q d/dw``.  Field identities
such as ``alpha(v) = 2`` are checked by evaluating on point clouds.

The same classes serve the hyperbola coordinates ``(x, y)`` with
``z = x + y``, ``w = x - y``; the ``coords`` tag keeps the two from being
mixed by accident.
"""
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_positive
from .errors import DomainError, EmptyFiberError, MismatchedBasePointError

__all__ = [
    "NodalFamilySpec",
    "AnnulusSpec",
    "CotangentElement",
    "TangentElement",
    "fiber_annulus",
    "embed",
    "project",
    "pair",
    "wedge",
    "annulus_module",
    "change_coords_xy",
    "alpha",
    "dpi",
    "vertical_field",
    "zeta_field",
    "alpha_xy",
    "dpi_xy",
    "vertical_field_xy",
    "pullback_alpha",
]


@dataclass(frozen=True)
class NodalFamilySpec:
    """Polydisc ``|z| < c, |w| < c_prime`` over the base ``|t| < c * c_prime``."""

    c: float = 1.0
    c_prime: float = 1.0

    def __post_init__(self):
        check_positive(self.c, "c")
        check_positive(self.c_prime, "c_prime")

    @property
    def base_radius(self):
        return self.c * self.c_prime


@dataclass(frozen=True)
class AnnulusSpec:
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not (self.r_inner >= 0 and self.r_outer > 0 and self.r_inner < self.r_outer):
            raise DomainError(f"invalid annulus ({self.r_inner}, {self.r_outer})")

    def contains(self, r_lo, r_hi):
        """True when the closed ring ``r_lo <= |z| <= r_hi`` lies inside."""
        return self.r_inner <= r_lo and r_hi <= self.r_outer

    def as_tuple(self):
        return (self.r_inner, self.r_outer)


@dataclass(frozen=True)
class CotangentElement:
    a: complex
    b: complex
    base: tuple
    coords: str = "zw"

    def __add__(self, other):
        _same_point(self, other)
        return CotangentElement(self.a + other.a, self.b + other.b, self.base, self.coords)

    def scale(self, f):
        return CotangentElement(f * self.a, f * self.b, self.base, self.coords)


@dataclass(frozen=True)
class TangentElement:
    p: complex
    q: complex
    base: tuple
    coords: str = "zw"

    def scale(self, f):
        return TangentElement(f * self.p, f * self.q, self.base, self.coords)


def _same_point(x, y, tol=0.0):
    if x.coords != y.coords:
        raise MismatchedBasePointError(f"coordinate systems differ: {x.coords} vs {y.coords}")
    if any(abs(complex(u) - complex(v)) > tol for u, v in zip(x.base, y.base)):
        raise MismatchedBasePointError(f"base points differ: {x.base} vs {y.base}")


def fiber_annulus(spec, t):
    """The ``z``-annulus of the fiber over ``t``; ``t = 0`` gives the punctured z-disc."""
    if abs(t) >= spec.base_radius:
        raise EmptyFiberError(f"|t| = {abs(t)} is outside the base disc of radius {spec.base_radius}")
    return AnnulusSpec(abs(t) / spec.c_prime, spec.c)


def embed(zeta, t):
    """Map the annulus coordinate ``zeta`` into the fiber over ``t``."""
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(zeta == 0):
        raise DomainError("zeta = 0 is not on any fiber annulus")
    z, w = zeta, t / zeta
    if z.ndim == 0:
        return complex(z), complex(w)
    return z, w


def project(z, w):
    return z * w


def pair(omega, X):
    """Evaluate the covector on the vector: ``a p + b q``."""
    _same_point(omega, X)
    return omega.a * X.p + omega.b * X.q


def wedge(omega1, omega2):
    """Coefficient of ``dz ^ dw`` (or ``dx ^ dy``) in ``omega1 ^ omega2``."""
    _same_point(omega1, omega2)
    return omega1.a * omega2.b - omega1.b * omega2.a


def annulus_module(a):
    """``log(r_outer / r_inner) / 2 pi``; infinite for a punctured disc."""
    if a.r_inner == 0:
        return math.inf
    return math.log(a.r_outer / a.r_inner) / (2 * math.pi)


def alpha(z, w):
    """The relative dualizing form ``dz/z - dw/w``."""
    if z == 0 or w == 0:
        raise DomainError("alpha has poles on the coordinate axes")
    return CotangentElement(1 / z, -1 / w, (z, w))


def dpi(z, w):
    """Differential of the projection: ``w dz + z dw``."""
    return CotangentElement(w, z, (z, w))


def vertical_field(z, w):
    """``z d/dz - w d/dw``, tangent to the fibers."""
    return TangentElement(z, -w, (z, w))


def zeta_field(zeta, t):
    """Pushforward of ``zeta d/dzeta`` under ``zeta -> (zeta, t/zeta)``."""
    z, w = embed(zeta, t)
    # d/dzeta of (zeta, t/zeta) is (1, -t/zeta^2)
    return TangentElement(zeta * 1.0, zeta * (-t / zeta**2), (z, w))


def pullback_alpha(zeta, t):
    """Coefficient of ``dzeta/zeta`` in the pullback of ``alpha``."""
    z, w = embed(zeta, t)
    return pair(alpha(z, w), zeta_field(zeta, t))


def alpha_xy(x, y):
    """``dx/y + dy/x`` on the hyperbola family ``x^2 - y^2 = t``."""
    if x == 0 or y == 0:
        raise DomainError("dx/y + dy/x has poles on the coordinate axes")
    return CotangentElement(1 / y, 1 / x, (x, y), "xy")


def dpi_xy(x, y):
    return CotangentElement(2 * x, -2 * y, (x, y), "xy")


def vertical_field_xy(x, y):
    return TangentElement(y, x, (x, y), "xy")


def change_coords_xy(obj):
    """Transport a point, tangent or cotangent element from ``(x, y)`` to ``(z, w)``.

    Points map by ``z = x + y, w = x - y``.  Vectors push forward by the
    Jacobian; covectors transform by the inverse transpose
    (``dx = (dz + dw)/2``, ``dy = (dz - dw)/2``).
    """
    if isinstance(obj, TangentElement):
        if obj.coords != "xy":
            raise DomainError("expected an element in (x, y) coordinates")
        return TangentElement(obj.p + obj.q, obj.p - obj.q, change_coords_xy(obj.base))
    if isinstance(obj, CotangentElement):
        if obj.coords != "xy":
            raise DomainError("expected an element in (x, y) coordinates")
        return CotangentElement((obj.a + obj.b) / 2, (obj.a - obj.b) / 2,
                                change_coords_xy(obj.base))
    x, y = obj
    return (x + y, x - y)
