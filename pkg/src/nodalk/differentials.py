"""k-differentials ``f(zeta) (dzeta/zeta)^k`` on fiber annuli and on the nodal fiber.

``|eta (dzeta/zeta)^(-k)|`` is just ``|f|``, so all the sup bounds below are
sup bounds on the coefficient function.  Bands are sampled on circle grids;
the maximum principle means only band circles need to be sampled for an
interior bound.
"""
import json
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_positive, check_weight
from .errors import DomainError
from .laurent import LaurentSeries, evaluate
from .nodal import AnnulusSpec

__all__ = [
    "AnnulusKDifferential",
    "BandSpec",
    "NodalKDifferential",
    "band_radii",
    "band_sup",
    "is_band_bounded",
    "interior_sup_check",
    "nodal_residue_check",
]

DEFAULT_CIRCLES = 8
DEFAULT_N = 512


@dataclass(frozen=True, eq=False)
class AnnulusKDifferential:
    k: int
    f: LaurentSeries
    annulus: AnnulusSpec

    def __post_init__(self):
        check_weight(self.k)

    def to_json(self):
        return {"k": self.k, "f": self.f.to_json(), "annulus": list(self.annulus.as_tuple())}

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            r_in, r_out = doc["annulus"]
            return cls(int(doc["k"]), LaurentSeries.from_json(doc["f"]),
                       AnnulusSpec(float(r_in), float(r_out)))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed differential document: {exc}") from exc


@dataclass(frozen=True)
class BandSpec:
    """Inner and outer bands of the fiber annulus over ``t``.

    Outer band: ``rho1 c <= |zeta| <= rho2 c``.
    Inner band: ``|t|/(c' rho2) <= |zeta| <= |t|/(c' rho1)``.
    """

    rho1: float
    rho2: float
    M: float
    t: complex
    c: float = 1.0
    c_prime: float = 1.0

    def __post_init__(self):
        if not (0 < self.rho1 < self.rho2 < 1):
            raise DomainError(f"need 0 < rho1 < rho2 < 1, got {self.rho1}, {self.rho2}")
        check_positive(self.M, "M")
        check_positive(self.c, "c")
        check_positive(self.c_prime, "c_prime")
        if self.t == 0:
            raise DomainError("bands are defined on fibers with t != 0")
        if self.inner[1] >= self.outer[0]:
            raise DomainError(
                f"inner band {self.inner} overlaps outer band {self.outer}; |t| too large"
            )

    @classmethod
    def for_annulus(cls, annulus, rho1=0.5, rho2=0.9, M=1.0):
        """Bands of a geometric annulus, viewed as the fiber with ``c = r_outer``, ``c' = 1``."""
        return cls(rho1, rho2, M, annulus.r_inner, c=annulus.r_outer, c_prime=1.0)

    @property
    def outer(self):
        return (self.rho1 * self.c, self.rho2 * self.c)

    @property
    def inner(self):
        return (abs(self.t) / (self.c_prime * self.rho2), abs(self.t) / (self.c_prime * self.rho1))

    @property
    def fiber(self):
        return AnnulusSpec(abs(self.t) / self.c_prime, self.c)


def band_radii(lo, hi, n_circles=DEFAULT_CIRCLES):
    """Geometrically spaced radii spanning ``[lo, hi]``, endpoints included."""
    return np.geomspace(lo, hi, n_circles)


def _circle_grid(radii, N, phase=0.0):
    theta = 2 * np.pi * np.arange(N) / N + phase
    return (np.asarray(radii)[:, None] * np.exp(1j * theta)[None, :]).ravel()


def _check_inside(d, b):
    fib = d.annulus
    lo, hi = b.inner[0], b.outer[1]
    if not fib.contains(lo, hi):
        raise DomainError(f"bands [{lo}, {hi}] are not inside the annulus {fib.as_tuple()}")


def band_sup(d, b, which="outer", N=DEFAULT_N, n_circles=DEFAULT_CIRCLES, coordinate="zeta"):
    """Sampled sup of ``|f|`` over one band.

    With ``coordinate="w"`` the inner band is sampled through ``zeta = t/w``
    on ``c' rho1 <= |w| <= c' rho2``.  The radii and angles are chosen so the
    two grids are the same point set, which makes the two values agree to
    roundoff.
    """
    _check_inside(d, b)
    if which == "outer":
        pts = _circle_grid(band_radii(*b.outer, n_circles), N)
    elif which == "inner":
        if coordinate == "w":
            w_lo, w_hi = b.c_prime * b.rho1, b.c_prime * b.rho2
            w = _circle_grid(band_radii(w_lo, w_hi, n_circles), N, phase=np.angle(b.t))
            pts = b.t / w
        else:
            pts = _circle_grid(band_radii(*b.inner, n_circles), N)
    else:
        raise ValueError(f"which must be 'inner' or 'outer', got {which!r}")
    return float(np.max(np.abs(evaluate(d.f, pts))))


def is_band_bounded(d, b, N=DEFAULT_N, n_circles=DEFAULT_CIRCLES):
    return all(band_sup(d, b, which, N, n_circles) <= b.M for which in ("inner", "outer"))


def interior_sup_check(d, b, N=DEFAULT_N, n_circles=32):
    """Sampled sup of ``|f|`` strictly between the bands, and the larger band sup.

    The maximum principle says the first never exceeds the second.
    """
    band_max = max(band_sup(d, b, "inner", N), band_sup(d, b, "outer", N))
    lo, hi = b.inner[1], b.outer[0]
    radii = np.geomspace(lo, hi, n_circles + 2)[1:-1]
    interior = float(np.max(np.abs(evaluate(d.f, _circle_grid(radii, N)))))
    return interior, band_max


@dataclass(frozen=True, eq=False)
class NodalKDifferential:
    """A regular k-differential on the nodal fiber.

    ``eta_z = fz(z) (dz/z)^k`` on the z-branch, ``eta_w = gw(w) (dw/w)^k`` on
    the w-branch.  Both series must have nonnegative exponents.
    """

    k: int
    fz: LaurentSeries
    gw: LaurentSeries = field(default_factory=LaurentSeries.zero)

    def __post_init__(self):
        check_weight(self.k)
        for name in ("fz", "gw"):
            s = getattr(self, name)
            if len(s.coeffs) and s.n_min < 0 and not s.restrict(hi=-1).is_zero():
                raise DomainError(f"{name} must be a power series (no negative exponents)")

    @property
    def residues(self):
        """``(res eta_z, res eta_w)``."""
        return self.fz.coeff(0), self.gw.coeff(0)


def nodal_residue_check(n, tol=1e-12):
    """Residue matching ``res eta_z = (-1)^k res eta_w``."""
    rz, rw = n.residues
    return bool(abs(rz - (-1) ** n.k * rw) <= tol)
