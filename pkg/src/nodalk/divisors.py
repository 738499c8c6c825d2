"""Zero counting by the argument principle.

Phase is tracked by summing ``arg(g[j+1] / g[j])`` around the circle.  When any
step exceeds pi/2 the grid is doubled (up to ``2**20`` points) so that no turn
of the curve is skipped.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ContourThroughZeroError, DegenerateBranchError, DomainError

__all__ = [
    "WindingReport",
    "winding_count",
    "fiber_zero_count",
    "nodal_branch_order",
    "constancy_check",
    "ConstancyReport",
    "BranchOrder",
]

DEFAULT_N = 4096
MAX_N = 2**20


@dataclass(frozen=True)
class WindingReport:
    radius: float
    winding: int
    raw_phase_sum: float
    N: int

    @property
    def integer_defect(self):
        """``|raw_phase_sum / 2 pi - winding|``."""
        return abs(self.raw_phase_sum / (2 * np.pi) - self.winding)


def winding_count(g, radius, N=DEFAULT_N, min_modulus=1e-9, max_N=MAX_N):
    """Winding number of ``g`` around 0 along ``|zeta| = radius``, counterclockwise.

    ``g`` is any vectorized callable.  Raises :class:`ContourThroughZeroError`
    if ``|g|`` drops below ``min_modulus`` on the sample grid.
    """
    if radius <= 0:
        raise DomainError(f"radius must be positive, got {radius}")
    while True:
        theta = 2 * np.pi * np.arange(N) / N
        vals = np.asarray(g(radius * np.exp(1j * theta)), dtype=complex)
        vals = np.broadcast_to(vals, theta.shape)
        mods = np.abs(vals)
        j = int(np.argmin(mods))
        if mods[j] < min_modulus:
            raise ContourThroughZeroError(
                f"|g| = {mods[j]:.3e} at angle {theta[j]:.6f} on |zeta| = {radius}",
                angle=float(theta[j]),
                radius=radius,
            )
        steps = np.angle(np.roll(vals, -1) / vals)
        if np.max(np.abs(steps)) <= np.pi / 2 or N >= max_N:
            break
        N *= 2
    total = float(np.sum(steps))
    return WindingReport(float(radius), int(round(total / (2 * np.pi))), total, N)


def fiber_zero_count(f, t, r_in, r_out, N=DEFAULT_N):
    """Zeros of ``zeta -> f(zeta, t/zeta)`` in ``r_in < |zeta| < r_out``, with multiplicity."""
    if t == 0:
        raise DomainError("fiber zero count needs t != 0")
    if not 0 < r_in < r_out:
        raise DomainError(f"need 0 < r_in < r_out, got {r_in}, {r_out}")
    g = lambda zeta: f.numerator(zeta, t / zeta)  # noqa: E731
    return winding_count(g, r_out, N).winding - winding_count(g, r_in, N).winding


@dataclass(frozen=True)
class BranchOrder:
    branch: str
    order_at_origin: int
    zeros_in_punctured_disc: int

    @property
    def total(self):
        return self.order_at_origin + self.zeros_in_punctured_disc


def nodal_branch_order(f, branch, radius, tol=1e-12, N=DEFAULT_N):
    """Vanishing order at the node and further zeros in ``0 < |x| < radius`` on one branch.

    The branch restriction is ``f(z, 0)`` or ``f(0, w)``.  Coefficients with
    modulus ``<= tol * max|a|`` count as zero.  An identically vanishing
    restriction raises :class:`DegenerateBranchError`.
    """
    if branch == "z":
        series = f.axis_z()
    elif branch == "w":
        series = f.axis_w()
    else:
        raise ValueError(f"branch must be 'z' or 'w', got {branch!r}")
    cutoff = tol * max(float(np.max(np.abs(f.coeffs))), 1e-300)
    nz = np.flatnonzero(np.abs(series.coeffs) > cutoff)
    if nz.size == 0:
        raise DegenerateBranchError(branch)
    order = int(nz[0])
    wind = winding_count(series, radius, N).winding
    return BranchOrder(branch, order, wind - order)


@dataclass
class ConstancyReport:
    t_values: list
    counts: list
    radii: list
    branches: dict = field(default_factory=dict)
    degenerate: list = field(default_factory=list)

    @property
    def nodal_total(self):
        if self.degenerate:
            return None
        return sum(b.total for b in self.branches.values())

    @property
    def constant(self):
        return len(set(self.counts)) <= 1

    @property
    def passed(self):
        """True/False, or None when a branch is degenerate (no verdict)."""
        if self.degenerate:
            return None
        return self.constant and all(c == self.nodal_total for c in self.counts)


def constancy_check(f, t_list, rho=0.9, c=1.0, c_prime=1.0, N=DEFAULT_N):
    """Compare fiber zero counts over ``t_list`` with the nodal branch totals.

    On the fiber over ``t`` the counting circles are the band circles
    ``|zeta| = |t|/(c' rho)`` and ``|zeta| = rho c``; on the nodal branches the
    counting circles are ``|z| = rho c`` and ``|w| = rho c'``.
    """
    counts, radii = [], []
    for t in t_list:
        r_in, r_out = abs(t) / (c_prime * rho), rho * c
        if r_in >= r_out:
            raise DomainError(f"|t| = {abs(t)} too large for rho = {rho}")
        counts.append(fiber_zero_count(f, t, r_in, r_out, N))
        radii.append((r_in, r_out))
    report = ConstancyReport(list(t_list), counts, radii)
    for branch, r in (("z", rho * c), ("w", rho * c_prime)):
        try:
            report.branches[branch] = nodal_branch_order(f, branch, r, N=N)
        except DegenerateBranchError:
            report.degenerate.append(branch)
    return report
