"""Holomorphic k-differentials on the degenerating annuli of ``zw = t``."""
from .collar import CollarSpec, collar_ratio_bounds, factor_series, hyperbolic_density, theta
from .differentials import AnnulusKDifferential, BandSpec, NodalKDifferential
from .divisors import constancy_check, fiber_zero_count, nodal_branch_order, winding_count
from .extension import (
    FamilyExtension,
    FamilySamples,
    TwoVarSeries,
    extend,
    extend_with_pole,
    nodal_restriction,
    sample_family,
)
from .laurent import CircleSamples, LaurentFit, LaurentSeries, coefficients_from_samples, decompose
from .nodal import AnnulusSpec, NodalFamilySpec
from .sheaf import CanonicalForm, GaugeFunction, RelativeSection, poincare_residue

__version__ = "0.1.0"
