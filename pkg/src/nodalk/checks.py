"""Named numerical invariants, run by ``nodalk verify``.

Every check takes a seeded generator and returns a :class:`CheckResult`.  A
failing check carries a JSON-serializable counterexample.
"""
from dataclasses import dataclass, field

import numpy as np

from . import collar, divisors, extension, laurent, nodal, sheaf
from .differentials import AnnulusKDifferential, BandSpec, interior_sup_check, nodal_residue_check
from .extension import TwoVarSeries


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tol: float
    counterexample: dict = field(default_factory=dict)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name:<28s} {status}  value={self.value:.3e}  tol={self.tol:.1e}"


def random_laurent(rng, lo, hi):
    n = hi - lo + 1
    r = np.sqrt(rng.uniform(0, 1, n))
    return laurent.LaurentSeries(lo, r * np.exp(2j * np.pi * rng.uniform(0, 1, n)))


def random_two_var(rng, m_deg, n_deg, radius=1.0):
    shape = (m_deg + 1, n_deg + 1)
    r = radius * np.sqrt(rng.uniform(0, 1, shape))
    return TwoVarSeries(r * np.exp(2j * np.pi * rng.uniform(0, 1, shape)))


def random_fiber_points(rng, n, t_max=0.5):
    t = t_max * np.sqrt(rng.uniform(0.01, 1, n)) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    zeta = np.abs(t) ** rng.uniform(0.1, 0.9, n) * np.exp(2j * np.pi * rng.uniform(0, 1, n))
    return zeta, t


def check_laurent_roundtrip(rng, trials=100, tol=1e-12):
    worst, bad = 0.0, None
    for _ in range(trials):
        s = random_laurent(rng, -8, 8)
        cs = laurent.CircleSamples.from_function(s, 1.0, 64)
        err = laurent.coefficients_from_samples(cs, -8, 8).max_abs_diff(s)
        if err > worst:
            worst, bad = err, s
    return CheckResult("laurent_roundtrip", worst <= tol, worst, tol,
                       {} if worst <= tol else bad.to_json())


def check_cauchy_f0(rng, trials=50, tol=1e-12):
    worst = 0.0
    for _ in range(trials):
        s = random_laurent(rng, -8, 8)
        r = rng.uniform(0.7, 1.3)
        N = 64
        cs = laurent.CircleSamples.from_function(s, r, N)
        dft_f0 = laurent.coefficients_from_samples(cs, -8, 8).coeff(0)
        # trapezoid rule on (1/2 pi i) int f(s) ds / s with ds = i s dtheta
        theta = np.linspace(0, 2 * np.pi, N + 1)
        pts = r * np.exp(1j * theta)
        integrand = s(pts) / pts * (1j * pts)
        quad = np.trapezoid(integrand, theta) / (2j * np.pi)
        plus, f0, minus = laurent.decompose(s)
        worst = max(worst, abs(dft_f0 - quad), abs(f0 - s.coeff(0)),
                    (plus + f0 + minus).max_abs_diff(s))
    return CheckResult("cauchy_decomposition", worst <= tol, worst, tol)


def check_alpha_v(rng, n=1000, tol=1e-14):
    zeta, t = random_fiber_points(rng, n)
    worst, bad = 0.0, {}
    for zz, tt in zip(zeta, t):
        z, w = nodal.embed(zz, tt)
        err = abs(nodal.pair(nodal.alpha(z, w), nodal.vertical_field(z, w)) - 2)
        if err > worst:
            worst, bad = err, {"z": [z.real, z.imag], "w": [w.real, w.imag]}
    return CheckResult("alpha_v_pairing", worst <= tol, worst, tol, {} if worst <= tol else bad)


def check_alpha_wedge(rng, n=1000, tol=1e-14):
    zeta, t = random_fiber_points(rng, n)
    worst = 0.0
    for zz, tt in zip(zeta, t):
        z, w = nodal.embed(zz, tt)
        worst = max(worst, abs(nodal.wedge(nodal.alpha(z, w), nodal.dpi(z, w)) - 2))
        worst = max(worst, abs(nodal.pair(nodal.dpi(z, w), nodal.vertical_field(z, w))))
    return CheckResult("alpha_wedge_dpi", worst <= tol, worst, tol)


def check_xy_correspondence(rng, n=1000, tol=1e-14):
    worst = 0.0
    for x, y in rng.uniform(-1, 1, (n, 2)) + 1j * rng.uniform(-1, 1, (n, 2)):
        v = nodal.change_coords_xy(nodal.vertical_field_xy(x, y))
        z, w = v.base
        ref = nodal.vertical_field(z, w)
        a = nodal.change_coords_xy(nodal.alpha_xy(x, y))
        worst = max(worst, abs(v.p - ref.p), abs(v.q - ref.q), abs(x * x - y * y - z * w),
                    abs(nodal.pair(nodal.alpha_xy(x, y), nodal.vertical_field_xy(x, y)) - 2),
                    abs(nodal.pair(a, v) - 2))
    return CheckResult("xy_zw_correspondence", worst <= tol, worst, tol)


def check_maximum_principle(rng, trials=30, tol=1e-9):
    worst = -np.inf
    for _ in range(trials):
        s = random_laurent(rng, -12, 12)
        b0 = BandSpec(0.5, 0.9, 1.0, 0.01)
        d = AnnulusKDifferential(1, s, b0.fiber)
        interior, band = interior_sup_check(d, b0, N=256)
        worst = max(worst, (interior - band) / band)
    return CheckResult("maximum_principle", worst <= tol, worst, tol)


def check_extension(rng, trials=5, tol=1e-8):
    worst, resid = 0.0, 0.0
    for _ in range(trials):
        truth = random_two_var(rng, 6, 6)
        fs = extension.sample_family(truth, k=int(rng.integers(1, 4)))
        fit = extension.extend(fs, 6, 6)
        worst = max(worst, fit.max_abs_diff(truth))
        nd = extension.nodal_differential(fit, fs.k)
        resid = max(resid, 0.0 if nodal_residue_check(nd, tol=0.0) else 1.0)
    ok = worst <= tol and resid == 0.0
    return CheckResult("extension_recovery", ok, worst, tol)


def check_normal_families(rng, tol=1e-10):
    f = TwoVarSeries.from_dict({(1, 0): 1, (0, 1): 1})
    ts = [10.0**-j for j in range(1, 7)]
    rep = extension.verify_normal_families(f, ts, nodal.AnnulusSpec(0.4, 0.9))
    worst = float(np.max(np.abs(rep.z_errors - np.array(ts) / 0.4)))
    truth = random_two_var(rng, 4, 4)
    # order is an asymptotic statement; |t| = 0.1 is still pre-asymptotic for generic truths
    rep2 = extension.verify_normal_families(truth, [10.0**-j for j in range(2, 8)],
                                            nodal.AnnulusSpec(0.4, 0.9))
    ok = worst <= tol and rep2.order >= 0.99 and rep.monotone and rep2.monotone
    return CheckResult("normal_families", ok, worst, tol, {} if ok else {"order": rep2.order})


def check_zero_constancy(rng, tol=1e-6):
    f = TwoVarSeries.from_dict({(1, 0): 1, (0, 1): 1}) ** 2
    ts = [-1e-2, 1e-3 * np.exp(1j * rng.uniform(0, 2 * np.pi)), 1e-4]
    rep = divisors.constancy_check(f, ts)
    g = lambda z: f.numerator(z, -1e-2 / z)  # noqa: E731
    defect = divisors.winding_count(g, 0.9).integer_defect
    ok = bool(rep.passed) and rep.counts[0] == 4 and defect <= tol
    return CheckResult("zero_count_constancy", ok, defect, tol,
                       {} if ok else {"counts": rep.counts})


def check_theta_complement(rng, n=1000, tol=1e-12):
    zeta, t = random_fiber_points(rng, n)
    zm, wm = np.abs(zeta), np.abs(t / zeta)
    worst = float(np.max(np.abs(collar.theta(zm, np.abs(t)) + collar.theta(wm, np.abs(t)) - np.pi)))
    return CheckResult("theta_complement", worst <= tol, worst, tol)


def check_factor_series(rng, tol=1e-12):
    c = collar.factor_series_coefficients(3)
    th = rng.uniform(0.01, 0.3)
    direct = collar.theta_csc_theta(th) ** 2
    err = abs(direct - collar.factor_series(th, 12))
    ok = c[1] * 3 == 1 and c[2] * 15 == 1 and err <= tol
    return CheckResult("factor_series", ok, err, tol)


def check_gauge(rng, trials=50, tol=1e-10):
    worst = 0.0
    pts = np.column_stack(random_fiber_points(rng, 200))
    pts = np.column_stack([pts[:, 0], pts[:, 1] / pts[:, 0]])
    psi = sheaf.RelativeSection(2, random_two_var(rng, 3, 3))
    for _ in range(trials):
        gauge = sheaf.GaugeFunction.exp_series(random_two_var(rng, 2, 2, radius=0.5))
        worst = max(worst, sheaf.gauge_invariance_check(psi, gauge, pts))
    scaled, base = sheaf.tau_scaling(psi, 2.0, pts)
    ok = worst <= tol and bool(np.all(scaled == 2.0**psi.k * base))
    return CheckResult("gauge_invariance", ok, worst, tol)


def check_residue(rng, n=200, tol=1e-12):
    zeta, t = random_fiber_points(rng, n)
    pts = np.column_stack([zeta, t / zeta])
    Phi = sheaf.CanonicalForm(1, random_two_var(rng, 3, 3))
    phi = sheaf.poincare_residue(Phi)
    worst = sheaf.residue_wedge_defect(Phi, phi, pts)
    return CheckResult("poincare_residue", worst <= tol, worst, tol)


CHECKS = (
    check_laurent_roundtrip,
    check_cauchy_f0,
    check_alpha_v,
    check_alpha_wedge,
    check_xy_correspondence,
    check_maximum_principle,
    check_extension,
    check_normal_families,
    check_zero_constancy,
    check_theta_complement,
    check_factor_series,
    check_gauge,
    check_residue,
)


def run_all(seed=0):
    rng = np.random.default_rng(seed)
    return [check(rng) for check in CHECKS]
