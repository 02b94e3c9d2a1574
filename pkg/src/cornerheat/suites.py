"""Verification suites: each returns a list of :class:`Check` rows.

The suites compare closed-form expansions against the numerical oracles
in :mod:`geometry` and :mod:`spectral`.  Default tolerances live in
:data:`TOLERANCES`; callers may override any of them by key.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import asymfit, expansions as ex, geometry as geo, spectral as sp
from .errors import InputError

LD = np.longdouble

TOLERANCES = {
    "consistency": 1e-12,
    "trig": 1e-10,
    "dist_slope": 6.5,
    "dist_r2": 0.99,
    "ell_slope": 5.8,
    "u0_slope": 4.8,
    "u1_slope": 2.8,
    "hj_slope": 6.5,
    "b0": 0.005,
    "b1": 0.02,
    "b2": 0.10,
    "a0": 0.005,
    "a1": 0.02,
    "a2": 0.10,
    "routes": 1e-12,
    "sector": 1e-3,
    "wedge": 1e-6,
    "reflection": 1e-10,
}

#: residual floor for order fits on extended-precision oracles
ORDER_FLOOR = 1e-24


@dataclass
class Check:
    """One verified quantity.

    ``comparison`` is ``"rel"`` (|m - t| <= tol |t|), ``"abs"``
    (|m - t| <= tol), ``"min"`` (m >= t) or ``"max"`` (m <= t).
    """

    suite: str
    name: str
    params: dict
    measured: float
    target: float
    tolerance: float
    comparison: str
    diagnostics: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        m, t, tol = float(self.measured), float(self.target), float(self.tolerance)
        if self.comparison == "rel":
            ok = abs(m - t) <= tol * abs(t)
        elif self.comparison == "abs":
            ok = abs(m - t) <= tol
        elif self.comparison == "min":
            ok = m >= t
        elif self.comparison == "max":
            ok = m <= t
        else:
            raise InputError(f"unknown comparison {self.comparison!r}")
        self.passed = bool(ok)

    def as_dict(self):
        return {"suite": self.suite, "check": self.name, "params": self.params,
                "measured": float(self.measured), "target": float(self.target),
                "tolerance": float(self.tolerance), "comparison": self.comparison,
                "pass": self.passed, "diagnostics": self.diagnostics}


def _tol(overrides, key):
    return float((overrides or {}).get(key, TOLERANCES[key]))


def _coefficient_check(suite, name, params, measured, target, tol, unit_scale, diag):
    """Relative check, or absolute against tol * unit_scale when the target vanishes."""
    if target == 0.0:
        return Check(suite, name, params, measured, 0.0, tol * abs(unit_scale), "abs", diag)
    return Check(suite, name, params, measured, target, tol, "rel", diag)


# ---------------------------------------------------------------------------
# closed-form suites
# ---------------------------------------------------------------------------

def random_symmetric_jets(n, seed=0):
    rng = np.random.default_rng(seed)
    K = rng.uniform(-2.0, 2.0, n)
    lap = rng.uniform(-2.0, 2.0, n)
    return [ex.CurvatureJet.symmetric(a, b) for a, b in zip(K, lap)]


def _rel_dev(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.maximum(np.abs(b), 1e-300)
    dev = np.where(b == 0, np.abs(a - b), np.abs(a - b) / scale)
    return float(dev.max())


def suite_consistency(kmin=2, kmax=20, n_jets=100, seed=0, tol_overrides=None):
    """cone = (1/k) sum_j b(2 pi j / k) and corner = cone / 2 on random symmetric jets."""
    tol = _tol(tol_overrides, "consistency")
    jets = random_symmetric_jets(n_jets, seed)
    rows = []
    for k in range(kmin, kmax + 1):
        dev_sum = 0.0
        dev_half = 0.0
        for jet in jets:
            cone = ex.cone_coeffs(jet, k).as_tuple()
            acc = np.zeros(3)
            for j in range(1, k):
                acc += ex.b_coeffs(jet, ex.AngleData.rotation(j, k)).as_tuple()
            dev_sum = max(dev_sum, _rel_dev(acc / k, cone))
            corner = ex.corner_coeffs(jet, k).as_tuple()
            dev_half = max(dev_half, _rel_dev(corner, 0.5 * np.asarray(cone)))
        p = {"k": k, "n_jets": n_jets, "seed": seed}
        rows.append(Check("consistency", "cone_equals_mean_rotation", p, dev_sum, 0.0, tol, "abs"))
        rows.append(Check("consistency", "corner_equals_half_cone", p, dev_half, 0.0, tol, "abs"))
    return rows


def suite_trig(kmax=200, tol_overrides=None):
    """Closed-form inverse sine power sums against direct summation."""
    tol = _tol(tol_overrides, "trig")
    rows = []
    for m in (1, 2, 3):
        worst = 0.0
        for k in range(2, kmax + 1):
            j = np.arange(1, k)
            direct = math.fsum(np.sin(j * np.pi / k) ** (-2 * m))
            closed = ex.sine_power_sums(k, m)
            worst = max(worst, abs(closed - direct) / abs(direct))
        rows.append(Check("trig", "sine_power_sum", {"m": m, "kmax": kmax}, worst, 0.0, tol, "abs"))
    return rows


# ---------------------------------------------------------------------------
# geometric suites
# ---------------------------------------------------------------------------

def _unit(angle):
    return np.array([np.cos(LD(angle)), np.sin(LD(angle))], dtype=LD)


def _order_rows(suite, name, params, pairs, slope_min, r2_min=None, floor=ORDER_FLOOR):
    res = asymfit.remainder_order(pairs, floor=floor)
    diag = res.as_dict()
    rows = [Check(suite, name + "_slope", params, res.slope, slope_min, 0.0, "min", diag)]
    if r2_min is not None:
        rows.append(Check(suite, name + "_r2", params, res.r2, r2_min, 0.0, "min", diag))
    return rows


def _dist_residuals(profile, base_r, u_angle, v_angle, radii, jet):
    u = _unit(u_angle)
    v = _unit(v_angle)
    pairs = []
    for r in radii:
        x = LD(r) * u
        y = LD(r) * v
        X = geo.exp_map(profile, x, base_r)
        Y = geo.exp_map(profile, y, base_r)
        d = geo.geodesic_distance_cartesian(profile, X, Y)
        pairs.append((r, abs(float(d * d - ex.dist2_series(jet, x, y).value))))
    return pairs


DEFAULT_SPHERE = {"kind": "sphere", "K": 1.0}
DEFAULT_BUMP = {"kind": "poly_odd", "coeffs": ["-1/6", "1/48"]}
DEFAULT_BUMP_NEG = {"kind": "poly_odd", "coeffs": ["-1/6", "-1/240"]}


def make_profile(spec):
    """Build a RotationalProfile from a surface specification mapping."""
    spec = dict(spec or DEFAULT_SPHERE)
    kind = spec.get("kind", "sphere")
    vr = spec.get("valid_radius")
    if kind == "flat":
        return geo.RotationalProfile.flat(valid_radius=vr or 10.0)
    if kind == "sphere":
        return geo.RotationalProfile.sphere(spec.get("K", 1.0), valid_radius=vr)
    if kind == "hyperbolic":
        return geo.RotationalProfile.hyperbolic(spec.get("K", -1.0), valid_radius=vr)
    if kind == "poly_odd":
        coeffs = [Fraction(str(c)) for c in spec.get("coeffs", [])]
        return geo.RotationalProfile.poly_odd(coeffs, valid_radius=vr)
    raise InputError(f"unknown surface kind {kind!r}")


def suite_dist(surfaces=None, r_min=1e-2, r_max=2e-1, n=12, base_r=0.3, phi=2 * math.pi / 3,
               tol_overrides=None, floor=ORDER_FLOOR):
    """Sixth-order distance expansion against the geodesic boundary value solver.

    Without ``surfaces`` the vertex of the unit sphere and an off-vertex
    point of the bump profile are used.  Otherwise each surface is tested
    at the vertex and at ``base_r``.
    """
    slope = _tol(tol_overrides, "dist_slope")
    r2 = _tol(tol_overrides, "dist_r2")
    radii = np.geomspace(r_min, r_max, n)
    if surfaces is None:
        cases = [(DEFAULT_SPHERE, 0.0), (DEFAULT_BUMP, base_r)]
    else:
        cases = [(s, b) for s in surfaces for b in (0.0, base_r)]
    rows = []
    for spec, b in cases:
        prof = make_profile(spec)
        if b == 0.0:
            jet = geo.vertex_jet(prof)
            ua, va = 0.0, phi
        else:
            jet = geo.point_jet(prof, b)
            ua, va = 0.4, 2.3
        pairs = _dist_residuals(prof, b, ua, va, radii, jet)
        params = {"surface": prof.spec(), "base_r": b, "u_angle": ua, "v_angle": va}
        rows += _order_rows("dist", "dist2", params, pairs, slope, r2, floor)
    return rows


GENERIC_JET = ex.CurvatureJet(0.7, (0.3, -0.2), ((0.5, 0.1), (0.1, -0.4)))


def suite_ell(jet=None, u_angle=0.3, r_min=1e-2, r_max=1e-1, n=10, tol_overrides=None,
              floor=ORDER_FLOOR):
    """Jacobi length and density expansions against the Jacobi equation."""
    jet = jet or GENERIC_JET
    u = np.array([math.cos(u_angle), math.sin(u_angle)])
    radii = np.geomspace(r_min, r_max, n)
    ell_pairs = []
    u0_pairs = []
    for r in radii:
        J = geo.jacobi_length(jet, u, r)
        ell, _ = ex.ell_theta_series(jet, u.astype(LD), LD(r))
        ell_pairs.append((r, abs(float(ell.value - J))))
        u0 = ex.u0_series(jet, u.astype(LD), LD(r)).value
        u0_pairs.append((r, abs(float(u0 * u0 * J / LD(r) - 1))))
    params = {"jet": _jet_params(jet), "u_angle": u_angle}
    rows = _order_rows("ell", "ell", params, ell_pairs, _tol(tol_overrides, "ell_slope"), None, floor)
    rows += _order_rows("ell", "u0_squared_theta", params, u0_pairs,
                        _tol(tol_overrides, "u0_slope"), None, floor)
    return rows


def _jet_params(jet):
    return {"K": jet.K, "gradK": list(jet.gradK), "hessK": [list(r) for r in jet.hessK],
            "lapK": jet.lapK}


def suite_u1(surface=None, r_min=1e-2, r_max=1e-1, n=10, tol_overrides=None):
    """u1 series at the vertex against the recursion-formula quadrature."""
    prof = make_profile(surface or DEFAULT_BUMP)
    jet = geo.vertex_jet(prof)
    u = np.array([1.0, 0.0])
    pairs = []
    for r in np.geomspace(r_min, r_max, n):
        oracle = geo.u1_recursion_oracle(prof, u, r)
        pairs.append((r, abs(float(ex.u1_series(jet, u, r).value) - oracle)))
    return _order_rows("u1", "u1", {"surface": prof.spec()}, pairs,
                       _tol(tol_overrides, "u1_slope"), None, 1e-15)


def _inverse_metric_norm2(profile, x, grad):
    s = x @ x
    A, B = profile.metric_AB(s)
    xg = x @ grad
    return (grad @ grad - B * xg * xg) / A


def suite_hj(surfaces=None, angles=(0.2, 1.9), r_min=1e-2, r_max=2e-1, n=10,
             tol_overrides=None, floor=ORDER_FLOOR):
    """Hamilton-Jacobi residual |d_x F|^2 - 4F of the truncated squared distance."""
    surfaces = surfaces or [DEFAULT_SPHERE, DEFAULT_BUMP]
    rows = []
    for spec in surfaces:
        prof = make_profile(spec)
        jet = geo.vertex_jet(prof)
        u = _unit(angles[0])
        v = _unit(angles[1])
        pairs = []
        ratios = []
        for r in np.geomspace(r_min, r_max, n):
            x = LD(r) * u
            y = LD(r) * v
            F = ex.dist2_series(jet, x, y).value
            G = ex.dist2_series_gradient(jet, x, y)
            res = abs(float(_inverse_metric_norm2(prof, x, G) - 4 * F))
            pairs.append((r, res))
            ratios.append(res / r**5)
        params = {"surface": prof.spec(), "angles": list(angles)}
        rows += _order_rows("hj", "hamilton_jacobi", params, pairs,
                            _tol(tol_overrides, "hj_slope"), None, floor)
        rows[-1].diagnostics["max_residual_over_r5"] = max(ratios)
    return rows


# ---------------------------------------------------------------------------
# spectral suites
# ---------------------------------------------------------------------------

def _angle_list(phis):
    out = []
    for p in phis:
        out.append(p if isinstance(p, ex.AngleData) else ex.AngleData(float(p)))
    return out


def _fit(samples, degree=2, variable="t"):
    return asymfit.fit_power_series(samples, degree, variable=variable)


def suite_b(surface=None, phis=None, R=1.0, stability=True, degree=2, per_decade=20,
            t_window=None, tol_overrides=None, check_b2=True):
    """Fitted Donnelly coefficients b0, b1, b2 of I(t) against the closed forms.

    With ``stability=True`` the fit is repeated at outer radii R and R/2 on
    the R/2 window and b0, b1 are required to agree within the combined
    fit uncertainties.
    """
    prof = make_profile(surface or DEFAULT_SPHERE)
    jet = geo.vertex_jet(prof)
    angles = _angle_list(phis or [ex.AngleData.from_turns(1),
                                  ex.AngleData.from_turns(Fraction(2, 3)),
                                  ex.AngleData.from_turns(Fraction(1, 2))])
    unit = ex.CurvatureJet.symmetric(1.0, 0.0)

    def windows(radius):
        if t_window is not None:
            return {a.phi: tuple(t_window) for a in angles}
        return {a.phi: asymfit.fit_window(a.C, radius) for a in angles}

    def run(radius, wins):
        tmin = min(w[0] for w in wins.values())
        spectra = sp.disk_spectra(prof, radius, tmin)
        fits = {}
        for a in angles:
            grid = asymfit.geometric_grid(*wins[a.phi], per_decade)
            fits[a.phi] = _fit(sp.donnelly_trace_I(prof, radius, a.phi, grid, spectra), degree)
        return fits

    main = run(R, windows(R))
    rows = []
    names = ("b0", "b1", "b2")
    for a in angles:
        fit = main[a.phi]
        target = ex.b_coeffs(jet, a).as_tuple()
        unit_vals = ex.b_coeffs(unit, a).as_tuple()
        params = {"surface": prof.spec(), "phi": a.phi, "R": R}
        diag = fit.as_dict()
        for ell in range(3 if check_b2 else 2):
            rows.append(_coefficient_check("b", names[ell], params, fit.coefficients[ell],
                                           target[ell], _tol(tol_overrides, names[ell]),
                                           unit_vals[ell], diag))
    if stability:
        small = windows(R / 2)
        big = run(R, small)
        half = run(R / 2, small)
        for a in angles:
            f1, f2 = big[a.phi], half[a.phi]
            params = {"surface": prof.spec(), "phi": a.phi, "R": [R, R / 2],
                      "window": list(small[a.phi])}
            for ell in range(2):
                diff = abs(f1.coefficients[ell] - f2.coefficients[ell])
                unc = math.hypot(f1.uncertainties[ell], f2.uncertainties[ell])
                rows.append(Check("b", f"{names[ell]}_R_vs_half_R", params, diff, unc, 0.0, "max",
                                  {"R": f1.as_dict(), "half_R": f2.as_dict()}))
    return rows


def suite_cone(surface=None, k=3, R=1.0, degree=2, per_decade=20, t_window=None,
               tol_overrides=None):
    """Fitted cone-point coefficients a0, a1, a2 against the closed forms."""
    prof = make_profile(surface or DEFAULT_SPHERE)
    jet = geo.vertex_jet(prof)
    ang = ex.AngleData.from_order(k)
    tmin, tmax = tuple(t_window) if t_window is not None else asymfit.fit_window(ang.C, R)
    grid = asymfit.geometric_grid(tmin, tmax, per_decade)
    spectra = sp.disk_spectra(prof, R, tmin)
    samples = sp.cone_trace_contribution(prof, R, k, grid, spectra, route="rotation")
    fit = _fit(samples, degree)
    target = ex.cone_coeffs(jet, k).as_tuple()
    unit_vals = ex.cone_coeffs(ex.CurvatureJet.symmetric(1.0, 0.0), k).as_tuple()
    params = {"surface": prof.spec(), "k": k, "R": R}
    rows = []
    for ell, name in enumerate(("a0", "a1", "a2")):
        rows.append(_coefficient_check("cone", name, params, fit.coefficients[ell], target[ell],
                                       _tol(tol_overrides, name), unit_vals[ell], fit.as_dict()))
    dev = 0.0
    for s in samples:
        th, _, _ = sp._mode_thetas(spectra, s.t)
        n = np.arange(th.size)
        scale = float(np.sum(np.where(n == 0, 1.0, 2.0) * th))
        dev = max(dev, abs(s.parts["rotation"] - s.parts["modes"]) / scale)
    rows.append(Check("cone", "routes_agree", params, dev, 0.0, _tol(tol_overrides, "routes"), "abs"))
    return rows


def sector_constant(gamma, R=1.0):
    """Constant term of a flat sector trace: arc term + two right angles + the apex."""
    return gamma / (12 * math.pi) + 2 * ex.kac_corner(math.pi / 2) + ex.kac_corner(gamma)


def suite_kac(gamma=math.pi / 3, R=1.0, t_maxes=(0.02, 0.01), degree=3, per_decade=20,
              wedge_orders=(2, 3, 4), eps=1.0, wedge_times=(1e-3, 1e-2), tol_overrides=None):
    """Flat sector constant and method-of-images corner terms."""
    rows = []
    target = sector_constant(gamma, R)
    spectra = None
    for tmax in sorted(t_maxes, reverse=True):
        grid = asymfit.geometric_grid(tmax / 25, tmax, per_decade)
        Z = sp.flat_sector_trace(gamma, R, grid)
        samples = [sp.TraceSample(s.t, s.value - sp.sector_smooth_terms(gamma, R, s.t),
                                  s.tail_estimate, error=s.error) for s in Z]
        fit = _fit(samples, degree, "sqrt")
        rows.append(Check("kac", "sector_constant", {"gamma": gamma, "R": R, "t_max": tmax},
                          fit.coefficients[0], target, _tol(tol_overrides, "sector"), "abs",
                          fit.as_dict()))
    for k in wedge_orders:
        half_a0 = 0.5 * ex.cone_coeffs(ex.CurvatureJet.flat(), k).c0
        for s in sp.wedge_image_corner(k, eps, wedge_times):
            p = {"k": k, "eps": eps, "t": s.t}
            rows.append(Check("kac", "wedge_rotation_part", p, s.parts["rotation"], half_a0,
                              _tol(tol_overrides, "wedge"), "abs"))
            rows.append(Check("kac", "wedge_reflection_part", p, s.parts["reflection"],
                              sp.wedge_reflection_oracle(eps, s.t),
                              _tol(tol_overrides, "reflection"), "abs"))
    return rows


SUITES = {
    "consistency": suite_consistency,
    "trig": suite_trig,
    "dist": suite_dist,
    "ell": suite_ell,
    "u1": suite_u1,
    "hj": suite_hj,
    "b": suite_b,
    "cone": suite_cone,
    "kac": suite_kac,
}
