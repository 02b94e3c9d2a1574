import math

import numpy as np
import pytest
from scipy import optimize, special

from cornerheat import spectral as sp
from cornerheat.errors import InputError, TruncationError
from cornerheat.expansions import kac_corner
from cornerheat.geometry import RotationalProfile

FLAT = RotationalProfile.flat()
SPHERE = RotationalProfile.sphere(1.0)
BUMP = RotationalProfile.bump(1.5)


@pytest.fixture(scope="module")
def flat_spectra():
    return sp.disk_spectra(FLAT, 1.0, 2e-3)


@pytest.fixture(scope="module")
def bump_spectra():
    return sp.disk_spectra(BUMP, 1.0, 2e-3)


@pytest.mark.parametrize("nu", [0, 1, 2, 5])
def test_bessel_zeros(nu):
    spec = sp.radial_spectrum(FLAT, 1.0, nu, count=20)
    z = special.jn_zeros(nu, 20)
    assert np.max(np.abs(spec.eigenvalues - z**2) / z**2) < 1e-8


def test_half_integer_order_against_bessel_roots():
    spec = sp.radial_spectrum(FLAT, 1.0, 2.5, count=5)
    grid = np.linspace(0.5, 20, 4000)
    vals = special.jv(2.5, grid)
    roots = [optimize.brentq(lambda x: special.jv(2.5, x), a, b)
             for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]) if fa * fb < 0]
    assert spec.eigenvalues == pytest.approx(np.array(roots[:5]) ** 2, rel=1e-10)


def test_radius_scaling():
    a = sp.radial_spectrum(FLAT, 1.0, 3, count=10).eigenvalues
    b = sp.radial_spectrum(FLAT, 2.5, 3, count=10).eigenvalues
    assert b == pytest.approx(a / 2.5**2, rel=1e-11)


def test_interlacing_in_order():
    a = sp.radial_spectrum(BUMP, 1.0, 2, count=10).eigenvalues
    b = sp.radial_spectrum(BUMP, 1.0, 3, count=10).eigenvalues
    assert np.all(a < b)
    assert np.all(b[:-1] < a[1:])


def test_lam_max_completeness_and_cross_check():
    spec = sp.radial_spectrum(BUMP, 1.0, 4, lam_max=2000.0, cross_check=True)
    assert spec.eigenvalues[-1] < 2000.0
    assert sp.prufer_count(BUMP, 1.0, 4, 2000.0) == spec.count


def test_solvers_agree():
    cheb = sp.radial_spectrum(BUMP, 1.0, 2.5, count=6).eigenvalues
    prufer = sp.radial_spectrum(BUMP, 1.0, 2.5, count=6, method="prufer").eigenvalues
    fd = sp.radial_spectrum(BUMP, 1.0, 2.5, count=6, method="fd").eigenvalues
    assert prufer == pytest.approx(cheb, rel=1e-8)
    assert fd == pytest.approx(cheb, rel=1e-6)


def test_sphere_cap_spectrum_positive_and_below_flat():
    s = sp.radial_spectrum(SPHERE, 1.0, 0, count=5).eigenvalues
    f = sp.radial_spectrum(FLAT, 1.0, 0, count=5).eigenvalues
    # the cap of geodesic radius 1 is larger than the unit disk
    assert np.all(s < f) and np.all(s > 0)


def test_radial_spectrum_input_errors():
    with pytest.raises(InputError):
        sp.radial_spectrum(FLAT, 1.0, -1, count=3)
    with pytest.raises(InputError):
        sp.radial_spectrum(FLAT, 1.0, 0)
    with pytest.raises(InputError):
        sp.radial_spectrum(FLAT, 1.0, 0, count=3, method="magic")


def test_partial_theta_and_refusal():
    spec = sp.radial_spectrum(FLAT, 1.0, 0, count=10)
    sample = sp.partial_theta(spec, 0.1)
    assert sample.value == pytest.approx(float(np.sum(np.exp(-spec.eigenvalues * 0.1))))
    assert sample.tail_estimate >= 0
    with pytest.raises(TruncationError) as err:
        sp.partial_theta(spec, 1e-4)
    need = err.value.minimal_count
    assert need > spec.count
    longer = sp.radial_spectrum(FLAT, 1.0, 0, count=need)
    sp.partial_theta(longer, 1e-4)
    forced = sp.partial_theta(spec, 1e-4, force=True)
    assert forced.tail_estimate > 1e-3 * forced.value


def test_disk_trace_against_weyl_terms(flat_spectra):
    # the full unit disk trace: pi/(4 pi t) - 2 pi/(8 sqrt(pi t)) + 1/6 + O(sqrt t)
    t = 2e-3
    I0 = sp.donnelly_trace_I(FLAT, 1.0, 1e-300, [t], flat_spectra)  # phi -> 0 keeps all modes
    z = I0[0].value
    smooth = math.pi / (4 * math.pi * t) - 2 * math.pi / (8 * math.sqrt(math.pi * t)) + 1 / 6
    assert abs(z - smooth) < 0.5 * math.sqrt(t)


def test_rotation_trace_parity(bump_spectra):
    t = [0.01, 0.02]
    a = sp.donnelly_trace_I(BUMP, 1.0, 2.0, t, bump_spectra)
    b = sp.donnelly_trace_I(BUMP, 1.0, 2 * math.pi - 2.0, t, bump_spectra)
    for x, y in zip(a, b):
        assert x.value == pytest.approx(y.value, rel=1e-12)


def test_cone_order_two_is_half_rotation_trace(bump_spectra):
    t = [0.005, 0.01]
    cone = sp.cone_trace_contribution(BUMP, 1.0, 2, t, bump_spectra)
    rot = sp.donnelly_trace_I(BUMP, 1.0, math.pi, t, bump_spectra)
    for c, r in zip(cone, rot):
        assert c.value == pytest.approx(0.5 * r.value, rel=1e-12)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_cone_routes_agree(bump_spectra, k):
    out = sp.cone_trace_contribution(BUMP, 1.0, k, [0.003, 0.01], bump_spectra)
    for s in out:
        assert abs(s.parts["rotation"] - s.parts["modes"]) <= 1e-12 * max(1.0, abs(s.value)) * 100


def test_cone_invalid_order(bump_spectra):
    with pytest.raises(InputError):
        sp.cone_trace_contribution(BUMP, 1.0, 2.5, [0.01], bump_spectra)


def test_spectra_refuse_smaller_times(bump_spectra):
    with pytest.raises(TruncationError):
        sp.donnelly_trace_I(BUMP, 1.0, 1.0, [1e-4], bump_spectra)


def test_flat_sector_scaling():
    gamma = math.pi / 3
    z1 = sp.flat_sector_trace(gamma, 1.0, [0.004, 0.01])
    z2 = sp.flat_sector_trace(gamma, 2.0, [0.016, 0.04])
    for a, b in zip(z1, z2):
        assert a.value == pytest.approx(b.value, rel=1e-11)


def test_flat_sector_constant_term():
    # the curved arc adds O(sqrt t) corrections after the constant
    gamma = math.pi / 3
    target = gamma / (12 * math.pi) + 2 * kac_corner(math.pi / 2) + kac_corner(gamma)
    errs = []
    for t in (4e-3, 1e-3):
        z = sp.flat_sector_trace(gamma, 1.0, [t])[0].value
        errs.append(z - sp.sector_smooth_terms(gamma, 1.0, t) - target)
    assert abs(errs[1]) < 2e-3
    assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.1)


def test_wedge_images_structure():
    for k in range(2, 7):
        imgs = sp.wedge_images(k)
        assert len(imgs) == 2 * k
        rots = [a for s, kind, a in imgs if kind == "rotation"]
        refs = [a for s, kind, a in imgs if kind == "reflection"]
        assert len(rots) == len(refs) == k
        assert all(s == 1 for s, kind, _ in imgs if kind == "rotation")
        assert all(s == -1 for s, kind, _ in imgs if kind == "reflection")
        got = sorted(round(a % (2 * math.pi), 12) for a in rots)
        expected = sorted(round(2 * math.pi * j / k % (2 * math.pi), 12) for j in range(k))
        assert got == expected


@pytest.mark.parametrize("k", [2, 3, 4])
def test_wedge_image_corner(k):
    eps = 1.0
    for s in sp.wedge_image_corner(k, eps, [1e-3, 1e-2]):
        a0 = (k * k - 1) / (12 * k)
        assert s.parts["rotation"] == pytest.approx(a0 / 2, rel=1e-12)
        oracle = sp.wedge_reflection_oracle(eps, s.t)
        assert s.parts["reflection"] == pytest.approx(oracle, rel=1e-10)


def test_eigenvalue_error_estimates_cover_true_error():
    spec = sp.radial_spectrum(FLAT, 1.0, 0, lam_max=5e4)
    z = special.jn_zeros(0, spec.count) ** 2
    true = np.abs(spec.eigenvalues - z)
    assert np.all(spec.errors > 0)
    assert np.sum(true) <= 3 * np.sum(spec.errors)
    assert np.all(true <= 20 * spec.errors)


def test_trace_samples_carry_numerical_error(flat_spectra):
    s = sp.donnelly_trace_I(FLAT, 1.0, 2.0, [0.005], flat_spectra)[0]
    assert 0 < s.error < 1e-8
