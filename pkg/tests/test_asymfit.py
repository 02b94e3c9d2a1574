import math

import numpy as np
import pytest

from cornerheat import asymfit as af
from cornerheat.errors import FitError, InputError
from cornerheat.spectral import TraceSample


def samples(fn, t_min=1e-3, t_max=1e-2, per_decade=20, tail=0.0):
    return [TraceSample(float(t), float(fn(t)), tail) for t in af.geometric_grid(t_min, t_max, per_decade)]


def test_geometric_grid():
    g = af.geometric_grid(1e-3, 1e-1, 20)
    assert g.size == 41
    assert g[0] == pytest.approx(1e-3) and g[-1] == pytest.approx(1e-1)
    assert np.allclose(np.diff(np.log(g)), np.log(10) / 20)
    with pytest.raises(InputError):
        af.geometric_grid(1e-2, 1e-3)


def test_fit_window():
    lo, hi = af.fit_window(1.0, 1.0)
    assert hi == pytest.approx(0.01) and lo == pytest.approx(0.01 / 25)
    lo2, hi2 = af.fit_window(math.sqrt(3), 2.0, shrink=0.5)
    assert hi2 == pytest.approx(0.5 * 12 / 100)


def test_polynomial_recovered_exactly():
    fit = af.fit_power_series(samples(lambda t: 2 - 3 * t + 5 * t * t), degree=2)
    assert fit.coefficients == pytest.approx([2, -3, 5], rel=1e-9)
    assert fit.elimination == pytest.approx([2, -3, 5], rel=1e-6)
    assert fit.condition < 1e8
    assert np.all(fit.uncertainties < 1e-6)


def test_exponential_coefficients_within_uncertainty():
    fit = af.fit_power_series(samples(lambda t: math.exp(-t), 1e-3, 1e-1), degree=2)
    exact = np.array([1.0, -1.0, 0.5])
    err = np.abs(fit.coefficients - exact)
    assert np.all(err < 1e-4 * np.array([1, 1, 10]))
    assert np.all(err <= 10 * fit.uncertainties + 1e-14)


def test_sqrt_variable():
    fit = af.fit_power_series(samples(lambda t: 0.25 + 0.1 * math.sqrt(t) - t, 1e-4, 1e-2),
                              degree=2, variable="sqrt")
    assert fit.variable == "sqrt"
    assert fit.coefficients == pytest.approx([0.25, 0.1, -1.0], rel=1e-8, abs=1e-12)


def test_uniform_weights_and_dict():
    fit = af.fit_power_series(samples(lambda t: 1 + t), degree=1, weights="uniform")
    d = fit.as_dict()
    assert d["coefficients"] == pytest.approx([1, 1])
    assert d["window"][2] == 21


def test_fit_errors():
    with pytest.raises(FitError):
        af.fit_power_series(samples(lambda t: 1 + t), degree=1, condition_limit=10.0)
    with pytest.raises(FitError):
        af.fit_power_series(samples(lambda t: 1 + t, tail=1.0), degree=1)
    with pytest.raises(InputError):
        af.fit_power_series(samples(lambda t: 1 + t)[:3], degree=2)
    with pytest.raises(InputError):
        af.fit_power_series(samples(lambda t: 1 + t), degree=1, weights="odd")
    with pytest.raises(InputError):
        af.fit_power_series(samples(lambda t: 1 + t), degree=1, variable="log")


def test_remainder_order_slope():
    r = np.geomspace(1e-2, 1e-1, 10)
    res = af.remainder_order(list(zip(r, 3 * r**7)))
    assert res.slope == pytest.approx(7, abs=1e-10)
    assert res.r2 == pytest.approx(1.0)
    assert not res.exact and res.used == 10


def test_remainder_order_exact_marker():
    r = np.geomspace(1e-2, 1e-1, 10)
    res = af.remainder_order(list(zip(r, np.zeros(10))))
    assert res.exact and res.slope == math.inf


def test_remainder_order_input_checks():
    with pytest.raises(InputError):
        af.remainder_order([(0.1, 1.0)])
    with pytest.raises(InputError):
        af.remainder_order([(0.05, 1.0), (0.1, 2.0)])
    with pytest.raises(InputError):
        af.remainder_order([(0.0, 1.0), (0.1, 2.0)])


def test_sample_errors_propagate_into_uncertainty():
    base = samples(lambda t: 2 - 3 * t + 5 * t * t)
    noisy = [TraceSample(s.t, s.value, 0.0, error=1e-9) for s in base]
    a = af.fit_power_series(base, degree=2)
    b = af.fit_power_series(noisy, degree=2)
    assert np.all(b.uncertainties > a.uncertainties)
    # a constant offset of size 1e-9 moves c0 by exactly 1e-9, within the bound
    shifted = [TraceSample(s.t, s.value + 1e-9, 0.0, error=1e-9) for s in base]
    c = af.fit_power_series(shifted, degree=2)
    assert abs(c.coefficients[0] - b.coefficients[0]) <= b.uncertainties[0]
