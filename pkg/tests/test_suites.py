import math

import pytest

from cornerheat import suites
from cornerheat.errors import InputError
from cornerheat.geometry import ProfileKind


def test_check_comparisons():
    assert suites.Check("s", "n", {}, 1.0001, 1.0, 1e-3, "rel").passed
    assert not suites.Check("s", "n", {}, 1.01, 1.0, 1e-3, "rel").passed
    assert suites.Check("s", "n", {}, 1e-13, 0.0, 1e-12, "abs").passed
    assert suites.Check("s", "n", {}, 7.0, 6.5, 0.0, "min").passed
    assert not suites.Check("s", "n", {}, 2.0, 1.0, 0.0, "max").passed
    with pytest.raises(InputError):
        suites.Check("s", "n", {}, 1.0, 1.0, 0.0, "approx")


def test_coefficient_check_zero_target_is_absolute():
    c = suites._coefficient_check("b", "b2", {}, 1e-4, 0.0, 0.1, 0.0625, {})
    assert c.comparison == "abs" and c.tolerance == pytest.approx(0.00625) and c.passed


def test_make_profile():
    assert suites.make_profile({"kind": "flat"}).kind is ProfileKind.FLAT
    bump = suites.make_profile(suites.DEFAULT_BUMP)
    assert bump.curvature(0.0) == pytest.approx(1.0)
    with pytest.raises(InputError):
        suites.make_profile({"kind": "torus"})


def test_default_bumps_have_opposite_lapK():
    from cornerheat.geometry import vertex_jet
    plus = vertex_jet(suites.make_profile(suites.DEFAULT_BUMP))
    minus = vertex_jet(suites.make_profile(suites.DEFAULT_BUMP_NEG))
    assert plus.lapK == pytest.approx(1.0) and minus.lapK == pytest.approx(-1.0)
    assert plus.K == minus.K == pytest.approx(1.0)


def test_sector_constant_value():
    assert suites.sector_constant(math.pi / 3) == pytest.approx(19 / 72, rel=1e-15)


def test_hamilton_jacobi_suite():
    rows = suites.suite_hj()
    assert len(rows) == 2
    assert all(r.passed for r in rows)


def test_tolerance_override():
    rows = suites.suite_trig(kmax=10, tol_overrides={"trig": 0.0})
    assert all(r.tolerance == 0.0 for r in rows)
