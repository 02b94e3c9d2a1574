"""Closed-form small-distance and small-time expansions on surfaces.

Everything here is a pure function of a :class:`CurvatureJet` (the values
K, dK, the Hessian of K and the Laplacian of K at a base point) plus
tangent vectors, radii or angles.  Sign convention: the Laplacian is the
positive operator ``-div grad``, so ``lapK = -(hessK[0][0] + hessK[1][1])``.

Series evaluations follow the precision of their inputs: passing
``numpy.longdouble`` radii or vectors yields extended-precision values,
which the verification code relies on for sixth-order remainder checks.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

import numpy as np

from .errors import InputError, SymmetryError

SYMMETRY_RTOL = 1e-10
_UNIT_TOL = 1e-12


# ---------------------------------------------------------------------------
# data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureJet:
    """Pointwise curvature data in an orthonormal frame at the base point.

    ``lapK`` may be omitted, in which case it is derived from the Hessian.
    """

    K: float
    gradK: tuple = (0.0, 0.0)
    hessK: tuple = ((0.0, 0.0), (0.0, 0.0))
    lapK: float | None = None

    def __post_init__(self):
        g = tuple(float(c) for c in self.gradK)
        h = tuple(tuple(float(c) for c in row) for row in self.hessK)
        if len(g) != 2 or len(h) != 2 or any(len(row) != 2 for row in h):
            raise InputError("gradK must be a 2-vector and hessK a 2x2 array")
        scale = max(1.0, *(abs(c) for row in h for c in row))
        if abs(h[0][1] - h[1][0]) > 1e-12 * scale:
            raise InputError(f"hessK is not symmetric: {h}")
        trace_lap = -(h[0][0] + h[1][1])
        if self.lapK is None:
            lap = trace_lap
        else:
            lap = float(self.lapK)
            if abs(lap - trace_lap) > 1e-12 * max(scale, abs(lap)):
                raise InputError(
                    f"lapK={lap} inconsistent with -trace(hessK)={trace_lap}")
            lap = trace_lap
        object.__setattr__(self, "K", float(self.K))
        object.__setattr__(self, "gradK", g)
        object.__setattr__(self, "hessK", h)
        object.__setattr__(self, "lapK", lap)

    @classmethod
    def flat(cls):
        return cls(0.0)

    @classmethod
    def symmetric(cls, K, lapK=0.0):
        """Jet of a rotationally symmetric point: dK = 0, Hessian = -(lapK/2) g."""
        h = -0.5 * float(lapK)
        return cls(K, (0.0, 0.0), ((h, 0.0), (0.0, h)))

    def grad_dot(self, u):
        return self.gradK[0] * u[0] + self.gradK[1] * u[1]

    def hess_form(self, u, v):
        h = self.hessK
        return (h[0][0] * u[0] * v[0] + h[0][1] * (u[0] * v[1] + u[1] * v[0])
                + h[1][1] * u[1] * v[1])

    def scaled(self, lam):
        """Jet of the metric lam**2 * g at the same point."""
        lam = float(lam)
        return CurvatureJet(
            self.K / lam**2,
            tuple(c / lam**3 for c in self.gradK),
            tuple(tuple(c / lam**4 for c in row) for row in self.hessK),
        )

    def _scale(self):
        vals = [abs(self.K), abs(self.lapK), *map(abs, self.gradK),
                *(abs(c) for row in self.hessK for c in row)]
        return max(1.0, *vals)


def check_rotation_symmetry(jet: CurvatureJet, phi: float, unchecked=False):
    """Raise :class:`SymmetryError` unless ``jet`` is invariant under a rotation by ``phi``.

    Any nontrivial rotation forces dK = 0; rotations other than the half
    turn also force the Hessian to be a multiple of the metric.
    """
    if unchecked:
        return
    tol = SYMMETRY_RTOL * jet._scale()
    if max(abs(c) for c in jet.gradK) > tol:
        raise SymmetryError("gradK = 0", f"gradK={jet.gradK}")
    if not math.isclose(phi, math.pi, rel_tol=0.0, abs_tol=1e-14):
        _check_isotropic_hessian(jet, tol)


def _check_isotropic_hessian(jet, tol):
    h = jet.hessK
    if abs(h[0][1]) > tol or abs(h[0][0] - h[1][1]) > tol:
        raise SymmetryError("hessK = -(lapK/2) * identity", f"hessK={h}")


_NIVEN_COS = {Fraction(0): Fraction(1), Fraction(1, 3): Fraction(1, 2),
              Fraction(1, 2): Fraction(0), Fraction(2, 3): Fraction(-1, 2),
              Fraction(1): Fraction(-1)}


@dataclass(frozen=True)
class AngleData:
    """A rotation angle phi in (0, pi], optionally tied to a cone/corner order k.

    ``turns`` records phi / pi exactly when the angle was given as a rational
    multiple of pi.  Angles in (pi, 2pi) are replaced by 2pi - phi, which
    leaves every formula unchanged since they only involve cos(phi).
    """

    phi: float
    turns: Fraction | None = None
    k: int | None = None

    def __post_init__(self):
        phi = float(self.phi)
        turns = self.turns
        if turns is not None:
            turns = Fraction(turns)
            if not 0 < turns < 2:
                raise InputError(f"rotation angle {turns}*pi outside (0, 2pi)")
            if turns > 1:
                turns = 2 - turns
            phi = float(turns) * math.pi
        else:
            if not 0.0 < phi < 2.0 * math.pi:
                raise InputError(f"rotation angle {phi} outside (0, 2pi)")
            if phi > math.pi:
                phi = 2.0 * math.pi - phi
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "turns", turns)

    @classmethod
    def from_phi(cls, phi):
        return cls(phi)

    @classmethod
    def from_turns(cls, turns):
        """Angle ``turns * pi`` for a rational ``turns``."""
        return cls(0.0, Fraction(turns))

    @classmethod
    def rotation(cls, j, k):
        """The rotation angle 2*pi*j/k, canonicalized into (0, pi]."""
        if k < 1 or j % k == 0:
            raise InputError(f"2*pi*{j}/{k} is the identity rotation")
        return _rotation(cls, j % k, k)

    @classmethod
    def from_order(cls, k):
        """Cone generator of order k: phi = 2*pi/k, gamma = pi/k."""
        k = _check_order(k)
        return cls(0.0, Fraction(2, k), k)

    @property
    def gamma(self):
        if self.k is None:
            raise InputError("gamma is only defined for angles built from an order k")
        return math.pi / self.k

    @property
    def C(self):
        if self.turns is not None:
            return 2.0 * abs(math.sin(0.5 * math.pi * float(self.turns)))
        return 2.0 * abs(math.sin(0.5 * self.phi))

    @property
    def c_squared_exact(self):
        """C**2 as a Fraction when cos(phi) is rational, else None."""
        if self.turns is None or self.turns not in _NIVEN_COS:
            return None
        return 2 - 2 * _NIVEN_COS[self.turns]

    @property
    def is_half_turn(self):
        if self.turns is not None:
            return self.turns == 1
        return self.phi == math.pi


class Kind(str, enum.Enum):
    ROTATION_B = "rotation_b"
    CONE_A = "cone_a"
    CORNER_C = "corner_c"


class Source(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    FITTED = "fitted"
    CONJECTURE = "conjecture"


@dataclass(frozen=True)
class CoefficientTriple:
    """Coefficients at t**0, t**1, t**2 of one heat-trace contribution.

    ``exact`` optionally holds, per coefficient, a mapping from the curvature
    monomials ``"1"``, ``"K"``, ``"K^2"``, ``"lapK"`` to rational factors.
    """

    c0: float
    c1: float
    c2: float
    kind: Kind
    source: Source = Source.CLOSED_FORM
    exact: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "source", Source(self.source))

    def as_tuple(self):
        return (self.c0, self.c1, self.c2)

    def __iter__(self):
        return iter(self.as_tuple())


@dataclass(frozen=True)
class SeriesValue:
    """A truncated power series evaluated at one or more radii.

    ``coefficients`` maps each power to its coefficient so that
    ``value == sum(c * r**p)``.
    """

    value: object
    order: int
    remainder_exponent: int
    coefficients: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.remainder_exponent <= self.order:
            raise InputError("remainder exponent must exceed the truncation order")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class ConjecturalValue:
    """A number produced by a formula that is conjectured, not proved."""

    value: float
    source: Source = Source.CONJECTURE

    def __float__(self):
        return self.value


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _dtype(*xs):
    return np.result_type(*(np.asarray(x) for x in xs), np.float64).type


def _unit(u, name="u"):
    u = np.asarray(u)
    if u.shape != (2,):
        raise InputError(f"{name} must be a 2-vector")
    if abs(float(u[0]) ** 2 + float(u[1]) ** 2 - 1.0) > _UNIT_TOL:
        raise InputError(f"{name} is not a unit vector: |{name}|^2 = {float(u @ u)}")
    return u


def _series(coeffs, r, order, remainder):
    """Evaluate sum(c * r**p) in Horner form, highest power first."""
    dt = _dtype(r, *coeffs.values())
    r = np.asarray(r, dtype=dt)
    value = np.zeros_like(r)
    for p in range(max(coeffs), -1, -1):
        value = value * r + dt(coeffs.get(p, 0))
    if value.ndim == 0:
        value = value[()]
    return SeriesValue(value, order, remainder, coeffs)


def _check_order(k):
    if isinstance(k, bool) or int(k) != k:
        raise InputError(f"order k must be an integer, got {k!r}")
    k = int(k)
    if k < 2:
        raise InputError(f"order k must be >= 2, got {k}")
    return k


def _wedge2(x, y):
    w = x[0] * y[1] - x[1] * y[0]
    return w * w


# ---------------------------------------------------------------------------
# expansions along a single geodesic
# ---------------------------------------------------------------------------

def ell_theta_series(jet: CurvatureJet, u, r):
    """Jacobi-field length ell_u(r) through r**5 and density theta_u(r) through r**4."""
    u = _unit(u)
    dt = _dtype(u, r)
    K = dt(jet.K)
    dKu = dt(jet.grad_dot(u))
    Huu = dt(jet.hess_form(u, u))
    c5 = K * K / dt(120) - Huu / dt(40)
    ell = {1: dt(1), 3: -K / dt(6), 4: -dKu / dt(12), 5: c5}
    theta = {0: dt(1), 2: -K / dt(6), 3: -dKu / dt(12), 4: c5}
    return _series(ell, r, 5, 6), _series(theta, r, 4, 5)


def u0_series(jet: CurvatureJet, u, r):
    """u0(p, exp_p(r u)) = theta_u(r)**(-1/2) through r**4."""
    u = _unit(u)
    dt = _dtype(u, r)
    K = dt(jet.K)
    coeffs = {0: dt(1), 2: K / dt(12), 3: dt(jet.grad_dot(u)) / dt(24),
              4: K * K / dt(160) + dt(jet.hess_form(u, u)) / dt(80)}
    return _series(coeffs, r, 4, 5)


def u1_series(jet: CurvatureJet, u, r):
    """First heat-kernel coefficient u1(p, exp_p(r u)) through r**2."""
    u = _unit(u)
    dt = _dtype(u, r)
    K = dt(jet.K)
    coeffs = {0: K / dt(3), 1: dt(jet.grad_dot(u)) / dt(6),
              2: K * K / dt(30) - dt(jet.lapK) / dt(120) + dt(jet.hess_form(u, u)) / dt(20)}
    return _series(coeffs, r, 2, 3)


def u2_diagonal(jet: CurvatureJet):
    """Second heat-kernel coefficient on the diagonal: K**2/15 - lapK/15."""
    return float(Fraction(1, 15) * (Fraction(jet.K) ** 2 - Fraction(jet.lapK)))


# ---------------------------------------------------------------------------
# distance expansions
# ---------------------------------------------------------------------------

def dist2_series(jet: CurvatureJet, x, y, components=False, validity_radius=None):
    """Squared distance between exp_p(x) and exp_p(y) through total order six.

    With ``components=True`` a dict of the homogeneous Taylor parts
    ``F2, F3, F4, F22, F5, F32, F23, F6, F42, F33, F24`` is returned
    instead (Fkl is k-linear in x and l-linear in y).
    """
    dt = _dtype(x, y)
    x = np.asarray(x, dtype=dt)
    y = np.asarray(y, dtype=dt)
    if validity_radius is not None:
        rr = float(x @ x + y @ y) ** 0.5
        if rr > validity_radius:
            warnings.warn(f"|(x, y)| = {rr:.3g} exceeds the validity radius "
                          f"{validity_radius:.3g} of the expansion", stacklevel=2)
    K = dt(jet.K)
    W = _wedge2(x, y)
    d = x - y
    F2 = d @ d
    F22 = -K / dt(3) * W
    F32 = -dt(jet.grad_dot(x)) / dt(12) * W
    F23 = -dt(jet.grad_dot(y)) / dt(12) * W
    F42 = W * (-K * K / dt(45) * (x @ x) - dt(jet.hess_form(x, x)) / dt(60))
    F24 = W * (-K * K / dt(45) * (y @ y) - dt(jet.hess_form(y, y)) / dt(60))
    F33 = W * (dt(4) * K * K / dt(45) * (x @ y) - dt(jet.hess_form(x, y)) / dt(60))
    if components:
        zero = dt(0)
        return {"F2": F2, "F3": zero, "F4": F22, "F22": F22,
                "F5": F32 + F23, "F32": F32, "F23": F23,
                "F6": F42 + F33 + F24, "F42": F42, "F33": F33, "F24": F24,
                "F31": zero, "F13": zero, "F40": zero, "F04": zero}
    value = F2 + F22 + (F32 + F23) + (F42 + F33 + F24)
    return SeriesValue(value, 6, 7)


def dist2_series_gradient(jet: CurvatureJet, x, y):
    """Gradient in x (euclidean, in the frame at p) of :func:`dist2_series`."""
    dt = _dtype(x, y)
    x = np.asarray(x, dtype=dt)
    y = np.asarray(y, dtype=dt)
    K = dt(jet.K)
    g = np.asarray(jet.gradK, dtype=dt)
    H = np.asarray(jet.hessK, dtype=dt)
    w = x[0] * y[1] - x[1] * y[0]
    W = w * w
    dW = dt(2) * w * np.array([y[1], -y[0]], dtype=dt)
    s = x + y
    quad = (-K * K / dt(45) * (x @ x - dt(4) * (x @ y) + y @ y)
            - (x @ H @ x + x @ H @ y + y @ H @ y) / dt(60))
    dquad = (-K * K / dt(45) * (dt(2) * x - dt(4) * y)
             - (dt(2) * (H @ x) + H @ y) / dt(60))
    lin = -K / dt(3) - (g @ s) / dt(12)
    return dt(2) * (x - y) + lin * dW - g / dt(12) * W + quad * dW + dquad * W


def dist_pair_series(jet: CurvatureJet, u, v, r):
    """dist(exp_p(r u), exp_p(r v)) through r**6 for distinct unit vectors u, v."""
    u = _unit(u, "u")
    v = _unit(v, "v")
    dt = _dtype(u, v, r)
    u = u.astype(dt)
    v = v.astype(dt)
    diff = u - v
    C2 = diff @ diff
    if C2 < dt(1e-24):
        raise InputError("u and v coincide; the expansion divides by |u - v|")
    C = np.sqrt(C2)
    cos = u @ v
    s2 = _wedge2(u, v)
    K = dt(jet.K)
    dK = dt(jet.grad_dot(u + v))
    H3 = dt(jet.hess_form(u, u) + jet.hess_form(u, v) + jet.hess_form(v, v))
    coeffs = {
        1: C,
        3: -s2 / (dt(6) * C) * K,
        4: -s2 / (dt(24) * C) * dK,
        5: -((s2 * s2 / (dt(72) * C ** 3) + s2 * (dt(2) - dt(4) * cos) / (dt(90) * C)) * K * K
             + s2 / (dt(120) * C) * H3),
        6: -s2 * s2 / (dt(144) * C ** 3) * K * dK,
    }
    return _series(coeffs, r, 6, 7)


def _rotation_geometry(phi, dt):
    """(C, cos phi, sin**2 phi) in precision ``dt``."""
    if isinstance(phi, AngleData):
        if phi.turns is not None:
            half = dt(np.pi) * dt(phi.turns.numerator) / dt(phi.turns.denominator) / dt(2)
        else:
            half = dt(phi.phi) / dt(2)
    else:
        half = dt(phi) / dt(2)
    sh = np.sin(half)
    ch = np.cos(half)
    C = dt(2) * abs(sh)
    cos = ch * ch - sh * sh
    s2 = (dt(2) * sh * ch) ** 2
    return C, cos, s2


def _angle(phi):
    if isinstance(phi, AngleData):
        return phi
    phi = float(phi)
    if not 0.0 < phi <= math.pi:
        raise InputError(f"rotation angle {phi} outside (0, pi]")
    return AngleData(phi)


def du_series(jet: CurvatureJet, phi, r, unchecked=False):
    """dist(exp_p(r u), exp_p(r D^phi u)) through r**5 at a symmetric point."""
    ang = _angle(phi)
    check_rotation_symmetry(jet, ang.phi, unchecked)
    dt = _dtype(r)
    if ang.is_half_turn:
        return _series({1: dt(2)}, r, 6, 7)
    C, cos, s2 = _rotation_geometry(ang, dt)
    K = dt(jet.K)
    lap = dt(jet.lapK)
    coeffs = {
        1: C,
        3: -s2 / (dt(6) * C) * K,
        5: -((s2 * s2 / (dt(72) * C ** 3) + s2 * (dt(2) - dt(4) * cos) / (dt(90) * C)) * K * K
             - s2 * (dt(2) + cos) / (dt(240) * C) * lap),
    }
    return _series(coeffs, r, 6, 7)


def offdiag_u_series(jet: CurvatureJet, phi, u, d, unchecked=False):
    """u0, u1, u2 between exp_p(r u) and exp_p(r D^phi u) as series in d = d_u(r)."""
    ang = _angle(phi)
    check_rotation_symmetry(jet, ang.phi, unchecked)
    u = _unit(u)
    dt = _dtype(u, d)
    C2 = dt(ang.C) ** 2
    K = dt(jet.K)
    lap = dt(jet.lapK)
    Huu = dt(jet.hess_form(u, u))
    u0 = {0: dt(1), 2: K / dt(12),
          4: Huu / (dt(24) * C2) + K * K / dt(160) - Huu / dt(120)}
    u1 = {0: K / dt(3),
          2: Huu / (dt(6) * C2) + K * K / dt(30) - Huu / dt(30) - lap / dt(120)}
    u2 = {0: K * K / dt(15) - lap / dt(15)}
    return _series(u0, d, 4, 5), _series(u1, d, 2, 3), _series(u2, d, 0, 1)


# ---------------------------------------------------------------------------
# heat coefficients
# ---------------------------------------------------------------------------

def _frozen(*parts):
    """Read-only monomial tables, safe to share from a cache."""
    return tuple(MappingProxyType(p) for p in parts)


@lru_cache(maxsize=4096)
def _rotation(cls, j, k):
    return cls(0.0, Fraction(2 * j, k))


@lru_cache(maxsize=256)
def _b_exact(c2):
    return _frozen({"1": 1 / c2}, {"K": 2 / c2**2},
                   {"K^2": 12 / c2**3 - 2 / c2**2, "lapK": -2 / c2**3})


def _ratio(x):
    try:
        return x.as_integer_ratio()
    except AttributeError:
        return Fraction(x).as_integer_ratio()


def _combine(exact, K, lap):
    """Evaluate rational monomial coefficients exactly, converting once.

    Floats are dyadic rationals, so every product and sum is done on integer
    numerators and denominators; int / int true division rounds correctly.
    """
    kn, kd = _ratio(K)
    monomials = {"1": (1, 1), "K": (kn, kd), "K^2": (kn * kn, kd * kd), "lapK": _ratio(lap)}
    out = []
    for part in exact:
        num, den = 0, 1
        for m, c in part.items():
            a, b = monomials[m]
            n2, d2 = c.numerator * a, c.denominator * b
            num, den = num * d2 + n2 * den, den * d2
        out.append(num / den)
    return tuple(out)


def b_coeffs(jet: CurvatureJet, phi, unchecked=False):
    """Coefficients b0, b1, b2 of the twisted trace of a rotation by phi."""
    ang = _angle(phi)
    check_rotation_symmetry(jet, ang.phi, unchecked)
    c2 = ang.c_squared_exact
    if c2 is not None:
        exact = _b_exact(c2)
        return CoefficientTriple(*_combine(exact, jet.K, jet.lapK), Kind.ROTATION_B,
                                 Source.CLOSED_FORM, exact)
    C2 = ang.C ** 2
    K = jet.K
    b0 = 1.0 / C2
    b1 = 2.0 * K / C2**2
    b2 = (12.0 / C2**3 - 2.0 / C2**2) * K * K - 2.0 / C2**3 * jet.lapK
    return CoefficientTriple(b0, b1, b2, Kind.ROTATION_B)


@lru_cache(maxsize=256)
def _cone_exact(k):
    k = Fraction(k)
    p1 = k - 1 / k
    p3 = k**3 - 1 / k
    p5 = k**5 - 1 / k
    return _frozen({"1": p1 / 12},
                   {"K": p3 / 360 + p1 / 36},
                   {"K^2": p5 / 2520 + p3 / 720 + p1 / 180,
                    "lapK": -(p5 / 15120 + p3 / 1440 + p1 / 180)})


def cone_coeffs(jet: CurvatureJet, k, unchecked=False):
    """Heat-trace contribution a0, a1, a2 of an orbisurface cone point of order k."""
    k = _check_order(k)
    check_rotation_symmetry(jet, 2.0 * math.pi / k, unchecked)
    exact = _cone_exact(k)
    return CoefficientTriple(*_combine(exact, jet.K, jet.lapK), Kind.CONE_A,
                             Source.CLOSED_FORM, exact)


def _corner_gamma_form(jet, gamma):
    """c0, c1, c2 written in the angle gamma; established only for gamma = pi/k."""
    pi = math.pi

    def ratio(m):
        return (pi**m - gamma**m) / (gamma ** (m - 1) * pi)

    c0 = ratio(2) / 24
    c1 = (ratio(4) / 720 + ratio(2) / 72) * jet.K
    c2 = ((ratio(6) / 5040 + ratio(4) / 1440 + ratio(2) / 360) * jet.K**2
          - (ratio(6) / 30240 + ratio(4) / 2880 + ratio(2) / 360) * jet.lapK)
    return c0, c1, c2


def corner_coeffs(jet: CurvatureJet, k, unchecked=False):
    """Corner contribution c0, c1, c2 of an interior angle pi/k (half the cone values)."""
    cone = cone_coeffs(jet, k, unchecked)
    exact = tuple({m: c / 2 for m, c in part.items()} for part in cone.exact)
    values = _combine(exact, jet.K, jet.lapK)
    alt = _corner_gamma_form(jet, math.pi / k)
    scale = max(1.0, abs(jet.K) ** 2, abs(jet.lapK))
    for a, b in zip(values, alt):
        if abs(a - b) > 1e-11 * max(abs(a), scale):
            raise AssertionError(f"gamma-form {alt} disagrees with order-k form {values}")
    return CoefficientTriple(*values, Kind.CORNER_C, Source.CLOSED_FORM, exact)


def c2_general_conjecture(jet: CurvatureJet, gamma, unchecked=False):
    """Conjectured t**2 corner coefficient for an arbitrary angle gamma in (0, 2pi].

    Requires the Hessian of K to be a multiple of the metric.  The value is
    wrapped in :class:`ConjecturalValue` so it cannot be mistaken for a
    proved coefficient.
    """
    gamma = float(gamma)
    if not 0.0 < gamma <= 2.0 * math.pi:
        raise InputError(f"gamma={gamma} outside (0, 2pi]")
    if not unchecked:
        _check_isotropic_hessian(jet, SYMMETRY_RTOL * jet._scale())
    return ConjecturalValue(_corner_gamma_form(jet, gamma)[2])


def kac_corner(gamma):
    """Angle contribution (pi**2 - gamma**2) / (24 gamma pi) to a flat polygon heat trace."""
    gamma = float(gamma)
    if not 0.0 < gamma <= 2.0 * math.pi:
        raise InputError(f"gamma={gamma} outside (0, 2pi]")
    return (math.pi**2 - gamma**2) / (24.0 * gamma * math.pi)


def sine_power_sums(k, m):
    """Closed form of sum_{j=1}^{k-1} sin(j pi / k)**(-2m) for m in {1, 2, 3}."""
    k = _check_order(k)
    k2 = Fraction(k * k)
    if m == 1:
        s = (k2 - 1) / 3
    elif m == 2:
        s = (k2**2 - 1) / 45 + 2 * (k2 - 1) / 9
    elif m == 3:
        s = 2 * (k2**3 - 1) / 945 + (k2**2 - 1) / 45 + 8 * (k2 - 1) / 45
    else:
        raise InputError(f"m must be 1, 2 or 3, got {m!r}")
    return float(s)
