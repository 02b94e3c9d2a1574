"""Surfaces of revolution dr^2 + f(r)^2 dtheta^2 as a numerical test bed.

A profile is stored through ``q(sigma) = f(r) / r`` written as a power
series in ``sigma = r**2``; every curvature quantity is then a rational
function of ``sigma`` without removable singularities at the vertex.

Geodesics are integrated in Cartesian normal coordinates ``x = r (cos theta,
sin theta)`` at the vertex, where the metric reads::

    g = A(sigma) |dx|^2 + B(sigma) (x . dx)^2,   A = q^2,  B = (1 - q^2) / sigma,

so the vertex is an ordinary point.  The integrator is a Gragg-Bulirsch-Stoer
extrapolation scheme running in ``numpy.longdouble``, which keeps the
geodesic distance accurate enough for sixth-order remainder fits.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .errors import ConvexityError, DomainError, InputError, ProfileError
from .expansions import CurvatureJet

LD = np.longdouble
_LD_EPS = float(np.finfo(LD).eps)


class ProfileKind(str, enum.Enum):
    FLAT = "flat"
    SPHERE = "sphere"
    HYPERBOLIC = "hyperbolic"
    POLY_ODD = "poly_odd"


def _ld(x):
    """Exact Fraction (or int) to longdouble, correctly rounded via a decimal string."""
    x = Fraction(x)
    if x == 0:
        return LD(0)
    with localcontext() as ctx:
        ctx.prec = 40
        return LD(str(Decimal(x.numerator) / Decimal(x.denominator)))


def _horner(coeffs, s):
    acc = LD(0) * s
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def _poly_deriv(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:] or [Fraction(0)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@dataclass(frozen=True)
class SurfacePointPolar:
    """A point in geodesic polar coordinates about the vertex."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise InputError(f"polar radius must be non-negative, got {self.r}")

    def cartesian(self):
        r = LD(self.r)
        th = LD(self.theta)
        return np.array([r * np.cos(th), r * np.sin(th)], dtype=LD)

    @classmethod
    def from_cartesian(cls, x):
        r = float(np.hypot(float(x[0]), float(x[1])))
        th = float(np.arctan2(float(x[1]), float(x[0]))) if r > 0 else 0.0
        return cls(r, th)


@dataclass(frozen=True)
class GeodesicState:
    """Position (r, theta), polar velocity (rdot, thetadot) and arc length s."""

    r: float
    theta: float
    rdot: float
    thetadot: float
    s: float


class RotationalProfile:
    """Rotationally symmetric metric dr^2 + f(r)^2 dtheta^2 about a vertex.

    Use the constructors :meth:`flat`, :meth:`sphere`, :meth:`hyperbolic`
    and :meth:`poly_odd`.  ``coefficients`` are the odd Taylor coefficients
    ``a1 = 1, a3, a5, ...`` of f.
    """

    _SERIES_TERMS = 40

    def __init__(self, kind, coefficients, valid_radius, K=None, convexity_radius=None):
        self.kind = ProfileKind(kind)
        self.K = None if K is None else float(K)
        self.coefficients = tuple(Fraction(c) for c in coefficients)
        if self.coefficients[0] != 1:
            raise ProfileError("profile must satisfy f'(0) = 1 (a1 = 1)")
        self.valid_radius = float(valid_radius)
        if not self.valid_radius > 0:
            raise ProfileError("valid_radius must be positive")
        q = list(self.coefficients)
        self._q = [_ld(c) for c in q]
        self._dq = [_ld(c) for c in _poly_deriv(q)]
        self._ddq = [_ld(c) for c in _poly_deriv(_poly_deriv(q))]
        self._d3q = [_ld(c) for c in _poly_deriv(_poly_deriv(_poly_deriv(q)))]
        self._d4q = [_ld(c) for c in _poly_deriv(_poly_deriv(_poly_deriv(_poly_deriv(q))))]
        q2 = _poly_mul(q, q)
        b = [-c for c in q2[1:]] or [Fraction(0)]
        self._A = [_ld(c) for c in q2]
        self._dA = [_ld(c) for c in _poly_deriv(q2)]
        self._B = [_ld(c) for c in b]
        self._dB = [_ld(c) for c in _poly_deriv(b)]
        rr = np.linspace(0.0, self.valid_radius, 2001)[1:]
        if np.any(self.f(rr) <= 0):
            raise ProfileError("f(r) must be positive on (0, valid_radius]")
        if convexity_radius is None:
            if self.kind is ProfileKind.SPHERE:
                convexity_radius = 0.8 * math.pi / (2.0 * math.sqrt(self.K))
            else:
                convexity_radius = 0.4 * self.valid_radius
        self.convexity_radius = min(float(convexity_radius), self.valid_radius)

    # -- constructors -----------------------------------------------------

    @classmethod
    def flat(cls, valid_radius=10.0, **kw):
        return cls(ProfileKind.FLAT, [1], valid_radius, K=0.0, **kw)

    @classmethod
    def sphere(cls, K=1.0, valid_radius=None, **kw):
        K = float(K)
        if K <= 0:
            raise ProfileError("sphere requires K > 0")
        if valid_radius is None:
            valid_radius = 0.9 * math.pi / math.sqrt(K)
        if valid_radius >= math.pi / math.sqrt(K):
            raise ProfileError("sphere valid_radius must stay below the antipode pi/sqrt(K)")
        Kf = Fraction(K)
        coeffs = [(-Kf) ** j / math.factorial(2 * j + 1) for j in range(cls._SERIES_TERMS)]
        return cls(ProfileKind.SPHERE, coeffs, valid_radius, K=K, **kw)

    @classmethod
    def hyperbolic(cls, K=-1.0, valid_radius=None, **kw):
        K = float(K)
        if K >= 0:
            raise ProfileError("hyperbolic requires K < 0")
        if valid_radius is None:
            valid_radius = 2.0 / math.sqrt(-K)
        Kf = Fraction(K)
        coeffs = [(-Kf) ** j / math.factorial(2 * j + 1) for j in range(cls._SERIES_TERMS)]
        return cls(ProfileKind.HYPERBOLIC, coeffs, valid_radius, K=K, **kw)

    @classmethod
    def poly_odd(cls, coefficients, valid_radius=None, **kw):
        """f(r) = r + a3 r^3 + a5 r^5 + ...; ``coefficients`` = (a3, a5, ...) or (1, a3, ...)."""
        c = [Fraction(x) for x in coefficients]
        if not c or c[0] != 1:
            c = [Fraction(1)] + c
        if valid_radius is None:
            valid_radius = _default_valid_radius(c)
        return cls(ProfileKind.POLY_ODD, c, valid_radius, **kw)

    @classmethod
    def bump(cls, delta, **kw):
        """Perturbed unit sphere f = r - r^3/6 + (1 + delta) r^5/120: K(0) = 1, lapK(0) = 2 delta/3."""
        return cls.poly_odd([Fraction(-1, 6), (1 + Fraction(delta)) / 120], **kw)

    def __repr__(self):
        extra = f", K={self.K}" if self.K is not None else ""
        return f"RotationalProfile({self.kind.value}{extra}, valid_radius={self.valid_radius})"

    def spec(self):
        """JSON-ready description of the profile."""
        d = {"kind": self.kind.value, "valid_radius": self.valid_radius}
        if self.kind in (ProfileKind.SPHERE, ProfileKind.HYPERBOLIC):
            d["K"] = self.K
        if self.kind is ProfileKind.POLY_ODD:
            d["coeffs"] = [str(c) for c in self.coefficients]
        return d

    # -- radial functions ---------------------------------------------------

    def _check(self, r):
        r = np.asarray(r)
        if np.any(r < 0) or np.any(r > self.valid_radius * (1 + 1e-12)):
            raise DomainError(f"r outside [0, valid_radius={self.valid_radius}]",
                              exit_parameter=float(np.max(r)))
        return r

    def q(self, sigma):
        return _horner(self._q, sigma)

    def f(self, r):
        r = np.asarray(r, dtype=np.result_type(r, np.float64))
        return r * self.q(r * r).astype(r.dtype)

    def fprime(self, r):
        s = np.asarray(r) ** 2
        return self.q(s) + 2 * s * _horner(self._dq, s)

    def _kappa_parts(self, s):
        q = _horner(self._q, s)
        q1 = _horner(self._dq, s)
        q2 = _horner(self._ddq, s)
        q3 = _horner(self._d3q, s)
        q4 = _horner(self._d4q, s)
        N = -(6 * q1 + 4 * s * q2)
        N1 = -(10 * q2 + 4 * s * q3)
        N2 = -(14 * q3 + 4 * s * q4)
        kap = N / q
        kap1 = (N1 * q - N * q1) / q**2
        kap2 = (N2 * q - N * q2) / q**2 - 2 * q1 * (N1 * q - N * q1) / q**3
        return kap, kap1, kap2

    def curvature(self, r):
        """Gauss curvature K(r) = -f''(r) / f(r), regular at the vertex."""
        r = self._check(r)
        if self.kind is not ProfileKind.POLY_ODD:
            return np.zeros_like(np.asarray(r, dtype=float)) + self.K if np.ndim(r) else self.K
        s = np.asarray(r, dtype=LD) ** 2
        out = self._kappa_parts(s)[0]
        return out.astype(float) if np.ndim(out) else float(out)

    def curvature_ld(self, r):
        """Curvature in extended precision (used by the Jacobi integrator)."""
        if self.kind is not ProfileKind.POLY_ODD:
            return LD(self.K)
        return self._kappa_parts(LD(r) ** 2)[0]

    def curvature_derivatives(self, r):
        """(K, dK/dr, d^2K/dr^2) at radius r."""
        r = float(self._check(r))
        if self.kind is not ProfileKind.POLY_ODD:
            return self.K, 0.0, 0.0
        s = LD(r) ** 2
        kap, kap1, kap2 = self._kappa_parts(s)
        return float(kap), float(2 * LD(r) * kap1), float(2 * kap1 + 4 * s * kap2)

    # -- metric in normal coordinates -----------------------------------

    def metric_AB(self, sigma):
        """(A, B) with g = A |dx|^2 + B (x . dx)^2 at |x|^2 = sigma."""
        return _horner(self._A, sigma), _horner(self._B, sigma)

    def _geodesic_rhs(self, y):
        x0, x1, v0, v1 = y
        s = x0 * x0 + x1 * x1
        A = _horner(self._A, s)
        dA = _horner(self._dA, s)
        B = _horner(self._B, s)
        dB = _horner(self._dB, s)
        vv = v0 * v0 + v1 * v1
        xv = x0 * v0 + x1 * v1
        c = dA * vv - dB * xv * xv - B * vv
        R0 = c * x0 - 2 * dA * xv * v0
        R1 = c * x1 - 2 * dA * xv * v1
        xR = x0 * R0 + x1 * R1
        return np.array([v0, v1, (R0 - B * xR * x0) / A, (R1 - B * xR * x1) / A], dtype=LD)

    def speed2(self, x, v):
        s = x[0] * x[0] + x[1] * x[1]
        A, B = self.metric_AB(s)
        xv = x[0] * v[0] + x[1] * v[1]
        return A * (v[0] * v[0] + v[1] * v[1]) + B * xv * xv


def _default_valid_radius(c):
    """0.9 times the first positive zero of f (capped at 3), for poly_odd profiles."""
    roots = np.roots([float(x) for x in reversed(c)])
    sig = [z.real for z in roots if abs(z.imag) < 1e-12 and z.real > 0]
    cap = 3.0
    if sig:
        cap = min(cap, 0.9 * math.sqrt(min(sig)))
    return cap


# ---------------------------------------------------------------------------
# Gragg-Bulirsch-Stoer integration in extended precision
# ---------------------------------------------------------------------------

_GBS_STEPS = (2, 4, 6, 8, 10, 12, 14, 16)


def _midpoint(f, y, H, n):
    h = H / n
    z0 = y
    z1 = y + h * f(y)
    for _ in range(n - 1):
        z0, z1 = z1, z0 + 2 * h * f(z1)
    return (z0 + z1 + h * f(z1)) / 2


def _gbs_step(f, y, H):
    """One extrapolated macro step; returns (y_new, error estimate)."""
    T = []
    for j, n in enumerate(_GBS_STEPS):
        T.append(_midpoint(f, y, H, n))
        for i in range(j - 1, -1, -1):
            ratio = LD(_GBS_STEPS[j] ** 2) / LD(_GBS_STEPS[i] ** 2)
            T[i] = T[i + 1] + (T[i + 1] - T[i]) / (ratio - 1)
    err = float(np.max(np.abs(T[0] - T[1])))
    return T[0], err


def gbs_integrate(f, y0, length, tol=1e-18, h0=None, monitor=None):
    """Integrate y' = f(y) over [0, length] with adaptive extrapolated steps.

    ``monitor(s, y)`` is called after each accepted step and may raise to
    abort.  Returns the final state as a longdouble array.
    """
    y = np.asarray(y0, dtype=LD)
    length = LD(length)
    if length == 0:
        return y
    s = LD(0)
    H = LD(h0) if h0 is not None else length
    order = 2 * len(_GBS_STEPS) - 1
    for _ in range(100000):
        H = min(H, length - s)
        y_new, err = _gbs_step(f, y, H)
        scale = max(1.0, float(np.max(np.abs(y_new))))
        tol_abs = max(tol, 4 * _LD_EPS) * scale
        if err <= tol_abs or H < 1e-12 * float(length):
            s = s + H
            y = y_new
            if monitor is not None:
                monitor(s, y)
            if s >= length:
                return y
        fac = 4.0 if err == 0 else min(4.0, max(0.2, 0.8 * (tol_abs / err) ** (1.0 / order)))
        H = H * LD(fac)
    raise RuntimeError("geodesic integration did not finish")


# ---------------------------------------------------------------------------
# jets, geodesics and distances
# ---------------------------------------------------------------------------

def curvature(profile: RotationalProfile, r):
    """Gauss curvature of ``profile`` at radius ``r``."""
    return profile.curvature(r)


def vertex_jet(profile: RotationalProfile) -> CurvatureJet:
    """Curvature jet at the vertex: dK = 0 and Hessian = -(lapK/2) * identity."""
    if profile.kind is not ProfileKind.POLY_ODD:
        return CurvatureJet.symmetric(profile.K, 0.0)
    kap, kap1, _ = profile._kappa_parts(LD(0))
    return CurvatureJet.symmetric(float(kap), float(-4 * kap1))


def point_jet(profile: RotationalProfile, r0) -> CurvatureJet:
    """Curvature jet at the point (r0, 0) in the frame (d/dr, f^-1 d/dtheta)."""
    r0 = float(r0)
    if r0 <= 0:
        raise InputError("point_jet needs r0 > 0; use vertex_jet at the vertex")
    if r0 >= profile.valid_radius:
        raise DomainError(f"r0={r0} beyond valid_radius", exit_parameter=r0)
    K, K1, K2 = profile.curvature_derivatives(r0)
    ff = float(profile.fprime(LD(r0)) / (LD(r0) * profile.q(LD(r0) ** 2)))
    return CurvatureJet(K, (K1, 0.0), ((K2, 0.0), (0.0, ff * K1)))


def _frame(profile, x):
    """Orthonormal frame (E1, E2) = (radial, angular) at the Cartesian point x."""
    r = np.hypot(x[0], x[1])
    if r == 0:
        return np.array([1, 0], dtype=LD), np.array([0, 1], dtype=LD)
    e_r = x / r
    e_t = np.array([-e_r[1], e_r[0]], dtype=LD)
    A, _ = profile.metric_AB(r * r)
    return e_r, e_t / np.sqrt(A)


def _shoot_cartesian(profile, X, V, length=1, limit=None):
    limit = profile.valid_radius if limit is None else limit
    lim2 = LD(limit) ** 2

    def monitor(s, y):
        if y[0] * y[0] + y[1] * y[1] > lim2:
            raise DomainError("geodesic left the valid domain", exit_parameter=float(s))

    y0 = np.concatenate([np.asarray(X, dtype=LD), np.asarray(V, dtype=LD)])
    return gbs_integrate(profile._geodesic_rhs, y0, length, monitor=monitor)


def geodesic_shoot(profile: RotationalProfile, start: SurfacePointPolar, direction, s,
                   return_state=False):
    """Endpoint of the unit-speed geodesic of length ``s`` leaving ``start``.

    ``direction`` is the angle from the outward meridian d/dr towards
    d/dtheta; at the vertex it is the absolute polar angle of the ray.
    """
    X = start.cartesian()
    e1, e2 = _frame(profile, X)
    if start.r == 0:
        e1 = np.array([1, 0], dtype=LD)
        e2 = np.array([0, 1], dtype=LD)
        a = LD(direction)
    else:
        a = LD(direction)
    V = np.cos(a) * e1 + np.sin(a) * e2
    y = _shoot_cartesian(profile, X, V, s)
    end = SurfacePointPolar.from_cartesian(y[:2])
    if not return_state:
        return end
    x, v = y[:2], y[2:]
    r = np.hypot(x[0], x[1])
    rdot = (x[0] * v[0] + x[1] * v[1]) / r
    thdot = (x[0] * v[1] - x[1] * v[0]) / (r * r)
    return GeodesicState(float(r), end.theta, float(rdot), float(thdot), float(s))


def clairaut_invariant(profile: RotationalProfile, state: GeodesicState):
    """f(r)^2 * dtheta/ds, constant along every geodesic of a surface of revolution."""
    return float(profile.f(LD(state.r))) ** 2 * state.thetadot


def exp_map(profile: RotationalProfile, v, base_r=0.0):
    """exp at the point (base_r, 0) of the frame vector v = (v_radial, v_angular).

    Returns the Cartesian normal coordinates (about the vertex) as longdouble.
    """
    v = np.asarray(v, dtype=LD)
    X = np.array([LD(base_r), LD(0)], dtype=LD)
    e1, e2 = _frame(profile, X)
    if base_r == 0:
        return v.copy()
    y = _shoot_cartesian(profile, X, v[0] * e1 + v[1] * e2, 1)
    return y[:2]


def geodesic_distance_cartesian(profile: RotationalProfile, Q, W, max_iter=40):
    """Distance between two points given in Cartesian normal coordinates (longdouble)."""
    Q = np.asarray(Q, dtype=LD)
    W = np.asarray(W, dtype=LD)
    cr = profile.convexity_radius
    for P in (Q, W):
        if float(np.hypot(float(P[0]), float(P[1]))) > cr * (1 + 1e-12):
            raise ConvexityError(f"point {P.astype(float)} beyond convexity radius {cr}")
    D = W - Q
    if float(np.max(np.abs(D))) == 0.0:
        return LD(0)
    V = D.copy()
    scale = float(np.max(np.abs(D)))
    limit = profile.valid_radius

    def endpoint(V):
        try:
            return _shoot_cartesian(profile, Q, V, 1, limit)[:2]
        except DomainError as exc:
            raise ConvexityError(f"shooting left the domain: {exc}") from exc

    # Newton on the initial velocity; the Jacobian is refreshed only while the
    # iterate is still far away, later steps reuse it (chord iteration).
    J = None
    prev = math.inf
    floor = 64 * _LD_EPS * max(scale, float(np.max(np.abs(W))))
    for it in range(max_iter):
        E = endpoint(V)
        res = E - W
        size = float(np.max(np.abs(res)))
        if size <= floor or (size < 1e3 * floor and size > 0.5 * prev):
            break
        prev = size
        if J is None or it < 2:
            h = LD(1e-9) * LD(scale)
            J = np.empty((2, 2), dtype=LD)
            for i in range(2):
                dV = V.copy()
                dV[i] += h
                J[:, i] = (endpoint(dV) - E) / h
            det = J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
            if det == 0:
                raise ConvexityError("singular shooting Jacobian (conjugate point?)")
        step = np.array([J[1, 1] * res[0] - J[0, 1] * res[1],
                         -J[1, 0] * res[0] + J[0, 0] * res[1]], dtype=LD) / det
        V = V - step
    else:
        raise ConvexityError("geodesic boundary value solve did not converge")
    return np.sqrt(profile.speed2(Q, V))


def geodesic_distance(profile: RotationalProfile, q: SurfacePointPolar, w: SurfacePointPolar):
    """Length of the minimizing geodesic between two points (longdouble)."""
    return geodesic_distance_cartesian(profile, q.cartesian(), w.cartesian())


def jacobi_length(source, u, r):
    """|J(r)| for the normal Jacobi field along the ray from the base point in direction u.

    ``source`` is a :class:`RotationalProfile` (ray from the vertex, K read off
    the profile) or a :class:`CurvatureJet` (K reconstructed as its
    second-order Taylor polynomial along the ray).
    """
    u = np.asarray(u, dtype=float)
    if abs(u @ u - 1.0) > 1e-12:
        raise InputError("u must be a unit vector")
    r = float(r)
    if isinstance(source, RotationalProfile):
        if r > source.valid_radius:
            raise DomainError("r beyond valid_radius", exit_parameter=r)
        if source.kind is ProfileKind.FLAT:
            return LD(r)

        def Kfun(s):
            return source.curvature_ld(s)
    elif isinstance(source, CurvatureJet):
        K0 = LD(source.K)
        K1 = LD(source.grad_dot(u))
        K2 = LD(source.hess_form(u, u)) / 2

        def Kfun(s):
            return K0 + s * (K1 + s * K2)
    else:
        raise InputError("source must be a RotationalProfile or a CurvatureJet")

    def rhs(y):
        return np.array([LD(1), y[2], -Kfun(y[0]) * y[1]], dtype=LD)

    y = gbs_integrate(rhs, np.array([0, 0, 1], dtype=LD), r, h0=min(r, 0.25) if r > 0 else None)
    return y[1]


def _u0_parts(profile, s):
    q = profile.q(s)
    q1 = _horner(profile._dq, s)
    q2 = _horner(profile._ddq, s)
    u0 = q ** -0.5
    us = -0.5 * q ** -1.5 * q1
    uss = 0.75 * q ** -2.5 * q1 * q1 - 0.5 * q ** -1.5 * q2
    lap = -((2 * us + 4 * s * uss) + 2 * (1 + 2 * s * q1 / q) * us)
    return u0, lap


def u1_recursion_oracle(profile: RotationalProfile, u, r, nodes=40):
    """u1(p, exp_p(r u)) at the vertex from the Minakshisundaram-Pleijel recursion.

    Uses u0 = theta^(-1/2) with theta(r) = f(r)/r = q(r^2) and the polar
    Laplacian of this radial function evaluated analytically.  The integral
    over [0, 1] is computed by Gauss-Legendre quadrature.
    """
    r = float(r)
    if r < 0 or r > 0.2 * profile.valid_radius:
        raise DomainError("u1 oracle needs 0 <= r <= 0.2 * valid_radius", exit_parameter=r)
    if profile.kind is ProfileKind.FLAT:
        return 0.0
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * (x + 1.0)
    s = (LD(r) * t.astype(LD)) ** 2
    u0, lap = _u0_parts(profile, s)
    integral = np.sum(w.astype(LD) * lap / u0) / 2
    u0_end, _ = _u0_parts(profile, LD(r) ** 2)
    return float(-u0_end * integral)
