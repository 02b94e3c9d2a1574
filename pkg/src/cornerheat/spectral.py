"""Dirichlet spectra of rotational disks and the heat traces built from them.

On the geodesic disk of radius R about the vertex of a rotational profile,
separation of variables reduces the Dirichlet Laplacian to the radial
problems::

    -(1/f) (f u')' + (nu^2 / f^2) u = lam u,   u(R) = 0,  u regular at 0.

Three independent solvers are provided:

* :func:`radial_spectrum` (default): Chebyshev collocation on [-R, R]
  folded by parity.  Writing ``u = r**mu * v`` with ``mu = nu - floor(nu)``
  makes ``v`` an analytic function of parity ``(-1)**floor(nu)``, so the
  regular-singular vertex needs no special treatment.  Eigenvalues are
  accepted only when two resolutions agree.
* :func:`prufer_count` / :func:`prufer_eigenvalue`: oscillation counting
  with the Pruefer phase, used to certify that no eigenvalue was skipped.
* :func:`fd_spectrum`: a finite-volume matrix with Richardson extrapolation.

Trace sums run in a fixed order (ascending mode, then ascending
eigenvalue), so results are reproducible bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate, linalg, optimize, special

from .errors import InputError, ProfileError, SolverError, TruncationError
from .geometry import LD, ProfileKind, RotationalProfile, _horner

#: relative weight below which eigenvalues are dropped from trace sums
TRACE_CUTOFF = 1e-16
REFUSE_RATIO = 1e-3


@dataclass(frozen=True)
class ModeSpectrum:
    """Dirichlet eigenvalues of one angular order ``nu``.

    All eigenvalues below ``complete_below`` are present.  The remaining
    tail is modelled as ``lam_m ~ alpha * (m + beta)**2`` (``tail_bound_params``
    holds the effective radius ``pi / sqrt(alpha)``, ``alpha`` and ``beta``).
    ``errors`` are absolute error estimates of the eigenvalues (zeros when
    the solver gives none).
    """

    nu: float
    eigenvalues: np.ndarray
    complete_below: float
    tail_bound_params: tuple = (math.nan, math.nan, math.nan)
    errors: np.ndarray | None = None

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float)
        if ev.size and (ev[0] <= 0 or np.any(np.diff(ev) <= 0)):
            raise SolverError(f"eigenvalues of nu={self.nu} are not positive and increasing")
        object.__setattr__(self, "eigenvalues", ev)
        err = np.zeros_like(ev) if self.errors is None else np.asarray(self.errors, dtype=float)
        if err.shape != ev.shape or np.any(err < 0):
            raise SolverError("eigenvalue error estimates must be non-negative, one per eigenvalue")
        object.__setattr__(self, "errors", err)

    @property
    def count(self):
        return int(self.eigenvalues.size)

    def tail(self, t, after=None):
        """Upper estimate of sum_{m > after} exp(-lam_m t) from the Weyl model."""
        after = self.count if after is None else after
        _, alpha, beta = self.tail_bound_params
        if not np.isfinite(alpha):
            return 0.0 if after >= self.count else math.inf
        x = math.sqrt(alpha * t) * (after + beta)
        return 0.5 * math.sqrt(math.pi / (alpha * t)) * special.erfc(x)


@dataclass(frozen=True)
class TraceSample:
    """One sampled trace value.

    ``tail_estimate`` bounds the terms left out of the sum and ``error`` the
    numerical error of the terms kept (from the eigenvalue error estimates).
    """

    t: float
    value: float
    tail_estimate: float = 0.0
    parts: dict | None = field(default=None, compare=False)
    error: float = 0.0

    def __post_init__(self):
        if not self.tail_estimate >= 0 or not self.error >= 0:
            raise InputError("tail_estimate and error must be non-negative")
        if not np.isfinite(self.value):
            raise SolverError(f"non-finite trace value at t={self.t}")


# ---------------------------------------------------------------------------
# Chebyshev collocation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _cheb(N):
    """Chebyshev points on [-1, 1] and the first two differentiation matrices."""
    x = np.cos(np.pi * np.arange(N + 1) / N)
    c = np.r_[2.0, np.ones(N - 1), 2.0] * (-1.0) ** np.arange(N + 1)
    dX = x[:, None] - x[None, :]
    D = np.outer(c, 1.0 / c) / (dX + np.eye(N + 1))
    D = D - np.diag(D.sum(axis=1))
    return x, D, D @ D


def _profile_terms(profile, r):
    s = np.asarray(r, dtype=LD) ** 2
    q = _horner(profile._q, s)
    qp = _horner(profile._dq, s)
    return (q.astype(float), (qp / q).astype(float))


def _collocation_eigs(profile, R, nu, N):
    x, D, D2 = _cheb(N)
    n_par = math.floor(nu)
    mu = nu - n_par
    sign = -1.0 if n_par % 2 else 1.0
    idx = np.arange(1, (N + 1) // 2)
    D1e = D[np.ix_(idx, idx)] + sign * D[np.ix_(idx, N - idx)]
    D2e = D2[np.ix_(idx, idx)] + sign * D2[np.ix_(idx, N - idx)]
    r = R * x[idx]
    q, qlog = _profile_terms(profile, r)
    sigma = r * r
    drift = (1.0 + 2.0 * mu) / r + 2.0 * r * qlog
    pot = nu * nu / (sigma * q * q) - mu * mu / sigma - 2.0 * mu * qlog
    L = -D2e / R**2 - drift[:, None] * D1e / R + np.diag(pot)
    ev = linalg.eigvals(L, overwrite_a=True, check_finite=False)
    good = np.abs(ev.imag) <= 1e-9 * np.abs(ev.real)
    return np.sort(ev.real[good & (ev.real > 0)])


def _check_disk(profile, R):
    if not 0 < R <= profile.valid_radius * (1 + 1e-12):
        raise ProfileError(f"outer radius R={R} must lie in (0, valid_radius={profile.valid_radius}]")


def _weyl_params(ev):
    """Conservative Weyl model sqrt(lam_m) ~ sqrt(alpha) (m + beta), m = 1, 2, ..."""
    n = ev.size
    if n < 2:
        return (math.nan, math.nan, math.nan)
    m = np.arange(1, n + 1)
    tail = slice(n // 2, n) if n >= 4 else slice(0, n)
    slope = np.polyfit(m[tail], np.sqrt(ev[tail]), 1)[0]
    alpha = 0.9 * slope**2
    # anchor the line at the last computed eigenvalue so the model stays below it
    beta = math.sqrt(ev[-1] / alpha) - n
    return (math.pi / math.sqrt(alpha), alpha, beta)


def radial_spectrum(profile: RotationalProfile, R, nu, count=None, tol=1e-9,
                    lam_max=None, method="chebyshev", cross_check=False):
    """Dirichlet eigenvalues of the radial problem of angular order ``nu``.

    Either ``count`` (number of eigenvalues) or ``lam_max`` (all eigenvalues
    below it) must be given.  ``method`` is ``"chebyshev"`` (default),
    ``"prufer"`` or ``"fd"``.  With ``cross_check=True`` the number of
    eigenvalues below the largest returned one is confirmed by Pruefer
    oscillation counting.
    """
    R = float(R)
    nu = float(nu)
    _check_disk(profile, R)
    if nu < 0:
        raise InputError("angular order nu must be non-negative")
    if count is None and lam_max is None:
        raise InputError("give count or lam_max")
    if count is not None and count < 1:
        raise InputError("count must be >= 1")
    if method == "prufer":
        if count is None:
            count = prufer_count(profile, R, nu, lam_max)
        ev = np.array([prufer_eigenvalue(profile, R, nu, m, tol=tol)
                       for m in range(1, count + 1)])
        spec = ModeSpectrum(nu, ev, ev[-1] if count else 0.0, _weyl_params(ev))
    elif method == "fd":
        if count is None:
            count = prufer_count(profile, R, nu, lam_max)
        ev = fd_spectrum(profile, R, nu, count)
        spec = ModeSpectrum(nu, ev, ev[-1], _weyl_params(ev))
    elif method == "chebyshev":
        spec = _chebyshev_spectrum(profile, R, nu, count, tol, lam_max)
    else:
        raise InputError(f"unknown method {method!r}")
    if cross_check and spec.count:
        top = spec.eigenvalues[-1] * (1 + 10 * tol)
        n = prufer_count(profile, R, nu, top)
        if n != spec.count:
            raise SolverError(f"nu={nu}: oscillation count {n} below {top:.6g} "
                              f"disagrees with {spec.count} computed eigenvalues")
    return spec


def _chebyshev_spectrum(profile, R, nu, count, tol, lam_max):
    if lam_max is None:
        # flat-disk estimate of the count-th eigenvalue, then grow if needed
        guess = (math.pi * (count + 0.5 * nu + 1.0) / R) ** 2 * 1.3
        target = guess
    else:
        target = float(lam_max)
    for _ in range(8):
        kmax = math.sqrt(max(target, 1.0)) * R
        N = int(1.3 * kmax + 41)
        N += 1 - N % 2
        attempts = 0
        while True:
            N2 = N + max(40, N // 4)
            N2 += 1 - N2 % 2
            e1 = _collocation_eigs(profile, R, nu, N)
            e2 = _collocation_eigs(profile, R, nu, N2)
            lim = target
            a = e1[e1 < lim]
            b = e2[e2 < lim * (1 + 10 * tol)][: a.size]
            ok = a.size == b.size and np.all(np.abs(a - b) <= tol * b)
            if ok:
                break
            attempts += 1
            if attempts > 4:
                raise SolverError(f"Chebyshev eigenvalues for nu={nu} did not converge "
                                  f"below lam={lim:.4g} (N up to {N2})")
            N = int(N * 1.5) | 1
        ev = b
        # the gap between the two resolutions tracks the rounding error
        # (about 1.4x the true error against Bessel zeros)
        err = np.maximum(np.abs(a - b), 4 * np.finfo(float).eps * b)
        if lam_max is not None or ev.size >= count:
            break
        target *= 2.0
    if count is not None and lam_max is None:
        ev = ev[:count]
        err = err[:count]
        complete = float(ev[-1]) if ev.size else target
    else:
        complete = float(lam_max)
    return ModeSpectrum(nu, ev, complete, _weyl_params(ev), err)


# ---------------------------------------------------------------------------
# Pruefer phase and finite volumes
# ---------------------------------------------------------------------------

def _prufer_phase(profile, R, nu, lam):
    r0 = 1e-6 * R

    def f(r):
        return float(profile.f(np.longdouble(r)))

    def rhs(r, y):
        fr = f(r)
        c, s = math.cos(y[0]), math.sin(y[0])
        return [c * c / fr + (lam * fr - nu * nu / fr) * s * s]

    # leading Frobenius terms u ~ r^nu (1 - lam r^2 / (4 (nu + 1)))
    u = r0**nu * (1 - lam * r0**2 / (4 * (nu + 1)))
    pu = r0 * (nu * r0 ** (nu - 1) if nu > 0 else 0.0) - r0 * (nu + 2) * lam * r0 ** (nu + 1) / (4 * (nu + 1))
    psi0 = math.atan2(u, pu)
    sol = integrate.solve_ivp(rhs, (r0, R), [psi0], method="LSODA", rtol=1e-11, atol=1e-12)
    if not sol.success:
        raise SolverError(f"Pruefer integration failed: {sol.message}")
    return sol.y[0, -1]


def prufer_count(profile: RotationalProfile, R, nu, lam):
    """Number of Dirichlet eigenvalues of order ``nu`` strictly below ``lam``."""
    _check_disk(profile, R)
    psi = _prufer_phase(profile, float(R), float(nu), float(lam))
    return int(math.floor(psi / math.pi))


def prufer_eigenvalue(profile: RotationalProfile, R, nu, m, tol=1e-10):
    """The m-th eigenvalue (m >= 1) by bracketing the Pruefer phase at m*pi."""
    R = float(R)
    nu = float(nu)
    lo = 0.0
    hi = (math.pi * (m + 0.5 * nu + 1) / R) ** 2
    while prufer_count(profile, R, nu, hi) < m:
        lo, hi = hi, 2 * hi
    g = lambda lam: _prufer_phase(profile, R, nu, lam) - m * math.pi  # noqa: E731
    return optimize.brentq(g, lo, hi, xtol=1e-14, rtol=max(tol * 1e-2, 4e-16))


def _fd_once(profile, R, nu, count, n):
    h = R / n
    r = np.arange(n) * h
    rh = (np.arange(n) + 0.5) * h
    fh = profile.f(rh)
    fr = profile.f(r)
    mass = h * fr
    if nu == 0:
        mass[0] = float(integrate.quad(lambda s: profile.f(s), 0.0, 0.5 * h)[0])
        start = 0
    else:
        start = 1
    diag = np.zeros(n)
    off = -fh[:-1] / h
    diag[:-1] += fh[:-1] / h
    diag[1:] += fh[:-1] / h
    diag[-1] += fh[-1] / h
    if nu > 0:
        diag[1:] += h * nu * nu / fr[1:]
    d = diag[start:]
    e = off[start:]
    w = mass[start:]
    sw = 1.0 / np.sqrt(w)
    ev = linalg.eigh_tridiagonal(d * sw * sw, e * sw[:-1] * sw[1:],
                                 select="i", select_range=(0, count - 1), eigvals_only=True)
    return ev


def fd_spectrum(profile: RotationalProfile, R, nu, count, n=2000):
    """First ``count`` eigenvalues from second-order finite volumes, Richardson-extrapolated."""
    _check_disk(profile, float(R))
    a = _fd_once(profile, float(R), float(nu), count, n)
    b = _fd_once(profile, float(R), float(nu), count, 2 * n)
    return (4 * b - a) / 3


# ---------------------------------------------------------------------------
# trace assembly
# ---------------------------------------------------------------------------

def partial_theta(spec: ModeSpectrum, t, force=False):
    """theta_nu(t) = sum_m exp(-lam_m t) with a Weyl tail estimate."""
    t = float(t)
    if not t > 0:
        raise InputError("t must be positive")
    value = float(np.sum(np.exp(-spec.eigenvalues * t)))
    tail = spec.tail(t)
    if not force and tail > REFUSE_RATIO * value:
        need = spec.count
        while spec.tail(t, need) > REFUSE_RATIO * value and need < 10**7:
            need = max(need + 1, int(need * 1.25))
        raise TruncationError(f"tail estimate {tail:.3g} exceeds {REFUSE_RATIO:g} of "
                              f"theta={value:.3g} at t={t:g}", minimal_count=need)
    return TraceSample(t, value, tail)


def disk_area(profile: RotationalProfile, R):
    return 2 * math.pi * integrate.quad(lambda r: float(profile.f(r)), 0.0, float(R))[0]


def lambda_cut(area, t_min):
    """Eigenvalue cut making dropped terms ~1e-16 of the trace at t_min."""
    z_est = max(area / (4 * math.pi * t_min), 1.0)
    return (-math.log(TRACE_CUTOFF) + math.log(z_est)) / t_min


@dataclass(frozen=True)
class DiskSpectra:
    """Mode spectra theta_n, n = 0, 1, ..., complete below a common cut."""

    profile: RotationalProfile
    R: float
    nu_scale: float
    lam_cut: float
    modes: tuple
    area: float
    t_min: float

    def mode_tail(self, t):
        """Weyl estimate of all eigenvalues above the cut (all modes)."""
        return 2.0 * self.area / (4 * math.pi) * math.exp(-self.lam_cut * t) / t


def disk_spectra(profile: RotationalProfile, R, t_min, nu_scale=1.0, tol=1e-10, n_max=None):
    """Eigenvalues of all angular modes nu = nu_scale * n below the cut for ``t_min``."""
    R = float(R)
    _check_disk(profile, R)
    # a mode family nu = nu_scale * n describes a sector of angle pi / nu_scale
    area = disk_area(profile, R) if nu_scale == 1.0 else disk_area(profile, R) / (2 * nu_scale)
    lam = lambda_cut(area, float(t_min))
    modes = []
    n = 0
    while n_max is None or n <= n_max:
        spec = radial_spectrum(profile, R, nu_scale * n, lam_max=lam, tol=tol)
        if spec.count == 0:
            break
        modes.append(spec)
        n += 1
    return DiskSpectra(profile, R, nu_scale, lam, tuple(modes), area, float(t_min))


def _ensure_spectra(profile, R, t_grid, spectra, nu_scale=1.0):
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or np.any(t_grid <= 0):
        raise InputError("t_grid must be a non-empty sequence of positive times")
    if spectra is None:
        spectra = disk_spectra(profile, R, t_grid.min(), nu_scale)
    elif t_grid.min() < spectra.t_min * (1 - 1e-12):
        raise TruncationError(f"spectra were computed for t_min={spectra.t_min:g}, "
                              f"grid starts at {t_grid.min():g}", minimal_count=None)
    return t_grid, spectra


def _mode_thetas(spectra, t):
    """(theta_n(t), tail_n(t), error_n(t)) for every mode, ascending n.

    error_n propagates the eigenvalue errors: sum_m t exp(-lam_m t) |dlam_m|.
    """
    th = np.array([np.sum(np.exp(-m.eigenvalues * t)) for m in spectra.modes])
    tails = np.array([m.tail(t) for m in spectra.modes])
    errs = np.array([np.sum(t * np.exp(-m.eigenvalues * t) * m.errors) for m in spectra.modes])
    return th, tails, errs


def donnelly_trace_I(profile: RotationalProfile, R, phi, t_grid, spectra=None):
    """I(t) = integral over the disk of H(t, q, rotation_phi(q)), one sample per t."""
    phi = float(phi)
    if not 0 < phi < 2 * math.pi:
        raise InputError(f"phi={phi} must lie in (0, 2pi)")
    t_grid, spectra = _ensure_spectra(profile, R, t_grid, spectra)
    n = np.arange(len(spectra.modes))
    w = np.where(n == 0, 1.0, 2.0) * np.cos(n * phi)
    out = []
    for t in t_grid:
        th, tails, errs = _mode_thetas(spectra, t)
        value = float(np.sum(w * th))
        tail = float(np.sum(np.abs(w) * tails) + 2 * spectra.mode_tail(t))
        out.append(TraceSample(float(t), value, tail, error=float(np.sum(np.abs(w) * errs))))
    return out


def cone_trace_contribution(profile: RotationalProfile, R, k, t_grid, spectra=None,
                            route="both", rtol=1e-12):
    """Cone-point contribution (1/k) sum_j I(t; 2 pi j / k) of order k.

    ``route="rotation"`` sums the rotation traces, ``route="modes"`` uses
    Z_orbifold - Z_disk / k with Z_orbifold keeping modes n = 0 mod k.
    With ``route="both"`` (default) the two are computed and required to
    agree within ``rtol`` relative to the largest mode sum involved.
    """
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise InputError(f"order k must be an integer >= 2, got {k!r}")
    k = int(k)
    t_grid, spectra = _ensure_spectra(profile, R, t_grid, spectra)
    n = np.arange(len(spectra.modes))
    mult = np.where(n == 0, 1.0, 2.0)
    w_rot = np.zeros(n.size)
    for j in range(1, k):
        w_rot += mult * np.cos(2 * math.pi * j * n / k)
    w_rot /= k
    w_mode = mult * ((n % k) == 0) - mult / k
    out = []
    for t in t_grid:
        th, tails, errs = _mode_thetas(spectra, t)
        rot = float(np.sum(w_rot * th))
        mode = float(np.sum(w_mode * th))
        if route == "both":
            scale = float(np.sum(mult * th))
            if abs(rot - mode) > rtol * scale:
                raise SolverError(f"cone trace routes disagree at t={t}: {rot} vs {mode}")
        value = mode if route == "modes" else rot
        tail = float(np.sum(np.abs(w_mode) * tails) + 2 * spectra.mode_tail(t))
        w = w_mode if route == "modes" else w_rot
        out.append(TraceSample(float(t), value, tail, {"rotation": rot, "modes": mode},
                               float(np.sum(np.abs(w) * errs))))
    return out


def flat_sector_trace(gamma, R, t_grid, spectra=None):
    """Dirichlet heat trace Z(t) of the flat circular sector of angle gamma and radius R."""
    gamma = float(gamma)
    if not 0 < gamma < 2 * math.pi:
        raise InputError(f"gamma={gamma} must lie in (0, 2pi)")
    R = float(R)
    profile = RotationalProfile.flat(valid_radius=R)
    nu_scale = math.pi / gamma
    t_grid = np.asarray(t_grid, dtype=float)
    if spectra is None:
        area = gamma * R * R / 2
        lam = lambda_cut(area, t_grid.min())
        modes = []
        m = 1
        while True:
            spec = radial_spectrum(profile, R, nu_scale * m, lam_max=lam, tol=1e-10)
            if spec.count == 0:
                break
            modes.append(spec)
            m += 1
        spectra = DiskSpectra(profile, R, nu_scale, lam, tuple(modes), area, float(t_grid.min()))
    out = []
    for t in t_grid:
        th, tails, errs = _mode_thetas(spectra, t)
        out.append(TraceSample(float(t), float(np.sum(th)),
                               float(np.sum(tails) + spectra.mode_tail(t)),
                               error=float(np.sum(errs))))
    return out


def sector_smooth_terms(gamma, R, t):
    """Area and perimeter terms A/(4 pi t) - L/(8 sqrt(pi t)) of a flat sector."""
    area = gamma * R * R / 2
    perim = 2 * R + gamma * R
    return area / (4 * math.pi * t) - perim / (8 * math.sqrt(math.pi * t))


# ---------------------------------------------------------------------------
# method of images on a flat wedge
# ---------------------------------------------------------------------------

def _reflection(axis):
    c, s = math.cos(2 * axis), math.sin(2 * axis)
    return np.array([[c, s], [s, -c]])


def wedge_images(k):
    """The maps Psi_i = sigma_i o ... o sigma_1, i = 0 .. 2k - 1, for the wedge of angle pi/k.

    sigma_i is the reflection across the line at angle i * pi / k.  Returns
    a list of (sign, kind, angle): rotations carry their rotation angle,
    reflections the angle of their axis (mod pi).
    """
    gamma = math.pi / k
    M = np.eye(2)
    out = [(1, "rotation", 0.0)]
    for i in range(1, 2 * k):
        M = _reflection(i * gamma) @ M
        sign = -1 if i % 2 else 1
        if i % 2:
            axis = 0.5 * math.atan2(M[1, 0], M[0, 0]) % math.pi
            out.append((sign, "reflection", axis))
        else:
            out.append((sign, "rotation", math.atan2(M[1, 0], M[0, 0])))
    return out


def _sector_gauss(s2, eps, t):
    """Integral over r in [0, eps] of r G(t, 2 r s), G the planar Gaussian kernel."""
    x = eps * eps * s2 / t
    if s2 == 0.0:
        return eps * eps / (8 * math.pi * t)
    return -math.expm1(-x) / (8 * math.pi * s2)


def wedge_image_corner(k, eps, t_grid, epsabs=1e-13):
    """Image-sum corner term of the flat wedge of angle pi/k and radius eps.

    Returns TraceSamples whose ``parts`` hold the rotation-image and
    reflection-image sums separately; ``value`` is their total.
    """
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise InputError(f"order k must be an integer >= 2, got {k!r}")
    k = int(k)
    eps = float(eps)
    gamma = math.pi / k
    images = wedge_images(k)[1:]
    out = []
    for t in np.asarray(t_grid, dtype=float):
        rot = 0.0
        ref = 0.0
        err = 0.0
        for sign, kind, ang in images:
            if kind == "rotation":
                s2 = math.sin(0.5 * ang) ** 2
                rot += sign * gamma * _sector_gauss(s2, eps, t)
            else:
                g = lambda th: _sector_gauss(math.sin(th - ang) ** 2, eps, t)  # noqa: E731
                pts = sorted({p for p in (ang, ang - math.pi, ang + math.pi) if 0 < p < gamma})
                width = math.sqrt(t) / eps
                pts = sorted(set(pts) | {min(max(p + d, 1e-300), gamma) for p in (0.0, gamma)
                                         for d in (-width, width) if 0 < p + d < gamma})
                val, e = integrate.quad(g, 0.0, gamma, points=pts or None, limit=400,
                                        epsabs=epsabs, epsrel=1e-13)
                ref += sign * val
                err += e
        out.append(TraceSample(float(t), rot + ref, err,
                               {"rotation": rot, "reflection": ref}))
    return out


def wedge_reflection_oracle(eps, t):
    """Closed one-dimensional reduction of the reflection-image sum (all k)."""
    g = lambda x: special.erf(math.sqrt(max(eps * eps - x * x, 0.0)) / math.sqrt(t))  # noqa: E731
    val = integrate.quad(g, -eps, eps, limit=400, epsabs=1e-14, epsrel=1e-13)[0]
    return -val / (8 * math.sqrt(math.pi * t))
