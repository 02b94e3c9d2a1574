"""Small-t coefficient extraction and log-log remainder orders."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FitError, InputError

CONDITION_LIMIT = 1e8
#: coverage factor of the reported least-squares uncertainty; with factor 1 the
#: combined estimate fell short of the true error on about half the
#: closed-form test fits
COVERAGE = 2.0


@dataclass(frozen=True)
class FitResult:
    """Weighted least-squares fit of samples against 1, x, ..., x^degree.

    ``x`` is t (or sqrt(t) for ``variable="sqrt"``).  ``uncertainties``
    combine the statistical error, the shift seen when one more power is
    added to the model and the propagated numerical error of the samples,
    times the coverage factor :data:`COVERAGE`.  ``elimination`` holds the sequential
    extrapolation estimates (with their own uncertainties) for
    cross-validation.
    """

    coefficients: np.ndarray
    uncertainties: np.ndarray
    condition: float
    residual_norm: float
    window: tuple
    elimination: np.ndarray
    elimination_uncertainties: np.ndarray
    variable: str = "t"

    def __post_init__(self):
        if np.any(self.uncertainties < 0) or not np.isfinite(self.condition):
            raise FitError("invalid fit diagnostics")

    def as_dict(self):
        return {
            "coefficients": [float(c) for c in self.coefficients],
            "uncertainties": [float(c) for c in self.uncertainties],
            "condition": float(self.condition),
            "residual_norm": float(self.residual_norm),
            "window": list(self.window),
            "elimination": [float(c) for c in self.elimination],
            "elimination_uncertainties": [float(c) for c in self.elimination_uncertainties],
            "variable": self.variable,
        }


def geometric_grid(t_min, t_max, per_decade=20):
    """Geometric grid covering [t_min, t_max] with ``per_decade`` points per decade."""
    if not 0 < t_min < t_max:
        raise InputError("need 0 < t_min < t_max")
    n = max(2, int(math.ceil(per_decade * math.log10(t_max / t_min))) + 1)
    return np.geomspace(t_min, t_max, n)


def fit_window(C, R, shrink=1.0, ratio=25.0):
    """Default window [t_max / ratio, t_max] with t_max = (C R)^2 / 100, times ``shrink``.

    Boundary effects in a disk of radius R enter like exp(-(C R)^2 / (4 t)),
    so this keeps them near exp(-25).
    """
    t_max = shrink * (C * R) ** 2 / 100.0
    return t_max / ratio, t_max


def _unpack(samples):
    t = np.array([s.t for s in samples], dtype=float)
    y = np.array([s.value for s in samples], dtype=float)
    tail = np.array([s.tail_estimate for s in samples], dtype=float)
    err = np.array([getattr(s, "error", 0.0) for s in samples], dtype=float)
    return t, y, tail, err


def _data_error(x, powers, w, err):
    """Worst-case coefficient shift from sample errors (they are correlated in t)."""
    A = x[:, None] ** np.asarray(powers)[None, :]
    sw = np.sqrt(w)
    As = A * sw[:, None]
    col = np.linalg.norm(As, axis=0)
    G = np.linalg.pinv(As / col) * sw[None, :] / col[:, None]
    return np.abs(G) @ err


def _wls(x, y, powers, w):
    A = x[:, None] ** np.asarray(powers)[None, :]
    sw = np.sqrt(w)
    As = A * sw[:, None]
    ys = y * sw
    col = np.linalg.norm(As, axis=0)
    As = As / col
    cond = float(np.linalg.cond(As))
    coef, *_ = np.linalg.lstsq(As, ys, rcond=None)
    res = ys - As @ coef
    dof = max(1, x.size - len(powers))
    s2 = float(res @ res) / dof
    cov = s2 * np.linalg.pinv(As.T @ As)
    return coef / col, np.sqrt(np.diag(cov)) / col, cond, float(np.linalg.norm(res))


def _neville_at_zero(x, y):
    """Value at 0 of the interpolating polynomial through (x_i, y_i)."""
    p = list(y)
    n = len(x)
    for k in range(1, n):
        for i in range(n - k):
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i])
    return p[0]


def _spread(n, m):
    return np.unique(np.round(np.linspace(0, n - 1, m)).astype(int))


def _elimination(x, y, degree):
    """Sequential extrapolation: estimate c0, subtract, divide by x, repeat.

    Each estimate interpolates m points; its uncertainty is the change from
    the m - 1 point estimate (the usual last-two-entries rule).
    """
    coeffs = []
    errs = []
    yy = y.copy()
    for j in range(degree + 1):
        m = degree + 2 - j
        pick = _spread(x.size, m)
        c = _neville_at_zero(x[pick], yy[pick])
        if m > 1:
            lower = _spread(x.size, m - 1)
            errs.append(abs(c - _neville_at_zero(x[lower], yy[lower])))
        else:
            errs.append(abs(c))
        coeffs.append(c)
        yy = (yy - c) / x
    return np.array(coeffs), np.array(errs)


def fit_power_series(samples, degree, weights="inverse_power", variable="t",
                     condition_limit=CONDITION_LIMIT):
    """Fit c_0 + c_1 x + ... + c_degree x^degree to trace samples.

    The model carries one extra power (degree + 1) whose coefficient is
    discarded; it absorbs the first unmodelled term.  ``weights`` is
    ``"inverse_power"`` (weight x^-(degree+1), favouring small t) or
    ``"uniform"``.  ``variable="sqrt"`` fits in x = sqrt(t).
    """
    samples = list(samples)
    if len(samples) < 2 * (degree + 1):
        raise InputError(f"need at least {2 * (degree + 1)} samples for degree {degree}")
    t, y, tail, err = _unpack(samples)
    order = np.argsort(t)
    t, y, tail, err = t[order], y[order], tail[order], err[order]
    if variable == "t":
        x = t
    elif variable == "sqrt":
        x = np.sqrt(t)
    else:
        raise InputError(f"unknown variable {variable!r}")
    if weights == "inverse_power":
        w = x ** (-(degree + 1))
        w = w / w.max()
    elif weights == "uniform":
        w = np.ones_like(x)
    else:
        raise InputError(f"unknown weights policy {weights!r}")
    scale = np.max(np.abs(y)) if np.any(y) else 1.0
    if np.any(tail > 1e-6 * scale):
        raise FitError("sample tail estimates exceed the fit noise floor; lower t_min "
                       "or compute more eigenvalues")
    powers = list(range(degree + 2))
    coef, stat, cond, rnorm = _wls(x, y, powers, w)
    if cond > condition_limit:
        raise FitError(f"design condition {cond:.3g} above {condition_limit:.3g}; "
                       "choose a different window")
    model = np.zeros(degree + 1)
    if x.size > degree + 3:
        coef_hi, _, _, _ = _wls(x, y, list(range(degree + 3)), w)
        model = np.abs(coef_hi[: degree + 1] - coef[: degree + 1])
    data = _data_error(x, powers, w, err)[: degree + 1]
    unc = COVERAGE * np.sqrt(stat[: degree + 1] ** 2 + model**2 + data**2)
    elim, elim_unc = _elimination(x, y, degree + 1)
    return FitResult(coef[: degree + 1], unc, cond, rnorm,
                     (float(t[0]), float(t[-1]), int(t.size)),
                     elim[: degree + 1], elim_unc[: degree + 1], variable)


@dataclass(frozen=True)
class OrderResult:
    """Log-log slope of residuals; ``exact`` marks residuals all at the floor."""

    slope: float
    intercept: float
    r2: float
    exact: bool = False
    used: int = 0

    def as_dict(self):
        return {"slope": self.slope, "intercept": self.intercept, "r2": self.r2,
                "exact": self.exact, "used": self.used}


def remainder_order(pairs, floor=1e-14):
    """Least-squares slope of log|residual| against log r.

    Residuals at or below ``floor`` are excluded; if none remain the series
    is reported exact (slope = +inf).
    """
    pairs = [(float(r), abs(float(e))) for r, e in pairs]
    if len(pairs) < 2:
        raise InputError("need at least two (r, residual) pairs")
    r = np.array([p[0] for p in pairs])
    e = np.array([p[1] for p in pairs])
    if np.any(r <= 0):
        raise InputError("r values must be positive")
    if r.max() / r.min() < 10 * (1 - 1e-9):
        raise InputError("r values must span at least one decade")
    keep = e > floor
    if not np.any(keep):
        return OrderResult(math.inf, math.nan, 1.0, True, 0)
    if keep.sum() < 2:
        raise InputError("fewer than two residuals above the floor")
    lx = np.log(r[keep])
    ly = np.log(e[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return OrderResult(float(slope), float(intercept), r2, False, int(keep.sum()))
