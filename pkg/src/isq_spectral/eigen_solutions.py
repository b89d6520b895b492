"""Solutions of ``-f'' + (k^2 - 1/4) r^{-2} f = z f`` and their Wronskians.

Four families are provided, each returned as a :class:`SolutionEval` holding
the value and the r-derivative:

* ``u^k``: the solution behaving like ``r^{1/2+k}`` at the origin;
* ``w^k``: its partner with ``W(u, w) = 2/pi``, regular in ``k`` through 0;
* ``u^k_theta = u cos(theta - theta_k) + w sin(theta - theta_k)``;
* ``v^k``: the solution decaying at infinity for ``z`` off ``[0, inf)``.

All derivatives are analytic.  Inputs ``z`` and ``r`` broadcast together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import special_functions as sf
from .special_functions import DEFAULT_SERIES, LN2, SeriesConfig


@dataclass(frozen=True)
class ExtensionParams:
    """Self-adjoint extension label ``(kappa, theta)``; ``theta`` matters mod pi."""

    kappa: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and math.isfinite(self.theta)):
            raise ValueError("kappa and theta must be finite")
        if not abs(self.kappa) < 1:
            raise ValueError(f"|kappa| must be < 1, got {self.kappa}")

    @property
    def theta_kappa(self) -> float:
        return math.pi * self.kappa / 2

    @property
    def canonical_theta(self) -> float:
        return self.theta % math.pi

    @classmethod
    def from_offset(cls, kappa: float, offset: float) -> "ExtensionParams":
        """Extension with ``theta = theta_kappa + offset``."""
        return cls(kappa, math.pi * kappa / 2 + offset)

    def shifted(self, dtheta: float) -> "ExtensionParams":
        return ExtensionParams(self.kappa, self.theta + dtheta)


@dataclass(frozen=True)
class SolutionEval:
    value: np.ndarray | complex | float
    d_r: np.ndarray | complex | float

    def __neg__(self):
        return SolutionEval(-self.value, -self.d_r)


def wronskian_at(f: SolutionEval, g: SolutionEval):
    return f.value * g.d_r - f.d_r * g.value


def _real_if(x, real: bool):
    return np.real(x) if real else x


def _shape_out(x, like_shape):
    x = np.asarray(x).reshape(like_shape)
    return x[()] if x.ndim == 0 else x


def _uw(kappa: float, z, r, want_w: bool, cfg: SeriesConfig, want_deriv: bool = True):
    """Values and r-derivatives of ``u^k`` (and ``w^k``) on broadcast (z, r).

    With ``want_deriv=False`` the derivative slots come back as ``None``.
    """
    z = np.asarray(z)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise sf.DomainError("r must be positive")
    real_z = not np.iscomplexobj(z) or bool(np.all(np.imag(z) == 0))
    zb, rb = np.broadcast_arrays(z, r)
    shape = zb.shape
    zf = zb.astype(complex).ravel()
    rf = rb.astype(float).ravel()
    if real_z:
        zf_in = zf.real
    else:
        zf_in = zf
    sq = np.sqrt(zf)
    x = rf * sq
    big = np.abs(x) > cfg.asymptotic_switch
    u = np.empty(zf.shape, complex)
    du = np.empty(zf.shape, complex)
    w = np.empty(zf.shape, complex) if want_w else None
    dw = np.empty(zf.shape, complex) if want_w else None

    if np.any(~big):
        sel = ~big
        rs = rf[sel]
        q = sf.quarter_square_dd(rs, zf_in[sel])
        s = sf._series_sums(kappa, q, np.log(rs) - LN2, cfg, want_w=want_w, want_deriv=want_deriv)
        sr = np.sqrt(rs)
        u[sel] = sr * s.sp
        if want_deriv:
            du[sel] = ((0.5 + kappa) * s.sp + 2 * s.np_) / sr
        if want_w:
            wv = sf._w_from_sums(kappa, s)
            w[sel] = sr * wv
        if want_w and want_deriv:
            dw[sel] = wv / (2 * sr) + sr * sf._w_deriv_sum(kappa, s) / rs

    if np.any(big):
        sel = big
        rs, zs, ss, xs = rf[sel], zf[sel], sq[sel], x[sel]
        h = sf._hankel_asym(kappa, xs, deriv=True)
        j = 0.5 * (h.h1 + h.h2)
        jd = 0.5 * (h.h1_x + h.h2_x)
        lz = np.log(zs)
        zm = np.exp(-0.5 * kappa * lz)
        sr = np.sqrt(rs)
        u[sel] = sr * zm * j
        du[sel] = u[sel] / (2 * rs) + sr * zm * ss * jd
        if want_w:
            y = (h.h1 - h.h2) / 2j
            yd = (h.h1_x - h.h2_x) / 2j
            zp = np.exp(0.5 * kappa * lz)
            cphi = sf.cospi(kappa) * sf.phi_log(kappa, lz)
            w[sel] = sr * (zp * y + cphi * j)
            dw[sel] = w[sel] / (2 * rs) + sr * ss * (zp * yd + cphi * jd)

    res = [u, du] + ([w, dw] if want_w else [])
    return [_shape_out(_real_if(v, real_z), shape) if i % 2 == 0 or want_deriv else None
            for i, v in enumerate(res)]


def eval_u(kappa: float, z, r, cfg: SeriesConfig = DEFAULT_SERIES, *,
           derivative: bool = True) -> SolutionEval:
    """``u^k(z|r) = r^{1/2+k} chi_k(r^2 z)``; also valid for ``k >= 1``.

    ``derivative=False`` skips the r-derivative (``d_r`` is ``None``).
    """
    u, du = _uw(float(kappa), z, r, False, cfg, derivative)
    return SolutionEval(u, du)


def eval_w(kappa: float, z, r, cfg: SeriesConfig = DEFAULT_SERIES) -> SolutionEval:
    """Second solution ``w^k``, analytic in ``k`` on ``(-1, 1)``.

    The series for ``(u^k - u^{-k})/k`` is summed through its own recurrence,
    so the quotient by ``sin(pi k)`` never appears and ``k = 0`` needs no
    special case.
    """
    kappa = float(kappa)
    if not abs(kappa) < 1:
        raise sf.DomainError("w requires |kappa| < 1")
    _, _, w, dw = _uw(kappa, z, r, True, cfg)
    return SolutionEval(w, dw)


def eval_w_direct(kappa: float, z, r, cfg: SeriesConfig = DEFAULT_SERIES) -> SolutionEval:
    """Reference route for ``w^k``: the ``u^{+-k}`` combination for ``k != 0`` and
    the logarithmic ``script_y`` form at ``k = 0``.

    Loses about ``eps/|sin(pi k)|`` relative accuracy near ``k = 0``; kept as an
    independent cross-check of :func:`eval_w`.
    """
    kappa = float(kappa)
    if kappa != 0:
        up = eval_u(kappa, z, r, cfg)
        um = eval_u(-kappa, z, r, cfg)
        c, s = sf.cospi(kappa), sf.sinpi(kappa)
        return SolutionEval((up.value * c - um.value) / s, (up.d_r * c - um.d_r) / s)
    z = np.asarray(z)
    r = np.asarray(r, dtype=float)
    u0 = eval_u(0.0, z, r, cfg)
    zeta = r * r * z
    y, dy = sf.script_y(zeta, cfg, derivative=True)
    sr = np.sqrt(r)
    lg = np.log(r / 2) + sf.EULER_GAMMA
    val = (2 / np.pi) * (lg * u0.value - sr * y)
    der = (2 / np.pi) * (u0.value / r + lg * u0.d_r - y / (2 * sr) - sr * dy * 2 * r * z)
    return SolutionEval(val, der)


def eval_u_theta(p: ExtensionParams, z, r, cfg: SeriesConfig = DEFAULT_SERIES, *,
                 derivative: bool = True) -> SolutionEval:
    """``u^k_theta = u^k cos(theta - theta_k) + w^k sin(theta - theta_k)``."""
    u, du, w, dw = _uw(p.kappa, z, r, True, cfg, derivative)
    a = p.theta - p.theta_kappa
    c, s = math.cos(a), math.sin(a)
    return SolutionEval(c * u + s * w, c * du + s * dw if derivative else None)


def eval_v(kappa: float, z, r, cfg: SeriesConfig = DEFAULT_SERIES) -> SolutionEval:
    """``v^k(z|r) = (i pi/2) e^{i pi k/2} r^{1/2} H1_k(r z^{1/2})``, cut at arg 3pi/2.

    Three zones: the Hankel expansion for ``|x| > asymptotic_switch``, the
    Macdonald integral ``v = r^{1/2} K_k(-i x)`` when ``Im x`` is large enough
    for ``J + iY`` to cancel, and the ``u, w`` combination elsewhere.
    """
    kappa = float(kappa)
    if not abs(kappa) < 1:
        raise sf.DomainError("v requires |kappa| < 1")
    z = np.asarray(z, dtype=complex)
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise sf.DomainError("r must be positive")
    zb, rb = np.broadcast_arrays(z, r)
    shape = zb.shape
    zf = zb.ravel()
    rf = rb.ravel().astype(float)
    ell = np.atleast_1d(sf.cut_log(zf, sf.LOWER_CUT))
    s3 = np.exp(0.5 * ell)
    x = rf * s3
    sr = np.sqrt(rf)
    c = 0.5j * np.pi * np.exp(0.5j * np.pi * kappa)
    big = np.abs(x) > cfg.asymptotic_switch
    kz = ~big & (x.imag > sf.K_ZONE_IMAG)
    ser = ~big & ~kz
    v = np.empty(zf.shape, complex)
    dv = np.empty(zf.shape, complex)
    if np.any(big):
        h = sf._hankel_asym(kappa, x[big], want_h2=False, deriv=True)
        v[big] = c * sr[big] * h.h1
        dv[big] = v[big] / (2 * rf[big]) + c * sr[big] * s3[big] * h.h1_x
    if np.any(kz):
        k, kd = sf.bessel_k_integral(kappa, -1j * x[kz], deriv=True)
        v[kz] = sr[kz] * k
        dv[kz] = v[kz] / (2 * rf[kz]) + sr[kz] * kd * (-1j * s3[kz])
    if np.any(ser):
        lz = ell[ser]
        u, du, w, dw = _uw(kappa, zf[ser], rf[ser], True, cfg)
        zp = np.exp(0.5 * kappa * lz)
        zm = np.exp(-0.5 * kappa * lz)
        cphi = sf.cospi(kappa) * sf.phi_log(kappa, lz)
        v[ser] = c * (zp * u + 1j * (zm * w - cphi * u))
        dv[ser] = c * (zp * du + 1j * (zm * dw - cphi * du))
    return SolutionEval(_shape_out(v, shape), _shape_out(dv, shape))


def q_kappa(kappa: float, r):
    return (kappa * kappa - 0.25) / np.asarray(r, dtype=float) ** 2


def ode_residual(kappa: float, E, f: Callable[[np.ndarray], SolutionEval], r: float, h: float) -> float:
    """Normalised residual of the radial equation with a 5-point second difference."""
    if not r - 2 * h > 0:
        raise ValueError("need r - 2h > 0")
    pts = r + h * np.arange(-2, 3)
    vals = np.asarray(f(pts).value)
    f2 = (-vals[4] + 16 * vals[3] - 30 * vals[2] + 16 * vals[1] - vals[0]) / (12 * h * h)
    fr = vals[2]
    res = -f2 + q_kappa(kappa, r) * fr - E * fr
    return float(abs(res) / (1 + abs(E * fr)))
