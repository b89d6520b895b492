"""Entire-function series, Bessel and Hankel kernels, and branch-cut arithmetic.

The power series are summed in double-double arithmetic.  Inside the series
zone (``|x| <= asymptotic_switch``) the terms can exceed the result by a
factor ``e^|x|``; carrying ~32 digits keeps that cancellation out of the
final double result, so the series, its r-derivative and the Wronskians built
from them are accurate to a few ulps rather than to ``e^|x| * eps``.

All public functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special as sc

from ._dd import CDD, DD, dd_recip, two_prod
from .exceptions import BranchCutError, DomainError, SeriesError

EULER_GAMMA = float(np.euler_gamma)
LN2 = float(np.log(2.0))
CUT_TOL = 1e-12
# Above this imaginary part of x the Hankel function is computed from the
# Macdonald integral; the series combination J + iY would cancel.
K_ZONE_IMAG = 2.0


@dataclass(frozen=True)
class BranchCut:
    """Branch of ``arg`` with the cut along the ray at ``cut_angle``.

    ``cut_angle = 3*pi/2`` gives arguments in (-pi/2, 3*pi/2); ``cut_angle = pi``
    gives the principal range (-pi, pi).
    """

    cut_angle: float

    def __post_init__(self):
        if not (np.isclose(self.cut_angle, np.pi) or np.isclose(self.cut_angle, 1.5 * np.pi)):
            raise ValueError(f"unsupported cut angle {self.cut_angle!r}")

    def arg(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(z == 0):
            raise DomainError("argument of zero is undefined")
        a = np.angle(z)
        if np.isclose(self.cut_angle, np.pi):
            on_cut = np.abs(np.abs(a) - np.pi) < CUT_TOL
        else:
            on_cut = np.abs(a + 0.5 * np.pi) < CUT_TOL
            a = np.where(a < -0.5 * np.pi, a + 2 * np.pi, a)
        if np.any(on_cut):
            raise BranchCutError(f"argument on the cut ray at angle {self.cut_angle:.6f}")
        return a


PRINCIPAL = BranchCut(np.pi)
LOWER_CUT = BranchCut(1.5 * np.pi)


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-14
    max_terms: int = 500
    asymptotic_switch: float = 25.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not self.asymptotic_switch > 0:
            raise ValueError("asymptotic_switch must be positive")


DEFAULT_SERIES = SeriesConfig()


def _out(x, like):
    """Return a python scalar when the broadcast inputs were all scalars."""
    return x[()] if np.ndim(like) == 0 and np.ndim(x) == 0 else x


# ---------------------------------------------------------------------------
# elementary pieces


def cut_log(z, cut: BranchCut = LOWER_CUT):
    z = np.asarray(z, dtype=complex)
    out = np.log(np.abs(z)) + 1j * cut.arg(z)
    return _out(out, z)


def cut_power(z, rho, cut: BranchCut = LOWER_CUT):
    return _out(np.exp(np.asarray(rho) * cut_log(z, cut)), np.asarray(z))


def sinc_c(zeta):
    """``sin(zeta)/zeta`` with the removable singularity filled in."""
    zeta = np.asarray(zeta)
    small = np.abs(zeta) < 1e-2
    safe = np.where(small, 1.0, zeta)
    z2 = zeta * zeta
    out = np.where(small, 1 - z2 / 6 + z2 * z2 / 120, np.sin(safe) / safe)
    return _out(out, zeta)


def shc(w):
    """``sinh(w)/w``, i.e. ``sinc(i w)``."""
    w = np.asarray(w)
    small = np.abs(w) < 1e-2
    safe = np.where(small, 1.0, w)
    w2 = w * w
    out = np.where(small, 1 + w2 / 6 + w2 * w2 / 120, np.sinh(safe) / safe)
    return _out(out, w)


def sinpi(x):
    """``sin(pi x)`` for real ``x`` with exact argument reduction."""
    x = np.asarray(x, dtype=float)
    r = x - 2.0 * np.round(0.5 * x)
    ar = np.abs(r)
    out = np.sign(r) * np.where(ar > 0.5, np.sin(np.pi * (1.0 - ar)), np.sin(np.pi * ar))
    return _out(out, x)


def cospi(x):
    x = np.asarray(x, dtype=float)
    r = np.abs(x - 2.0 * np.round(0.5 * x))
    return _out(sinpi(0.5 - r), x)


def sinc_pi(kappa):
    """``sin(pi k)/(pi k)``, accurate also near ``k = +-1``."""
    kappa = np.asarray(kappa, dtype=float)
    small = np.abs(kappa) < 1e-2 / np.pi
    safe = np.where(small, 1.0, kappa)
    out = np.where(small, sinc_c(np.pi * kappa), sinpi(safe) / (np.pi * safe))
    return _out(out, kappa)


def tan_half_pi(kappa):
    """``tan(pi k/2)``."""
    return sinpi(0.5 * np.asarray(kappa, dtype=float)) / cospi(0.5 * np.asarray(kappa, dtype=float))


def digamma(x):
    return sc.digamma(x)


def gamma_fn(z):
    z = np.asarray(z)
    zr = np.real(z)
    pole = (np.imag(z) == 0) & (zr <= 0) & (zr == np.round(zr))
    if np.any(pole):
        raise DomainError("gamma function pole at a nonpositive integer")
    return _out(sc.gamma(z), z)


def phi_log(kappa, ell):
    """``Phi`` written in terms of a logarithm ``ell = log E``.

    Equals ``(E^{-k/2} - E^{k/2})/sin(pi k)`` for ``k != 0`` and ``-ell/pi`` at
    ``k = 0``; complex ``ell`` selects a branch of the powers.
    """
    return -ell / (np.pi * sinc_pi(kappa)) * shc(0.5 * kappa * ell)


def _g_of_kappa(kappa: float) -> float:
    """``[lnGamma(1+k) - lnGamma(1-k)]/(2k)``, smooth through ``k = 0``."""
    if abs(kappa) <= 0.2:
        k2 = kappa * kappa
        s, p = 0.0, 1.0
        for k in range(1, 25):
            p *= k2
            s += sc.zeta(2 * k + 1) * p / (2 * k + 1)
        return -EULER_GAMMA - s
    return (sc.gammaln(1 + kappa) - sc.gammaln(1 - kappa)) / (2 * kappa)


# ---------------------------------------------------------------------------
# double-double series core


class _Sums(NamedTuple):
    sp: np.ndarray  # sum p_n  (u-type series, order +k)
    sm: np.ndarray | None  # sum m_n  (order -k)
    sd: np.ndarray | None  # sum (p_n - m_n)/k, smooth in k
    np_: np.ndarray | None  # sum n p_n
    nd: np.ndarray | None  # sum n d_n


def _as_dd(q):
    """Lift a float/complex array to DD/CDD (exact)."""
    if np.iscomplexobj(q):
        return CDD.from_complex(q)
    return DD(np.ascontiguousarray(q, dtype=float))


def _lift(x, complex_mode):
    x = np.asarray(x)
    if complex_mode:
        return CDD.from_complex(x.astype(complex))
    return DD(np.ascontiguousarray(x, dtype=float))


def _series_sums(kappa: float, q, L, cfg: SeriesConfig, *, want_w: bool, want_deriv: bool) -> _Sums:
    """Sum the Frobenius series of the Bessel-type equation.

    With ``c_n = q^n/n!`` and ``P_n = e^{kL}/Gamma(n+1+k)``, ``M_n`` the same at
    ``-k``, returns sums of ``p_n = c_n P_n``, ``m_n = c_n M_n`` and
    ``d_n = c_n (P_n - M_n)/k`` together with their ``n``-weighted versions.
    ``d_n`` obeys its own recurrence whose coefficients are regular at
    ``k = 0``; no division by ``k`` ever happens.

    ``q`` is a DD or CDD array; ``L`` a float or complex array broadcastable
    with it.
    """
    kappa = float(kappa)
    complex_mode = isinstance(q, CDD) or np.iscomplexobj(L)
    if complex_mode and isinstance(q, DD):
        q = CDD(q, DD(np.zeros_like(q.hi)))
    parts = (q.re.hi, q.re.lo, q.im.hi, q.im.lo) if complex_mode else (q.hi, q.lo)
    shape = np.broadcast_shapes(np.shape(L), *map(np.shape, parts))
    L = np.broadcast_to(np.asarray(L), shape)

    if abs(kappa) < 1:
        s = np.sqrt(sinc_pi(kappa))
        lg = L - _g_of_kappa(kappa)
        p0 = s * np.exp(kappa * lg)
        m0 = s * np.exp(-kappa * lg)
        d0 = 2 * s * lg * shc(kappa * lg)
    else:
        if kappa <= -1 and kappa == round(kappa):
            raise DomainError("negative integer order is excluded")
        if want_w:
            raise DomainError("second solution requires |kappa| < 1")
        p0 = np.exp(kappa * L) * sc.rgamma(1 + kappa)
        m0 = d0 = None

    size = int(np.prod(shape))
    flat = lambda v: _lift(np.reshape(np.broadcast_to(v, shape), size), complex_mode)  # noqa: E731
    fl = lambda a: np.broadcast_to(a, shape).ravel()  # noqa: E731
    fdd = lambda v: DD(fl(v.hi), fl(v.lo))  # noqa: E731
    q = CDD(fdd(q.re), fdd(q.im)) if complex_mode else fdd(q)
    zero = np.zeros(size)
    # state: p, sp, np, m, sm, d, sd, nd (None where not requested)
    st = [flat(p0), None, flat(zero) if want_deriv else None,
          flat(m0) if want_w else None, None,
          flat(d0) if want_w else None, None,
          flat(zero) if want_deriv and want_w else None]
    st[1], st[4], st[6] = st[0], st[3], st[5]
    out = [None if v is None else np.empty(size, complex if complex_mode else float) for v in st]
    idx = np.arange(size)
    small = np.zeros(size, dtype=int)
    tol = cfg.rel_tol
    n = 0
    while idx.size:
        n += 1
        p, sp, npsum, m, sm, d, sd, ndsum = st
        if n > cfg.max_terms:
            last = float(np.max(p.abs_hi()))
            raise SeriesError(f"series not converged in {cfg.max_terms} terms", last)
        fn = float(n)
        a_p = dd_recip(DD(*two_prod(fn, kappa)) + fn * fn)
        p_new = p * (q * a_p)
        if want_w:
            a_m = dd_recip(DD(*two_prod(fn, -kappa)) + fn * fn)
            b = dd_recip(DD(*two_prod(kappa, -kappa)) + fn * fn)
            inv_n = dd_recip(DD(fn))
            d = q * (d - (p + m) * inv_n) * b
            m = m * (q * a_m)
            sm = sm + m
            sd = sd + d
        p = p_new
        sp = sp + p
        if want_deriv:
            npsum = npsum + p * fn
            if want_w:
                ndsum = ndsum + d * fn
        st = [p, sp, npsum, m, sm, d, sd, ndsum]

        ok = p.abs_hi() <= tol * sp.abs_hi()
        if want_w:
            ok &= d.abs_hi() <= tol * sd.abs_hi()
            ok &= m.abs_hi() <= tol * sm.abs_hi()
        small = np.where(ok, small + 1, 0)
        done = small >= 2
        if not done.any():
            continue
        # retire converged elements so the loop only runs on the slow ones
        for k in (1, 2, 4, 6, 7):
            if st[k] is not None:
                out[k][idx[done]] = st[k].to_float()[done]
        keep = ~done
        idx, small, q = idx[keep], small[keep], q.take(keep)
        st = [None if v is None else v.take(keep) for v in st]

    f = lambda v: None if v is None else v.reshape(shape)  # noqa: E731
    return _Sums(f(out[1]), f(out[4]), f(out[6]), f(out[2]), f(out[7]))


def _w_from_sums(kappa, s: _Sums):
    """Combination ``SD/(pi sinc(pi k)) - tan(pi k/2) SP`` (Y-type solution)."""
    return s.sd / (np.pi * sinc_pi(kappa)) - tan_half_pi(kappa) * s.sp


def _w_deriv_sum(kappa, s: _Sums):
    """``x d/dx`` of the Y-type combination in units where ``c_n`` scales as ``x^{2n}``."""
    dsd = 2 * s.nd + s.sp + s.sm
    dsp = kappa * s.sp + 2 * s.np_
    return dsd / (np.pi * sinc_pi(kappa)) - tan_half_pi(kappa) * dsp


def quarter_square_dd(r, z):
    """``-r^2 z / 4`` as a DD/CDD array, with ``r^2`` formed exactly."""
    r = np.asarray(r, dtype=float)
    z = np.asarray(z)
    r, z = np.broadcast_arrays(r, z)
    r2 = DD(*two_prod(r, r))
    if np.iscomplexobj(z):
        return CDD(r2 * np.ascontiguousarray(-0.25 * z.real), r2 * np.ascontiguousarray(-0.25 * z.imag))
    return r2 * np.ascontiguousarray(-0.25 * z.astype(float))


# ---------------------------------------------------------------------------
# large-argument expansions


class _HankelAsym(NamedTuple):
    h1: np.ndarray
    h2: np.ndarray | None
    h1_x: np.ndarray | None
    h2_x: np.ndarray | None
    h1_nu: np.ndarray | None
    h2_nu: np.ndarray | None


def _hankel_asym(nu: float, x, *, want_h2=True, deriv=False, dnu=False, max_terms=80) -> _HankelAsym:
    """Hankel large-argument expansions, truncated at the smallest term."""
    x = np.asarray(x, dtype=complex)
    mu = 4.0 * nu * nu
    ix = 1j / x
    a = 1.0
    b = 0.0  # d a_k / d nu
    t1 = np.ones_like(x)
    s1 = t1.copy()
    s2 = t1.copy()
    k1 = np.zeros_like(x)  # sum k * term (i/x)^k
    k2 = np.zeros_like(x)
    n1 = np.zeros_like(x)  # sum a_k' (i/x)^k
    n2 = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    prev = np.ones(x.shape)
    powp = np.ones_like(x)
    for k in range(1, max_terms):
        f = (mu - (2 * k - 1) ** 2) / (8.0 * k)
        b = b * f + a * nu / k
        a = a * f
        powp = powp * ix
        powm = powp * (-1) ** k
        term = a * powp
        mag = np.abs(term)
        active &= mag <= prev  # stop before the expansion starts to diverge
        prev = np.where(active, mag, prev)
        s1 = s1 + np.where(active, term, 0)
        s2 = s2 + np.where(active, a * powm, 0)
        if deriv:
            k1 = k1 + np.where(active, k * term, 0)
            k2 = k2 + np.where(active, k * a * powm, 0)
        if dnu:
            n1 = n1 + np.where(active, b * powp, 0)
            n2 = n2 + np.where(active, b * powm, 0)
        done = ~active | (mag <= 1e-18 * np.abs(s1))
        if np.all(done) and (a == 0 or k > 2):
            break
    amp = np.sqrt(2.0 / (np.pi * x))
    omega = x - 0.5 * np.pi * nu - 0.25 * np.pi
    e1 = amp * np.exp(1j * omega)
    h1 = e1 * s1
    h2 = h1x = h2x = h1n = h2n = None
    e2 = None
    if want_h2:
        e2 = amp * np.exp(-1j * omega)
        h2 = e2 * s2
    if deriv:
        h1x = e1 * (1j * s1 - s1 / (2 * x) - k1 / x)
        if want_h2:
            h2x = e2 * (-1j * s2 - s2 / (2 * x) - k2 / x)
    if dnu:
        h1n = e1 * (-0.5j * np.pi * s1 + n1)
        if want_h2:
            h2n = e2 * (0.5j * np.pi * s2 + n2)
    return _HankelAsym(h1, h2, h1x, h2x, h1n, h2n)


def bessel_k_integral(nu: float, y, *, deriv=False):
    """Macdonald function ``K_nu(y)`` for ``Re y > 0`` by the trapezoid rule.

    Uses ``K_nu(y) = int_0^inf exp(-y cosh t) cosh(nu t) dt``.  The integrand is
    analytic in a strip whose half-width ``d`` shrinks like ``atan(Re y/|Im y|)``;
    the step is chosen so that the discretisation error ``~exp(-2 pi d/h)`` is
    below 1e-17 relative.  Returns ``K`` or ``(K, K')``.
    """
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    if np.any(y.real <= 0):
        raise DomainError("Macdonald integral needs Re y > 0")
    out = np.empty(y.shape, dtype=complex)
    outd = np.empty(y.shape, dtype=complex)
    for idx, yy in np.ndenumerate(y):
        a, b = yy.real, abs(yy.imag)
        d = 0.5 * np.arctan2(a, b)
        h = 2 * np.pi * d / (42.0 + abs(yy) * d)
        tmax = np.arccosh(1 + 45.0 / a)
        t = np.arange(0.0, tmax + h, h)
        e = np.exp(-yy * (np.cosh(t) - 1.0)) * np.cosh(nu * t)
        e[0] *= 0.5
        scale = np.exp(-yy)
        out[idx] = h * scale * np.sum(e)
        if deriv:
            outd[idx] = -h * scale * np.sum(e * np.cosh(t))
    shape = np.shape(y)
    if deriv:
        return out.reshape(shape), outd.reshape(shape)
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# Bessel functions of real order


def bessel_jy(kappa: float, x, *, deriv=False, cfg: SeriesConfig = DEFAULT_SERIES):
    """``J_k(x), Y_k(x)`` (and x-derivatives) for ``|k| < 1``, ``Re x > 0``
    or ``x`` real positive.  Principal branches.
    """
    x = np.asarray(x, dtype=complex)
    xs = np.atleast_1d(x)
    if np.any(xs == 0):
        raise DomainError("Bessel functions of the second kind are singular at 0")
    big = np.abs(xs) > cfg.asymptotic_switch
    j = np.empty(xs.shape, complex)
    y = np.empty(xs.shape, complex)
    jd = np.empty(xs.shape, complex)
    yd = np.empty(xs.shape, complex)
    if np.any(big):
        h = _hankel_asym(kappa, xs[big], deriv=deriv)
        j[big] = 0.5 * (h.h1 + h.h2)
        y[big] = (h.h1 - h.h2) / 2j
        if deriv:
            jd[big] = 0.5 * (h.h1_x + h.h2_x)
            yd[big] = (h.h1_x - h.h2_x) / 2j
    if np.any(~big):
        xv = xs[~big]
        PRINCIPAL.arg(xv)
        q = CDD.from_complex(-0.25 * xv * xv)
        s = _series_sums(kappa, q, np.log(0.5 * xv), cfg, want_w=True, want_deriv=deriv)
        j[~big] = s.sp
        y[~big] = _w_from_sums(kappa, s)
        if deriv:
            jd[~big] = (kappa * s.sp + 2 * s.np_) / xv
            yd[~big] = _w_deriv_sum(kappa, s) / xv
    res = [j, y] + ([jd, yd] if deriv else [])
    if np.isrealobj(x) or np.all(np.imag(x) == 0):
        res = [v.real for v in res]
    res = [_out(v.reshape(x.shape), x) for v in res]
    return tuple(res)


def _hankel1_impl(kappa: float, x, deriv: bool, cfg: SeriesConfig):
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any(x == 0):
        raise DomainError("Hankel function is singular at 0")
    h = np.empty(x.shape, complex)
    hd = np.empty(x.shape, complex)
    big = np.abs(x) > cfg.asymptotic_switch
    kz = ~big & (x.imag > K_ZONE_IMAG)
    ser = ~big & ~kz
    if np.any(big):
        a = _hankel_asym(kappa, x[big], want_h2=False, deriv=deriv)
        h[big] = a.h1
        if deriv:
            hd[big] = a.h1_x
    if np.any(kz):
        c = 2.0 / (1j * np.pi) * np.exp(-0.5j * np.pi * kappa)
        k, kd = bessel_k_integral(kappa, -1j * x[kz], deriv=True)
        h[kz] = c * k
        hd[kz] = c * kd * (-1j)
    if np.any(ser):
        xv = x[ser]
        PRINCIPAL.arg(xv)
        res = bessel_jy(kappa, xv, deriv=deriv, cfg=cfg)
        h[ser] = res[0] + 1j * res[1]
        if deriv:
            hd[ser] = res[2] + 1j * res[3]
    return h, hd


def hankel1(kappa: float, x, cfg: SeriesConfig = DEFAULT_SERIES):
    """First Hankel function ``H^(1)_k(x)``, ``|k| < 1``, ``Im x >= 0``."""
    xa = np.asarray(x)
    h, _ = _hankel1_impl(kappa, xa, False, cfg)
    return _out(h.reshape(xa.shape), xa)


def hankel1_derivative(kappa: float, x, cfg: SeriesConfig = DEFAULT_SERIES):
    xa = np.asarray(x)
    _, hd = _hankel1_impl(kappa, xa, True, cfg)
    return _out(hd.reshape(xa.shape), xa)


# ---------------------------------------------------------------------------
# the entire functions chi_k and script Y


def chi(kappa, zeta, cfg: SeriesConfig = DEFAULT_SERIES):
    """``chi_k(zeta) = sum_n (-zeta/4)^n / (2^k Gamma(k+n+1) n!) = zeta^{-k/2} J_k(zeta^{1/2})``."""
    kappa = _real_order(kappa)
    zeta = np.asarray(zeta)
    zs = np.atleast_1d(zeta).astype(complex)
    out = np.empty(zs.shape, complex)
    x = np.sqrt(zs)
    big = np.abs(x) > cfg.asymptotic_switch
    if np.any(big):
        xb = x[big]
        h = _hankel_asym(kappa, xb)
        out[big] = np.exp(-kappa * np.log(xb)) * 0.5 * (h.h1 + h.h2)
    if np.any(~big):
        s = _series_sums(kappa, _as_dd(-0.25 * _maybe_real(zs[~big])), -LN2, cfg, want_w=False, want_deriv=False)
        out[~big] = s.sp
    return _finish(out, zeta)


def chi_dkappa(kappa, zeta, cfg: SeriesConfig = DEFAULT_SERIES):
    """``d chi_k(zeta) / dk``: each series term times ``-(ln 2 + psi(k+n+1))``."""
    kappa = _real_order(kappa)
    if not -1 < kappa < 1:
        raise DomainError("chi_dkappa requires |kappa| < 1")
    zeta = np.asarray(zeta)
    zs = np.atleast_1d(zeta).astype(complex)
    out = np.empty(zs.shape, complex)
    x = np.sqrt(zs)
    big = np.abs(x) > cfg.asymptotic_switch
    if np.any(big):
        xb = x[big]
        h = _hankel_asym(kappa, xb, dnu=True)
        lx = np.log(xb)
        pk = np.exp(-kappa * lx)
        out[big] = pk * (0.5 * (h.h1_nu + h.h2_nu) - lx * 0.5 * (h.h1 + h.h2))
    if np.any(~big):
        out[~big] = _chi_dkappa_series(kappa, -0.25 * _maybe_real(zs[~big]), cfg)
    return _finish(out, zeta)


def _chi_dkappa_series(kappa, q, cfg):
    qd = _as_dd(q)
    complex_mode = isinstance(qd, CDD)
    shape = np.shape(q)
    p = _lift(np.full(shape, np.exp(-kappa * LN2) * sc.rgamma(1 + kappa)), complex_mode)
    psi = DD(float(sc.digamma(1 + kappa)) + LN2)
    acc = p * (-psi)
    small = np.zeros(shape, int)
    n = 0
    while True:
        n += 1
        if n > cfg.max_terms:
            raise SeriesError("kappa-derivative series not converged", float(np.max(p.abs_hi())))
        fn = float(n)
        step = DD(fn) + kappa
        psi = psi + dd_recip(step)
        p = p * (qd * dd_recip(step * fn))
        t = p * (-psi)
        acc = acc + t
        ok = t.abs_hi() <= cfg.rel_tol * acc.abs_hi()
        small = np.where(ok, small + 1, 0)
        if np.all(small >= 2):
            return acc.to_float()


def script_y(zeta, cfg: SeriesConfig = DEFAULT_SERIES, *, derivative: bool = False):
    """``sum_{n>=1} c_n (-zeta/4)^n/(n!)^2`` with harmonic numbers ``c_n``.

    With ``derivative=True`` returns ``(Y, dY/dzeta)``.
    """
    zeta = np.asarray(zeta)
    zs = np.atleast_1d(zeta).astype(complex)
    out = np.empty(zs.shape, complex)
    dout = np.empty(zs.shape, complex)
    x = np.sqrt(zs)
    big = np.abs(x) > cfg.asymptotic_switch
    if np.any(big):
        xb = x[big]
        h = _hankel_asym(0.0, xb, deriv=derivative)
        j0 = 0.5 * (h.h1 + h.h2)
        y0 = (h.h1 - h.h2) / 2j
        lg = EULER_GAMMA + np.log(0.5 * xb)
        out[big] = lg * j0 - 0.5 * np.pi * y0
        if derivative:
            j0d = 0.5 * (h.h1_x + h.h2_x)
            y0d = (h.h1_x - h.h2_x) / 2j
            dout[big] = (j0 / xb + lg * j0d - 0.5 * np.pi * y0d) / (2 * xb)
    if np.any(~big):
        val, nsum = _script_y_series(-0.25 * _maybe_real(zs[~big]), cfg)
        out[~big] = val
        if derivative:
            zb = zs[~big]
            nz = zb != 0
            dout[~big] = np.where(nz, nsum / np.where(nz, zb, 1.0), -0.25)
    if derivative:
        return _finish(out, zeta), _finish(dout, zeta)
    return _finish(out, zeta)


def _script_y_series(q, cfg):
    """Returns the series value and ``sum n c_n t_n`` (``zeta dY/dzeta``)."""
    qd = _as_dd(q)
    cm = isinstance(qd, CDD)
    shape = np.shape(q)
    t = _lift(np.ones(shape), cm)
    c = DD(0.0)
    acc = _lift(np.zeros(shape), cm)
    nacc = _lift(np.zeros(shape), cm)
    small = np.zeros(shape, int)
    n = 0
    while True:
        n += 1
        if n > cfg.max_terms:
            raise SeriesError("script_y series not converged", float(np.max(t.abs_hi())))
        inv = dd_recip(DD(float(n)))
        c = c + inv
        t = t * (qd * (inv * inv))
        term = t * c
        acc = acc + term
        nacc = nacc + term * float(n)
        ok = term.abs_hi() <= cfg.rel_tol * acc.abs_hi()
        small = np.where(ok, small + 1, 0)
        if np.all(small >= 2):
            return acc.to_float(), nacc.to_float()


def _real_order(kappa) -> float:
    if np.iscomplexobj(kappa) and np.imag(kappa) != 0:
        raise DomainError("complex order is not supported")
    kappa = float(np.real(kappa))
    if kappa <= -1 and kappa == round(kappa):
        raise DomainError("negative integer order is excluded")
    return kappa


def _maybe_real(z):
    return z.real if np.all(z.imag == 0) else z


def _finish(out, like):
    if not np.iscomplexobj(like):
        out = out.real
    return _out(out.reshape(np.shape(like)), like)
