"""m-functions, spectral densities, bound states and atom weights.

Normalisation: the spectral measure is ``Im M(E + i0) dE`` on ``E > 0`` plus
``pi * A * delta`` at the pole, where ``M ~ A/(E_b - z)`` near ``E_b``.  The
density is evaluated through ``1/t`` with the sinc form of ``Phi``, which is
regular at ``kappa = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import special_functions as sf
from .eigen_solutions import ExtensionParams, SolutionEval, eval_u_theta, eval_v, wronskian_at
from .exceptions import BoundaryError, ConvergenceError, PoleError

BOUNDARY_TOL = 1e-12
# sin(theta -+ theta_k) below this counts as exactly on the closed no-atom interval
_EXACT_EDGE = 1e-15


@dataclass(frozen=True)
class Atom:
    energy: float
    weight: float


@dataclass(frozen=True)
class MFunctionValue:
    z: complex
    m: complex


@dataclass(frozen=True)
class SpectralMeasure:
    params: ExtensionParams
    atom: Atom | None

    def density(self, E):
        return density(self.params, E)

    def integrate(self, phi: Callable, e_lo: float, e_hi: float, tol: float = 1e-12) -> float:
        return measure_integral(self, phi, e_lo, e_hi, tol)


# ---------------------------------------------------------------------------
# m-function


def _c_psi(kappa: float, ell):
    """``C = cosh(k l/2)/cos(pi k/2)`` and ``Psi = -(l/pi) shc(k l/2)/sinc(pi k/2)``."""
    c = np.cosh(0.5 * kappa * ell) / sf.cospi(0.5 * kappa)
    psi = -(ell / np.pi) * sf.shc(0.5 * kappa * ell) / sf.sinc_pi(0.5 * kappa)
    return c, psi


def m_function(p: ExtensionParams, z, *, check_pole: bool = True):
    """``M_{k,theta}(z)`` for ``z`` in the plane cut along arg 3pi/2.

    Uses ``l = log z - i pi`` so that ``e^{-i pi k} z^k = e^{k l}``; dividing
    numerator and denominator of the closed form by ``2 sin(theta_k) e^{k l/2}``
    leaves combinations that are entire in ``k``.
    """
    z = np.asarray(z, dtype=complex)
    if check_pole:
        try:
            eb = bound_state_energy(p)
        except BoundaryError:
            eb = None  # the pole has left through 0 or -inf; M itself is regular
        if eb is not None and np.any(np.abs(z - eb) < 1e-12):
            raise PoleError(f"z within 1e-12 of the pole at {eb}")
    ell = sf.cut_log(z, sf.LOWER_CUT) - 1j * np.pi
    c, psi = _c_psi(p.kappa, ell)
    ct, st = math.cos(p.theta), math.sin(p.theta)
    out = 0.5 * (ct * psi - st * c) / (ct * c + st * psi)
    return out[()] if out.ndim == 0 else out


def wronskian_v_u_theta(p: ExtensionParams, z):
    """Closed-form ``W(v, u_theta)``: the quotient form for ``k != 0`` and the
    logarithmic form at ``k = 0``."""
    z = np.asarray(z, dtype=complex)
    k = p.kappa
    if k == 0:
        return math.cos(p.theta) + (1j - sf.cut_log(z) / np.pi) * math.sin(p.theta)
    tp, tm = p.theta + p.theta_kappa, p.theta - p.theta_kappa
    zk = sf.cut_power(z, k)
    pre = sf.cut_power(z, -k / 2) * np.exp(0.5j * np.pi * k) / math.sin(np.pi * k)
    return pre * (math.sin(tp) - np.exp(-1j * np.pi * k) * zk * math.sin(tm))


def m_function_wronskian(p: ExtensionParams, z, r: float | None = None):
    """``-W(v, u_{theta - pi/2}) / (2 W(v, u_theta))``.

    With ``r=None`` the closed-form Wronskians are used; otherwise the
    Wronskians are evaluated numerically from the solutions at radius ``r``.
    """
    q = p.shifted(-math.pi / 2)
    if r is None:
        return -0.5 * wronskian_v_u_theta(q, z) / wronskian_v_u_theta(p, z)
    z = np.asarray(z, dtype=complex)
    v = eval_v(p.kappa, z, r)
    a = wronskian_at(v, eval_u_theta(q, z, r))
    b = wronskian_at(v, eval_u_theta(p, z, r))
    return -0.5 * a / b


# ---------------------------------------------------------------------------
# densities


def phi(kappa: float, E):
    """``Phi(k, E) = -(log E/(pi sinc(pi k))) sinh(k log E/2)/(k log E/2)``."""
    E = np.asarray(E, dtype=float)
    out = sf.phi_log(kappa, np.log(E))
    return out[()] if np.ndim(out) == 0 else out


def t_function(p: ExtensionParams, E):
    """``t_{k,theta}(E)``, the reciprocal density, as a sum of squares.

    Grouping the expanded form by ``Phi sin(theta)`` gives
    ``t = 2 (X^2 + sin(theta+) sin(theta-)/cos^2(theta_k))`` with
    ``X = Phi sin(theta) cos(theta_k) + cos(theta) cosh(k log E/2)/cos(theta_k)``.
    This avoids the ``E^{+-k}`` cancellation of the expanded form at large
    ``|k log E|`` and is exact at ``theta = theta_k`` (``t = 2 E^{-k}``).
    """
    E = np.asarray(E, dtype=float)
    k, th = p.kappa, p.theta
    f = phi(k, E)
    half = 0.5 * k * np.log(E)
    ck = sf.cospi(0.5 * k)
    x = f * (math.sin(th) * ck) + math.cos(th) * np.cosh(half) / ck
    sp, sm = math.sin(th + p.theta_kappa), math.sin(th - p.theta_kappa)
    return 2 * (x * x + sp * sm / (ck * ck))


def t_function_expanded(p: ExtensionParams, E):
    """``2 + Phi^2 (1 - cos 2theta cos pi k) + Phi (E^{-k/2} + E^{k/2}) sin 2theta``; oracle for
    :func:`t_function`."""
    E = np.asarray(E, dtype=float)
    f = phi(p.kappa, E)
    k = p.kappa
    s = np.exp(-0.5 * k * np.log(E)) + np.exp(0.5 * k * np.log(E))
    return 2 + f * f * (1 - math.cos(2 * p.theta) * sf.cospi(k)) + f * s * math.sin(2 * p.theta)


def density(p: ExtensionParams, E):
    """Absolutely continuous density ``1/t_{k,theta}(E)`` on ``E > 0``."""
    E = np.asarray(E, dtype=float)
    if np.any(E <= 0):
        raise sf.DomainError("density is defined for E > 0")
    out = 1.0 / t_function(p, E)
    return out[()] if out.ndim == 0 else out


def density_quotient_form(p: ExtensionParams, E):
    """Reference density from the ``sin(theta +- theta_k)`` quotient (``k != 0``)
    or the logarithmic ``k = 0`` form.  Test oracle only."""
    E = np.asarray(E, dtype=float)
    k, th = p.kappa, p.theta
    if k == 0:
        return 0.5 / ((math.cos(th) - np.log(E) / np.pi * math.sin(th)) ** 2 + math.sin(th) ** 2)
    sp, sm = math.sin(th + p.theta_kappa), math.sin(th - p.theta_kappa)
    num = 0.5 * math.sin(np.pi * k) ** 2
    den = E ** (-k) * sp * sp - 2 * math.cos(np.pi * k) * sp * sm + E**k * sm * sm
    return num / den


def v_kappa_density(kappa: float, E):
    """``(1/2) Theta(E) E^k``."""
    if not kappa > -1:
        raise sf.DomainError("kappa must exceed -1")
    E = np.asarray(E, dtype=float)
    out = np.where(E > 0, 0.5 * np.abs(E) ** kappa, 0.0)
    return out[()] if out.ndim == 0 else out


def density_envelope(alpha: float, E):
    """Upper bound ``(E^a + E^-a)/(2 sin^2 pi a)`` valid for ``|k| <= a``."""
    E = np.asarray(E, dtype=float)
    return (E**alpha + E ** (-alpha)) / (2 * math.sin(math.pi * alpha) ** 2)


# ---------------------------------------------------------------------------
# bound state


def _g(y: float) -> float:
    if abs(y) <= 1e-3:
        y2 = y * y
        return 2 + 2 * y2 / 3 + 2 * y2 * y2 / 5
    return math.log((1 + y) / (1 - y)) / y


def has_atom(p: ExtensionParams) -> bool:
    sp = math.sin(p.theta + p.theta_kappa)
    sm = math.sin(p.theta - p.theta_kappa)
    edge = min(abs(sp), abs(sm))
    if edge <= _EXACT_EDGE:
        return False
    if edge < BOUNDARY_TOL:
        raise BoundaryError(f"theta={p.theta} is within 1e-12 of +-theta_kappa (mod pi)")
    return sp * sm > 0


def bound_state_energy(p: ExtensionParams) -> float | None:
    """Eigenvalue ``E_{k,theta} < 0`` or ``None`` when there is no bound state."""
    if not has_atom(p):
        return None
    tk = p.theta_kappa
    cot = math.cos(p.theta) / math.sin(p.theta)
    y = cot * math.tan(tk)
    sinc_tk = float(sf.sinc_c(tk))
    expo = math.pi * cot / (2 * math.cos(tk)) * sinc_tk * _g(y)
    # theta near 0 or pi pushes the level below the double range
    return -math.exp(expo) if expo < 709.0 else -math.inf


def atom_weight(p: ExtensionParams) -> float | None:
    """``pi^2 sinc(pi k) |E| / (2 sin(theta+theta_k) sin(theta-theta_k))``."""
    e = bound_state_energy(p)
    if e is None:
        return None
    sp = math.sin(p.theta + p.theta_kappa)
    sm = math.sin(p.theta - p.theta_kappa)
    if math.isinf(e):
        return math.inf
    return math.pi**2 * float(sf.sinc_pi(p.kappa)) * abs(e) / (2 * sp * sm)


def atom_weight_phi_form(kappa: float, abs_e: float) -> float:
    """Atom weight written through ``Phi(k, |E|)``; used as a cross-check."""
    f = float(phi(kappa, abs_e))
    return 0.5 * abs_e * math.pi**2 * float(sf.sinc_pi(kappa)) * (f * f + 1 / math.cos(math.pi * kappa / 2) ** 2)


def bound_state_function(p: ExtensionParams, r, *, derivative: bool = True) -> SolutionEval:
    """``u_theta(E_b | r)``, accurate in the exponentially small tail.

    At ``E_b`` the combination defining ``u_theta`` cancels down to the
    decaying solution, losing all digits once ``sqrt|E_b| r`` exceeds about 8.
    Beyond ``sqrt|E_b| r = 1`` the function is taken as ``c v(E_b|r)`` with
    ``c`` matched at that radius.
    """
    eb = bound_state_energy(p)
    if eb is None:
        raise sf.DomainError("no bound state for these parameters")
    if math.isinf(eb):
        raise sf.DomainError("bound state energy is outside the double range")
    r = np.asarray(r, dtype=float)
    r0 = 1.0 / math.sqrt(-eb)
    c = complex(eval_u_theta(p, eb, r0, derivative=False).value / eval_v(p.kappa, complex(eb), r0).value)
    near = r <= r0
    out_v = np.empty(r.shape)
    out_d = np.empty(r.shape) if derivative else None
    if np.any(near):
        s = eval_u_theta(p, eb, r[near], derivative=derivative)
        out_v[near] = s.value
        if derivative:
            out_d[near] = s.d_r
    if np.any(~near):
        s = eval_v(p.kappa, complex(eb), r[~near])
        out_v[~near] = np.real(c * s.value)
        if derivative:
            out_d[~near] = np.real(c * s.d_r)
    if r.ndim == 0:
        return SolutionEval(out_v[()], None if out_d is None else out_d[()])
    return SolutionEval(out_v, out_d)


def build_measure(p: ExtensionParams) -> SpectralMeasure:
    e = bound_state_energy(p)
    atom = None if e is None else Atom(e, atom_weight(p))
    return SpectralMeasure(p, atom)


# ---------------------------------------------------------------------------
# verification procedures


def m_limit_check(p: ExtensionParams, E: float, etas: Sequence[float] = (1e-2, 1e-3, 1e-4)):
    """Extrapolate ``Im M(E + i eta)`` to ``eta -> 0`` by Richardson's method.

    ``M`` continues analytically across the real axis away from 0 and the
    pole, so ``Im M(E + i eta)`` is a power series in ``eta``.  The first
    Richardson level removes the ``eta`` term from consecutive pairs and the
    second level the ``eta^2`` term.  Returns ``(limit, error_estimate)``.

    Raises ConvergenceError when the table does not contract, i.e. the
    first-level extrapolants differ by more than the coarsest raw difference;
    the message carries the observed order of the raw sequence.
    """
    etas = np.asarray(etas, dtype=float)
    if etas.size < 3 or np.any(np.diff(etas) >= 0) or np.any(etas < 1e-6):
        raise ValueError("need at least three decreasing etas >= 1e-6")
    eb = bound_state_energy(p)
    if E == 0 or (eb is not None and E == eb):
        raise sf.DomainError("E must avoid 0 and the bound state")
    h = etas[-3:]
    f = np.imag(m_function(p, E + 1j * h))
    d = np.diff(f)
    noise = 1e-13 * (1 + np.max(np.abs(f)))
    if abs(d[1]) <= noise:
        return float(f[-1]), float(abs(d[1]) + noise)
    e1 = f[1] + d[0] / (h[0] / h[1] - 1)
    e2 = f[2] + d[1] / (h[1] / h[2] - 1)
    if abs(e2 - e1) > abs(d[0]) + noise:
        order = math.log(abs(d[0] / d[1])) / math.log(h[1] / h[2]) if d[0] else float("nan")
        raise ConvergenceError(
            f"Richardson table does not contract (observed order {order:.3g}): Im M = {f.tolist()}")
    limit = e2 + (e2 - e1) / (h[0] / h[2] - 1)
    return float(limit), float(abs(limit - e2) + noise)


def residue_weight(p: ExtensionParams, radius: float = 1e-4, n: int = 64) -> float:
    """``pi * A`` with ``A = -(1/2 pi i) \\oint M dz`` around the pole.

    The circle radius is taken relative to ``|E_b|`` (equal to ``radius`` when
    ``|E_b| = 1``) so the contour stays well inside the analytic annulus.
    """
    eb = bound_state_energy(p)
    if eb is None:
        raise sf.DomainError("no bound state for these parameters")
    if math.isinf(eb):
        raise sf.DomainError("bound state energy is outside the double range")
    rho = radius * abs(eb)
    t = 2 * np.pi * np.arange(n) / n
    dz = rho * np.exp(1j * t)
    m = m_function(p, eb + dz, check_pole=False)
    integral = np.mean(m * dz) * 2j * np.pi  # trapezoid in t of M(z) i dz
    return float(np.real(-integral / (2j * np.pi)) * np.pi)


def measure_integral(measure: SpectralMeasure, phi_fn: Callable, e_lo: float, e_hi: float, tol: float = 1e-12) -> float:
    """``int phi dV`` for ``phi`` supported in ``[e_lo, e_hi]``: a.c. part by
    adaptive quadrature plus the atom term."""
    from .quadrature import integrate

    total = 0.0
    lo = max(e_lo, 0.0)
    if e_hi > lo:
        val, _ = integrate(lambda e: phi_fn(e) * density(measure.params, e), lo, e_hi, tol, graded="left" if lo == 0 else None)
        total += val
    if measure.atom is not None and e_lo <= measure.atom.energy <= e_hi:
        total += measure.atom.weight * float(phi_fn(np.array([measure.atom.energy]))[0])
    return total
