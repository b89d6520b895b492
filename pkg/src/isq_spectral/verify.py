"""Acceptance checks, one function per property, each returning a CheckResult.

Every check reports the measured worst-case defect next to its threshold.
``run_all`` is what ``isq-spectral verify`` and the acceptance tests call.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .eigen_solutions import (ExtensionParams, eval_u, eval_u_theta, eval_v, eval_w, ode_residual,
                              wronskian_at)
from .special_functions import LOWER_CUT, cut_power
from .spectral_measures import (atom_weight, bound_state_energy, build_measure, density, has_atom,
                                m_limit_check, measure_integral, residue_weight, v_kappa_density)
from .transforms import (EnergyGrid, PolyBump, bound_state_norm, diag_defect, forward, inverse,
                         parseval_report)

THREE_POINTS = (
    ExtensionParams(0.0, math.pi / 2),
    ExtensionParams.from_offset(0.5, 0.0),
    ExtensionParams(-0.3, 1.2),
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: measured {self.measured:.3e} (threshold {self.threshold:.1e}, {self.seconds:.1f}s)"

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class VerifyConfig:
    """Sample sizes and thresholds of the acceptance suite."""

    seed: int = 0
    ode_samples: int = 50
    ode_tol: float = 1e-7
    ode_step: float = 1e-3
    wronskian_tol: float = 1e-9
    m_limit_samples: int = 30
    m_limit_tol: float = 1e-6
    residue_tol: float = 1e-6
    parseval_tol: float = 1e-4
    parseval_e_max: float = 400.0
    roundtrip_tol: float = 1e-4
    roundtrip_e_max: tuple = (100.0, 200.0, 400.0)
    diag_tol: float = 1e-6
    bound_norm_tol: float = 1e-6
    continuity_gap_tol: float = 1e-4
    continuity_solution_tol: float = 1e-6
    hankel_tol: float = 1e-12
    sine_kernel_tol: float = 1e-9
    symmetry_tol: float = 1e-10


def _timed(fn: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


@_timed
def check_ode(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """Residual of the radial equation for u_theta at random (kappa, theta, E, r)."""
    rng = np.random.default_rng(cfg.seed)
    worst, arg = 0.0, None
    for _ in range(cfg.ode_samples):
        k = rng.uniform(-0.95, 0.95)
        th = rng.uniform(0.0, math.pi)
        E = rng.uniform(-5.0, 25.0)
        r = rng.uniform(0.05, 5.0)
        p = ExtensionParams(k, th)
        res = ode_residual(k, E, lambda rr: eval_u_theta(p, E, rr), r, cfg.ode_step)
        if res > worst:
            worst, arg = res, dict(kappa=k, theta=th, E=E, r=r)
    return CheckResult("ode_residual", worst <= cfg.ode_tol, worst, cfg.ode_tol, {"worst_at": arg})


# z values keep |Im sqrt(z)| * 10 moderate so the r = 10 Wronskians are not
# dominated by exponential cancellation.
WRONSKIAN_KAPPAS = (0.0, 4e-3, -9e-3, 0.3, -0.75)
WRONSKIAN_ZS = (1.0 + 0.0j, 3.0 + 0.5j, -0.05 + 0.0j, 0.2 + 0.1j)
WRONSKIAN_RS = (1e-2, 1.0, 10.0)


@_timed
def check_wronskians(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """W(u,w) = 2/pi, W(u_t, u_{t-pi/2}) = -2/pi and W(v,u) = z^{-k/2} e^{i pi k/2}."""
    worst = {"u_w": 0.0, "u_theta": 0.0, "v_u": 0.0}
    for k in WRONSKIAN_KAPPAS:
        p = ExtensionParams(k, 0.9)
        q = p.shifted(-math.pi / 2)
        for z in WRONSKIAN_ZS:
            r = np.array(WRONSKIAN_RS)
            u = eval_u(k, z, r)
            vals = {
                "u_w": (wronskian_at(u, eval_w(k, z, r)), 2 / math.pi),
                "u_theta": (wronskian_at(eval_u_theta(p, z, r), eval_u_theta(q, z, r)), -2 / math.pi),
                "v_u": (wronskian_at(eval_v(k, z, r), u),
                        cut_power(z, -k / 2, LOWER_CUT) * np.exp(0.5j * math.pi * k)),
            }
            for name, (got, want) in vals.items():
                worst[name] = max(worst[name], _rel(got, want))
    m = max(worst.values())
    return CheckResult("wronskian_identities", m <= cfg.wronskian_tol, m, cfg.wronskian_tol, worst)


def _atom_free_negative_energy(p: ExtensionParams, rng) -> float:
    eb = bound_state_energy(p)
    while True:
        E = -rng.uniform(0.2, 10.0)
        if eb is None or abs(E - eb) > 0.5 * abs(eb):
            return E


@_timed
def check_m_limit(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """eta -> 0 limit of Im M(E + i eta): the density for E > 0, zero below 0 off the atom."""
    rng = np.random.default_rng(cfg.seed + 3)
    worst_pos = worst_neg = 0.0
    for _ in range(cfg.m_limit_samples):
        p = ExtensionParams(rng.uniform(-0.95, 0.95), rng.uniform(0.0, math.pi))
        E = rng.uniform(0.2, 20.0)
        lim, _ = m_limit_check(p, E)
        worst_pos = max(worst_pos, abs(lim - float(density(p, E))))
        En = _atom_free_negative_energy(p, rng)
        lim, _ = m_limit_check(p, En)
        worst_neg = max(worst_neg, abs(lim))
    m = max(worst_pos, worst_neg)
    return CheckResult("m_boundary_limit", m <= cfg.m_limit_tol, m, cfg.m_limit_tol,
                       {"positive_E": worst_pos, "negative_E": worst_neg})


ATOM_SAMPLES = (
    (0.0, math.pi / 2), (1e-3, 1.0), (-1e-3, 2.0), (0.0, 0.8), (0.5, math.pi / 2),
    (-0.4, 1.3), (0.7, 1.5), (0.25, 2.5), (-0.9, 1.6), (0.1, 0.4),
)


@_timed
def check_residues(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """pi * (contour residue of M at E_b) against the closed-form atom weight."""
    worst, per = 0.0, {}
    for k, th in ATOM_SAMPLES:
        p = ExtensionParams(k, th)
        if not has_atom(p):
            raise AssertionError(f"sample {(k, th)} carries no atom")
        aw = atom_weight(p)
        err = abs(residue_weight(p) - aw) / aw
        per[f"{k},{th:.4f}"] = err
        worst = max(worst, err)
    return CheckResult("atom_residue", worst <= cfg.residue_tol, worst, cfg.residue_tol, per)


PARSEVAL_BUMPS = (PolyBump(1.0, 2.0, 3), PolyBump(0.5, 3.0, 4), PolyBump(0.5, 4.5, 4))
ROUNDTRIP_BUMP = PolyBump(0.5, 4.5, 4)


def _roundtrip_defect(p, psi, e_max):
    phi = forward(p, psi, EnergyGrid.build(e_max))
    return float(np.max(np.abs(inverse(p, phi, psi.nodes) - psi.values)))


@_timed
def check_unitarity(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """Parseval defect at e_max = 400 for three bumps and a round trip that improves with e_max."""
    parseval, roundtrip = {}, {}
    worst_p = 0.0
    ok_rt = True
    worst_rt = 0.0
    for p in THREE_POINTS:
        key = f"{p.kappa},{p.theta:.4f}"
        for b in PARSEVAL_BUMPS:
            rep = parseval_report(p, b.grid(), cfg.parseval_e_max)
            parseval[f"{key}|[{b.a},{b.b}]^{b.power}"] = {"defect": rep.defect, "tail": rep.tail}
            worst_p = max(worst_p, rep.defect)
        g = ROUNDTRIP_BUMP.grid()
        d = [_roundtrip_defect(p, g, em) for em in cfg.roundtrip_e_max]
        roundtrip[key] = d
        ok_rt &= all(x > y for x, y in zip(d, d[1:])) and d[-1] <= cfg.roundtrip_tol
        worst_rt = max(worst_rt, d[-1])
    passed = worst_p <= cfg.parseval_tol and ok_rt
    return CheckResult("unitarity", passed, max(worst_p, worst_rt), cfg.parseval_tol,
                       {"parseval": parseval, "roundtrip_sup": roundtrip})


DIAG_BUMP = PolyBump(1.0, 2.0, 4)
DIAG_ENERGIES = (0.5, 1.0, 2.0, 5.0)


@_timed
def check_diagonalization(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """U(h psi) = E U psi for a C^3 bump at the three parameter points."""
    per = {f"{p.kappa},{p.theta:.4f}": diag_defect(p, DIAG_BUMP.grid(), DIAG_ENERGIES) for p in THREE_POINTS}
    m = max(per.values())
    return CheckResult("diagonalization", m <= cfg.diag_tol, m, cfg.diag_tol, per)


@_timed
def check_bound_state_norm(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """||u_theta(E_b)||^2 = 1/atom_weight, expected 2/pi^2 and 1/(2 pi)."""
    per = {}
    for p, expected in ((ExtensionParams(0.0, math.pi / 2), 2 / math.pi**2),
                        (ExtensionParams(0.5, math.pi / 2), 1 / (2 * math.pi))):
        n = bound_state_norm(p)
        per[f"{p.kappa},{p.theta:.4f}"] = {
            "norm2": n, "expected": expected, "inv_weight": 1 / atom_weight(p),
            "rel_err": max(abs(n - expected), abs(n * atom_weight(p) - 1) * expected) / expected}
    m = max(v["rel_err"] for v in per.values())
    return CheckResult("bound_state_norm", m <= cfg.bound_norm_tol, m, cfg.bound_norm_tol, per)


def energy_bump(E):
    """C^2 test function on [-4, 6] used for measure integrals."""
    E = np.asarray(E, dtype=float)
    s = np.clip((E + 4.0) * (6.0 - E) / 25.0, 0.0, None)
    return s**3


@_timed
def check_kappa_continuity(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """int phi dV and u_theta converge to their kappa = 0 values along kappa = +-10^-k."""
    gaps = {}
    ok = True
    for th in (math.pi / 2, 0.7, 2.6):
        ref = measure_integral(build_measure(ExtensionParams(0.0, th)), energy_bump, -4.0, 6.0)
        for sign in (1, -1):
            seq = []
            for k in range(2, 6):
                val = measure_integral(build_measure(ExtensionParams(sign * 10.0**-k, th)), energy_bump, -4.0, 6.0)
                seq.append(abs(val - ref))
            gaps[f"theta={th:.4f},sign={sign}"] = seq
            ok &= all(b < a for a, b in zip(seq, seq[1:])) and seq[-1] <= cfg.continuity_gap_tol
    gap5 = max(s[-1] for s in gaps.values())

    # u grows like exp(sqrt|E| r) for E < 0; the grid keeps |u| at most O(100)
    E = np.array([-1.0, -0.3, 0.1, 1.0, 7.0, 20.0])[:, None]
    r = np.array([0.01, 0.2, 1.0, 3.0, 6.0])[None, :]
    sol = 0.0
    for th in (math.pi / 2, 0.7, 2.6):
        u0 = eval_u_theta(ExtensionParams(0.0, th), E, r).value
        for k in (1e-5, -1e-5):
            sol = max(sol, float(np.max(np.abs(eval_u_theta(ExtensionParams(k, th), E, r).value - u0))))
    ok &= sol <= cfg.continuity_solution_tol
    ratio = max(gap5 / cfg.continuity_gap_tol, sol / cfg.continuity_solution_tol)
    return CheckResult("kappa_zero_continuity", ok, ratio, 1.0,
                       {"measure_gaps": gaps, "solution_gap": sol,
                        "measured_is": "worst ratio to the part's own threshold"})


def sine_kernel_transform(bump: PolyBump, E):
    """Closed-form ``int sqrt(2/pi) sin(k r)/k psi(r) dr`` for a polynomial bump.

    For ``k b >= 4`` integration by parts terminates because the bump is a
    polynomial: ``int psi sin(kr) = sum_j (-1)^j [psi^(j) A_{j+1}]_a^b`` with
    ``A_j(r) = sin(k r - j pi/2)/k^j``.  Below that the endpoint terms cancel,
    so the sine is expanded instead and the odd moments of ``psi`` are taken
    with a Gauss-Legendre rule that is exact for the polynomial integrands.
    """
    k = np.atleast_1d(np.sqrt(np.asarray(E, dtype=float)))
    poly = bump.poly
    x, w = np.polynomial.legendre.leggauss(64)
    h = 0.5 * (bump.b - bump.a)
    rr = bump.a + h * (x + 1)
    wpsi = h * w * poly(rr)
    total = np.empty_like(k)
    for i, kk in enumerate(k):
        if kk * bump.b < 4.0:
            n = np.arange(25)
            terms = (-1.0) ** n * kk ** (2 * n + 1) / np.array([math.factorial(2 * j + 1) for j in n], float)
            moments = np.array([np.sum(wpsi * rr ** (2 * j + 1)) for j in n])
            total[i] = np.sum(terms * moments)
            continue
        acc = 0.0
        for j in range(poly.degree() + 1):
            dj = poly.deriv(j) if j else poly
            for r, sign in ((bump.b, 1.0), (bump.a, -1.0)):
                acc += sign * (-1) ** j * dj(r) * math.sin(kk * r - (j + 1) * math.pi / 2) / kk ** (j + 1)
        total[i] = acc
    return math.sqrt(2 / math.pi) * total / k


@_timed
def check_hankel(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """theta = theta_k reproduces the Hankel measure and transform; kappa = 1/2 gives the sine kernel."""
    E = np.geomspace(1e-3, 400.0, 60)
    dens = 0.0
    for k in (0.0, 0.5, -0.3, 0.9, -0.95, 1e-4):
        p = ExtensionParams.from_offset(k, 0.0)
        m = build_measure(p)
        if m.atom is not None:
            dens = math.inf
        dens = max(dens, _rel(density(p, E), v_kappa_density(k, E)))
    psi = PolyBump(1.0, 2.0, 3).grid()
    e_pts = np.array([0.3, 1.0, 4.0, 17.0, 60.0, 250.0])
    path = 0.0
    for k in (0.0, 0.5, -0.3, 0.9):
        p = ExtensionParams.from_offset(k, 0.0)
        a = forward(p, psi, e_pts).values
        b = forward(p, psi, e_pts, kernel="u").values
        path = max(path, float(np.max(np.abs(a - b))))
    bump = PolyBump(1.0, 2.0, 3)
    e_sine = np.array([0.5, 1.0, 3.0, 10.0, 40.0, 150.0, 400.0])
    got = forward(ExtensionParams.from_offset(0.5, 0.0), bump.grid(), e_sine).values
    sine = float(np.max(np.abs(got - sine_kernel_transform(bump, e_sine))))
    ratio = max(dens / cfg.hankel_tol, path / cfg.hankel_tol, sine / cfg.sine_kernel_tol)
    return CheckResult("hankel_specialization", ratio <= 1.0, ratio, 1.0,
                       {"density_rel": dens, "path_abs": path, "sine_kernel_abs": sine,
                        "measured_is": "worst ratio to the part's own threshold"})


@_timed
def check_symmetries(cfg: VerifyConfig = VerifyConfig()) -> CheckResult:
    """theta -> theta + pi and kappa -> -kappa symmetries of the measure and of u_theta."""
    rng = np.random.default_rng(cfg.seed + 10)
    E = np.concatenate([np.geomspace(1e-3, 100, 25), -np.geomspace(0.1, 50, 8)])
    r = np.geomspace(0.02, 6.0, 12)
    worst = {"measure_period": 0.0, "u_sign_flip": 0.0, "u_kappa_even": 0.0, "measure_kappa_even": 0.0}
    for _ in range(12):
        k = rng.uniform(-0.9, 0.9)
        th = rng.uniform(0.0, math.pi)
        p = ExtensionParams(k, th)
        m0, m1, mk = build_measure(p), build_measure(p.shifted(math.pi)), build_measure(ExtensionParams(-k, th))
        ep = E[E > 0]
        d0 = density(p, ep)
        worst["measure_period"] = max(worst["measure_period"], _rel(density(p.shifted(math.pi), ep), d0),
                                      _atom_gap(m0, m1))
        worst["measure_kappa_even"] = max(worst["measure_kappa_even"], _rel(density(ExtensionParams(-k, th), ep), d0),
                                          _atom_gap(m0, mk))
        u = eval_u_theta(p, E[:, None], r[None, :]).value
        scale = 1 + np.abs(u)
        worst["u_sign_flip"] = max(worst["u_sign_flip"], float(np.max(
            np.abs(eval_u_theta(p.shifted(math.pi), E[:, None], r[None, :]).value + u) / scale)))
        worst["u_kappa_even"] = max(worst["u_kappa_even"], float(np.max(
            np.abs(eval_u_theta(ExtensionParams(-k, th), E[:, None], r[None, :]).value - u) / scale)))
    m = max(worst.values())
    return CheckResult("symmetries", m <= cfg.symmetry_tol, m, cfg.symmetry_tol, worst)


def _atom_gap(a, b) -> float:
    if (a.atom is None) != (b.atom is None):
        return math.inf
    if a.atom is None:
        return 0.0
    return max(abs(a.atom.energy - b.atom.energy) / abs(a.atom.energy),
               abs(a.atom.weight - b.atom.weight) / a.atom.weight)


CHECKS: dict[str, Callable[[VerifyConfig], CheckResult]] = {
    "ode": check_ode,
    "wronskian": check_wronskians,
    "m_limit": check_m_limit,
    "residue": check_residues,
    "unitarity": check_unitarity,
    "diagonalization": check_diagonalization,
    "bound_norm": check_bound_state_norm,
    "continuity": check_kappa_continuity,
    "hankel": check_hankel,
    "symmetry": check_symmetries,
}


def run_all(cfg: VerifyConfig = VerifyConfig(), only=None) -> list[CheckResult]:
    names = list(CHECKS) if not only else list(only)
    return [CHECKS[n](cfg) for n in names]
