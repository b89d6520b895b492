"""Forward and inverse eigenfunction transforms, Parseval and diagonalisation checks.

The forward transform ``(U psi)(E) = int u_theta(E|r) psi(r) dr`` is computed
for all requested energies in one adaptive pass (the integrand is vector
valued); the initial panel count follows the oscillation wavelength
``2 pi/sqrt(E_max)``.  The inverse is a fixed-rule sum over the energy nodes
weighted by the density, plus the atom term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .eigen_solutions import ExtensionParams, eval_u, eval_u_theta, q_kappa
from .exceptions import InconclusiveTruncation
from .quadrature import gauss_legendre, integrate
from .spectral_measures import atom_weight, bound_state_energy, bound_state_function, density

__all__ = [
    "EnergyGrid", "GridFunction", "PolyBump", "SpectralFunction", "apply_hamiltonian",
    "bound_state_norm", "diag_defect", "forward", "integrate", "inverse", "parseval_defect",
    "parseval_polarization", "parseval_report",
]


@dataclass(frozen=True)
class GridFunction:
    """Samples of a function on ``[a, b]`` with quadrature weights.

    ``func`` (and ``d2`` for the second derivative) are optional closed forms
    used by the adaptive routines; without them the node rule is used.
    """

    support: tuple[float, float]
    nodes: np.ndarray
    weights: np.ndarray
    values: np.ndarray
    func: Callable | None = field(default=None, compare=False, repr=False)
    d2: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        a, b = self.support
        if not 0 < a < b:
            raise ValueError("support must satisfy 0 < a < b")
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be positive")

    @classmethod
    def from_function(cls, f: Callable, a: float, b: float, *, panels: int = 8, order: int = 16,
                      d2: Callable | None = None) -> "GridFunction":
        nodes, weights = gauss_legendre(np.linspace(a, b, panels + 1), order)
        return cls((a, b), nodes, weights, np.asarray(f(nodes), dtype=float), f, d2)

    def __call__(self, r):
        if self.func is None:
            raise ValueError("no closed form attached")
        return self.func(r)

    def norm2(self, tol: float = 1e-14) -> float:
        if self.func is None:
            return float(np.sum(self.weights * self.values**2))
        a, b = self.support
        return integrate(lambda r: self.func(r) ** 2, a, b, tol)[0]

    def inner(self, other: "GridFunction", tol: float = 1e-14) -> float:
        a = min(self.support[0], other.support[0])
        b = max(self.support[1], other.support[1])
        return integrate(lambda r: self.func(r) * other.func(r), a, b, tol, n_init=8)[0]

    def scaled(self, c: float) -> "GridFunction":
        f = None if self.func is None else (lambda r, g=self.func: c * g(r))
        d2 = None if self.d2 is None else (lambda r, g=self.d2: c * g(r))
        return GridFunction(self.support, self.nodes, self.weights, c * self.values, f, d2)


@dataclass(frozen=True)
class PolyBump:
    """``N ((r-a)(b-r))^power`` on ``[a, b]``, zero outside, unit L2 norm.

    It is ``C^{power-1}``; derivatives are exact polynomial derivatives.
    """

    a: float
    b: float
    power: int = 3
    amplitude: float = 1.0

    @property
    def poly(self) -> Polynomial:
        # work in x in [-1, 1] where (r-a)(b-r) = c (1 - x^2): small coefficients
        half = 0.5 * (self.b - self.a)
        unit = Polynomial([1.0, 0.0, -1.0]) ** self.power
        sq = (unit * unit).integ()
        norm = half ** (2 * self.power) * math.sqrt(half * (sq(1.0) - sq(-1.0)))
        coef = (unit * (self.amplitude / norm) * half ** (2 * self.power)).coef
        return Polynomial(coef, domain=[self.a, self.b], window=[-1.0, 1.0])

    def derivative(self, r, n: int = 0):
        r = np.asarray(r, dtype=float)
        p = self.poly.deriv(n) if n else self.poly
        inside = (r > self.a) & (r < self.b)
        return np.where(inside, p(r), 0.0)

    def __call__(self, r):
        return self.derivative(r, 0)

    def grid(self, panels: int = 8, order: int = 16) -> GridFunction:
        return GridFunction.from_function(self, self.a, self.b, panels=panels, order=order,
                                          d2=lambda r: self.derivative(r, 2))


@dataclass(frozen=True)
class SpectralFunction:
    e_nodes: np.ndarray
    e_weights: np.ndarray
    values: np.ndarray
    atom_coeff: float | None = None


@dataclass(frozen=True)
class EnergyGrid:
    """Quadrature rule on ``(0, e_max]`` built in ``k = sqrt(E)``.

    Panels are geometrically graded towards ``k = 0`` (the density is only
    log-regular there) and uniform elsewhere with width at most ``k_width``.
    Breakpoints include ``sqrt(e_max/4)`` and ``sqrt(e_max/2)`` so dyadic
    shells can be integrated exactly by masking.
    """

    e_max: float
    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, e_max: float, *, k_width: float = 0.5, order: int = 20, grading_levels: int = 40) -> "EnergyGrid":
        km = math.sqrt(e_max)
        anchors = [0.0, km / 2, km / math.sqrt(2), km]
        br = []
        for lo, hi in zip(anchors[:-1], anchors[1:]):
            n = max(1, math.ceil((hi - lo) / k_width))
            br.extend(np.linspace(lo, hi, n + 1)[:-1])
        br.append(km)
        br = np.array(br)
        k1 = br[1]
        graded = k1 * 2.0 ** -np.arange(1, grading_levels)
        br = np.unique(np.concatenate([br, graded]))
        k, wk = gauss_legendre(br, order)
        return cls(e_max, k * k, 2 * k * wk)

    @classmethod
    def from_points(cls, points: Sequence[float]) -> "EnergyGrid":
        """Wrap arbitrary energies; weights are trapezoid weights (positive)."""
        e = np.sort(np.asarray(points, dtype=float))
        if e.size == 1:
            w = np.ones(1)
        else:
            g = np.diff(e)
            w = 0.5 * (np.concatenate([g, [0]]) + np.concatenate([[0], g]))
            w[w <= 0] = np.finfo(float).tiny
        return cls(float(e[-1]), e, w)

    def shell(self, lo: float, hi: float) -> np.ndarray:
        return (self.nodes > lo) & (self.nodes <= hi)


def _as_grid(e_grid) -> EnergyGrid:
    return e_grid if isinstance(e_grid, EnergyGrid) else EnergyGrid.from_points(e_grid)


def _kernel(p: ExtensionParams | None, kappa: float):
    if p is None:
        return lambda E, r: eval_u(kappa, E, r, derivative=False).value
    return lambda E, r: eval_u_theta(p, E, r, derivative=False).value


def _transform(kernel, psi: GridFunction, energies: np.ndarray, tol: float):
    a, b = psi.support
    if psi.func is None:
        vals = kernel(energies[:, None], psi.nodes[None, :])
        return vals @ (psi.weights * psi.values)
    kmax = math.sqrt(max(float(np.max(energies)), 1.0))
    n_init = max(2, math.ceil(2 * (b - a) * kmax / math.pi))
    # tol is relative to each row's size: deep bound states make u ~ e^{sqrt|E| r}
    scale = np.max(np.abs(kernel(energies[:, None], psi.nodes[None, :])), axis=1) * (b - a)
    scale = np.where(scale > 0, scale, 1.0)
    scale = np.where(scale < 1.0, 1.0, scale)

    def f(r):
        return kernel(energies[:, None], r[None, :]) * (psi.func(r)[None, :] / scale[:, None])

    val, _ = integrate(f, a, b, tol, n_init=n_init)
    return np.atleast_1d(val) * scale


def forward(p: ExtensionParams, psi: GridFunction, e_grid, *, tol: float = 1e-12,
            kernel: str = "u_theta") -> SpectralFunction:
    """``(U psi)(E)`` on the energy grid, plus the atom channel when present.

    ``kernel="u"`` uses ``u^k`` in place of ``u^k_theta`` (the Hankel
    transform), ignoring ``theta``.
    """
    grid = _as_grid(e_grid)
    vals = _transform(_kernel(None if kernel == "u" else p, p.kappa), psi, grid.nodes, tol)
    eb = None if kernel == "u" else bound_state_energy(p)
    if eb is None:
        return SpectralFunction(grid.nodes, grid.weights, vals, None)
    atom = _transform(lambda E, r: bound_state_function(p, r, derivative=False).value, psi, np.array([eb]), tol)
    return SpectralFunction(grid.nodes, grid.weights, vals, float(atom[0]))


def inverse(p: ExtensionParams, phi: SpectralFunction, r_grid) -> np.ndarray:
    """``int u_theta(E|r) phi(E) dV(E)`` at the radii ``r_grid``."""
    r = np.asarray(r_grid, dtype=float)
    E = phi.e_nodes
    rho = density(p, E)
    u = eval_u_theta(p, E[None, :], r[:, None], derivative=False).value
    out = u @ (phi.e_weights * rho * phi.values)
    eb = bound_state_energy(p)
    if eb is not None and phi.atom_coeff is not None:
        out = out + atom_weight(p) * phi.atom_coeff * bound_state_function(p, r, derivative=False).value
    return out


def apply_hamiltonian(kappa: float, psi: GridFunction) -> GridFunction:
    """``-psi'' + q_k psi`` using the attached exact second derivative."""
    if psi.d2 is None or psi.func is None:
        raise ValueError("apply_hamiltonian needs closed-form psi and psi''")

    def h(r, f=psi.func, d2=psi.d2):
        return -d2(r) + q_kappa(kappa, r) * f(r)

    return GridFunction(psi.support, psi.nodes, psi.weights, h(psi.nodes), h, None)


@dataclass(frozen=True)
class ParsevalReport:
    defect: float
    tail: float
    norm2: float
    spectral_norm2: float


def parseval_report(p: ExtensionParams, psi: GridFunction, e_max: float, *, grid: EnergyGrid | None = None,
                    tol: float = 1e-12) -> ParsevalReport:
    grid = grid or EnergyGrid.build(e_max)
    n2 = psi.norm2()
    if n2 == 0:
        return ParsevalReport(0.0, 0.0, 0.0, 0.0)
    sf_ = forward(p, psi, grid, tol=tol)
    dens = grid.weights * density(p, grid.nodes) * sf_.values**2
    total = dens.sum()
    if sf_.atom_coeff is not None:
        total += atom_weight(p) * sf_.atom_coeff**2
    i1 = dens[grid.shell(e_max / 4, e_max / 2)].sum()
    i2 = dens[grid.shell(e_max / 2, e_max)].sum()
    ratio = i2 / i1 if i1 > 0 else math.inf
    tail = i2 * ratio / (1 - ratio) if ratio < 1 else math.inf
    return ParsevalReport(abs(n2 - total) / n2, tail / n2, n2, total)


def parseval_defect(p: ExtensionParams, psi: GridFunction, e_max: float, *, tail_tol: float = 1e-4,
                    grid: EnergyGrid | None = None) -> float:
    """Relative gap between ``||psi||^2`` and its spectral norm up to ``e_max``.

    Raises InconclusiveTruncation when the dyadic-shell tail estimate exceeds
    ``tail_tol``.
    """
    rep = parseval_report(p, psi, e_max, grid=grid)
    if rep.tail > tail_tol:
        raise InconclusiveTruncation(f"spectral tail {rep.tail:.2e} above {tail_tol:.1e}", rep.defect, rep.tail)
    return rep.defect


def parseval_polarization(p: ExtensionParams, psi1: GridFunction, psi2: GridFunction, e_max: float) -> float:
    """``|<psi1, psi2> - int U psi1 U psi2 dV|`` relative to ``||psi1|| ||psi2||``."""
    grid = EnergyGrid.build(e_max)
    f1, f2 = forward(p, psi1, grid), forward(p, psi2, grid)
    s = np.sum(grid.weights * density(p, grid.nodes) * f1.values * f2.values)
    if f1.atom_coeff is not None:
        s += atom_weight(p) * f1.atom_coeff * f2.atom_coeff
    return abs(psi1.inner(psi2) - s) / math.sqrt(psi1.norm2() * psi2.norm2())


def diag_defect(p: ExtensionParams, psi: GridFunction, e_grid) -> float:
    """``max_E |U(h psi)(E) - E U psi(E)| / (1 + |E U psi(E)|)``."""
    E = np.sort(np.asarray(e_grid, dtype=float))
    lhs = forward(p, apply_hamiltonian(p.kappa, psi), E).values
    rhs = E * forward(p, psi, E).values
    return float(np.max(np.abs(lhs - rhs) / (1 + np.abs(rhs))))


def bound_state_norm(p: ExtensionParams, tol: float = 1e-14) -> float:
    """``int_0^inf u_theta(E_b|r)^2 dr``, truncated where ``e^{-2 sqrt|E| r} < 1e-16``."""
    eb = bound_state_energy(p)
    if eb is None:
        raise ValueError("no bound state for these parameters")
    rmax = math.log(1e16) / (2 * math.sqrt(abs(eb)))
    val, _ = integrate(lambda r: bound_state_function(p, r, derivative=False).value ** 2, 0.0, rmax, tol,
                       n_init=16, graded="left")
    return val
