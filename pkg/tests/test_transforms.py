import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isq_spectral.eigen_solutions import ExtensionParams, eval_u_theta, eval_w_direct
from isq_spectral.exceptions import InconclusiveTruncation
from isq_spectral.quadrature import gauss_legendre, integrate
from isq_spectral.spectral_measures import atom_weight, bound_state_energy
from isq_spectral.transforms import (EnergyGrid, GridFunction, PolyBump, SpectralFunction, apply_hamiltonian,
                                     bound_state_norm, diag_defect, forward, inverse, parseval_defect,
                                     parseval_polarization, parseval_report)

P = ExtensionParams
E_SAMPLE = np.array([0.3, 1.0, 4.0, 17.0])


def zero_grid(a=1.0, b=2.0):
    return GridFunction.from_function(lambda r: np.zeros_like(r), a, b)


def combo(c1, f1: PolyBump, c2, f2: PolyBump) -> GridFunction:
    a, b = min(f1.a, f2.a), max(f1.b, f2.b)
    return GridFunction.from_function(lambda r: c1 * f1(r) + c2 * f2(r), a, b, panels=16)


# --- containers ------------------------------------------------------------


def test_grid_function_rule():
    g = PolyBump(1, 3).grid()
    assert g.weights.sum() == pytest.approx(2.0, rel=1e-12)
    assert g.norm2() == pytest.approx(1.0, rel=1e-13)
    with pytest.raises(ValueError):
        GridFunction((0.0, 1.0), np.array([0.5]), np.array([1.0]), np.array([0.0]))
    with pytest.raises(ValueError):
        GridFunction((1.0, 2.0), np.array([1.5]), np.array([-1.0]), np.array([0.0]))


@given(st.floats(0.05, 3), st.floats(0.1, 4), st.integers(2, 6))
def test_poly_bump(a, w, power):
    f = PolyBump(a, a + w, power)
    assert integrate(lambda r: f(r) ** 2, a, a + w, 1e-14)[0] == pytest.approx(1.0, rel=1e-11)
    r = np.linspace(a, a + w, 9)[1:-1]
    h = 1e-4 * w
    fd2 = (f(r + h) - 2 * f(r) + f(r - h)) / h**2
    np.testing.assert_allclose(f.derivative(r, 2), fd2, rtol=1e-4, atol=1e-4 * np.max(np.abs(fd2)))
    assert f(a - 0.01) == 0 and f(a + w + 0.01) == 0


def test_energy_grid():
    g = EnergyGrid.build(100.0)
    assert np.all((g.nodes > 0) & (g.nodes <= 100))
    assert g.weights.sum() == pytest.approx(100.0, rel=1e-13)
    # dyadic shells are unions of whole panels, so they integrate E exactly
    m = g.shell(25, 50)
    assert np.sum(g.weights[m] * g.nodes[m]) == pytest.approx((50**2 - 25**2) / 2, rel=1e-12)


# --- forward ---------------------------------------------------------------


def test_forward_zero():
    sf = forward(P(0.3, 1.9), zero_grid(), E_SAMPLE)
    assert np.all(sf.values == 0)
    assert sf.atom_coeff == 0


@pytest.mark.parametrize("k", [0.0, 0.5, -0.3])
def test_forward_u_kernel_at_theta_kappa(k):
    p = P.from_offset(k, 0.0)
    psi = PolyBump(0.5, 3.0).grid()
    a = forward(p, psi, E_SAMPLE).values
    b = forward(p, psi, E_SAMPLE, kernel="u").values
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-14)


def test_forward_against_fixed_grid_oracle():
    # u for (0, pi/2) is the logarithmic second solution; evaluate it by the
    # script_y route and integrate with a fixed high-order composite rule
    psi = PolyBump(1.0, 2.0)
    nodes, weights = gauss_legendre(np.linspace(1, 2, 41), 30)
    oracle = np.sum(weights * eval_w_direct(0.0, 1.0, nodes).value * psi(nodes))
    got = forward(P(0.0, math.pi / 2), psi.grid(), [1.0]).values[0]
    assert got == pytest.approx(oracle, abs=1e-9)


def test_forward_node_rule_without_closed_form():
    f = PolyBump(1.0, 2.0)
    g = f.grid(panels=16, order=20)
    bare = GridFunction(g.support, g.nodes, g.weights, g.values)
    p = P(0.2, 0.4)
    np.testing.assert_allclose(forward(p, bare, E_SAMPLE).values, forward(p, g, E_SAMPLE).values, atol=1e-10)


@settings(max_examples=15)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-0.9, 0.9), st.floats(0, math.pi))
def test_forward_linear(c1, c2, k, th):
    f1, f2 = PolyBump(1.0, 2.0), PolyBump(1.5, 3.0, 4)
    p = P(k, th)
    lhs = forward(p, combo(c1, f1, c2, f2), E_SAMPLE)
    r1, r2 = forward(p, f1.grid(), E_SAMPLE), forward(p, f2.grid(), E_SAMPLE)
    scale = 1 + abs(c1) + abs(c2)
    np.testing.assert_allclose(lhs.values, c1 * r1.values + c2 * r2.values, atol=1e-11 * scale)
    if lhs.atom_coeff is not None:
        assert lhs.atom_coeff == pytest.approx(c1 * r1.atom_coeff + c2 * r2.atom_coeff, abs=1e-11 * scale)


def test_theta_sign_covariance():
    p = P(0.3, 1.1)
    psi = PolyBump(0.5, 2.5).grid()
    a, b = forward(p, psi, E_SAMPLE), forward(p.shifted(math.pi), psi, E_SAMPLE)
    np.testing.assert_allclose(b.values, -a.values, rtol=1e-13, atol=1e-15)
    assert b.atom_coeff == pytest.approx(-a.atom_coeff, rel=1e-12)
    # the expansion is invariant: the coefficient squared against the same measure
    r = np.array([0.7, 1.5, 2.2])
    np.testing.assert_allclose(inverse(p.shifted(math.pi), b, r), inverse(p, a, r), rtol=1e-12)


def test_atom_channel_is_inner_product():
    p = P(0.0, math.pi / 2)
    psi = PolyBump(0.5, 2.5)
    eb = bound_state_energy(p)
    want = integrate(lambda r: eval_u_theta(p, eb, r).value * psi(r), 0.5, 2.5, 1e-14)[0]
    assert forward(p, psi.grid(), E_SAMPLE).atom_coeff == pytest.approx(want, rel=1e-12)


# --- inverse ---------------------------------------------------------------


def test_inverse_zero_and_pure_atom():
    p = P(0.0, math.pi / 2)
    E = EnergyGrid.build(20.0)
    r = np.array([0.2, 1.0, 3.0])
    zero = SpectralFunction(E.nodes, E.weights, np.zeros_like(E.nodes), 0.0)
    assert np.all(inverse(p, zero, r) == 0)
    atom = SpectralFunction(E.nodes, E.weights, np.zeros_like(E.nodes), 1.0)
    want = atom_weight(p) * eval_u_theta(p, -1.0, r).value
    # beyond sqrt|E_b| r = 1 the atom term uses the matched decaying solution
    np.testing.assert_allclose(inverse(p, atom, r), want, rtol=1e-12)


@pytest.mark.slow
def test_round_trip_improves_with_cutoff():
    p = P(0.25, 2.0)
    psi = PolyBump(0.5, 4.5, 4)
    r = np.linspace(0.8, 4.2, 9)
    defects = []
    for e_max in (100.0, 200.0):
        sf = forward(p, psi.grid(), EnergyGrid.build(e_max))
        defects.append(np.max(np.abs(inverse(p, sf, r) - psi(r))))
    assert defects[1] < defects[0] < 1e-2


# --- Hamiltonian -----------------------------------------------------------


@pytest.mark.parametrize("k", [0.0, 0.3, -0.7])
def test_hamiltonian_kills_power_solutions(k):
    s = 0.5 + k
    f = GridFunction.from_function(lambda r: r**s, 1.0, 2.0, d2=lambda r: s * (s - 1) * r ** (s - 2))
    h = apply_hamiltonian(k, f)
    assert np.max(np.abs(h.values)) < 1e-13


def test_hamiltonian_free_case():
    f = PolyBump(1.0, 2.0, 4)
    h = apply_hamiltonian(0.5, f.grid())
    np.testing.assert_allclose(h.values, -f.derivative(h.nodes, 2), rtol=1e-15)
    with pytest.raises(ValueError):
        apply_hamiltonian(0.5, zero_grid())


# --- Parseval and diagonalisation ----------------------------------------


def test_parseval_zero():
    assert parseval_defect(P(0.2, 1.0), zero_grid(), 50.0) == 0


def test_parseval_half_integer():
    assert parseval_defect(P.from_offset(0.5, 0.0), PolyBump(1.0, 2.0).grid(), 400.0) <= 1e-4


def test_parseval_with_atom():
    assert parseval_defect(P(0.0, math.pi / 2), PolyBump(1.0, 2.0).grid(), 400.0) <= 1e-4


def test_inconclusive_truncation():
    with pytest.raises(InconclusiveTruncation) as ei:
        parseval_defect(P(0.3, 1.0), PolyBump(1.0, 2.0).grid(), 30.0, tail_tol=1e-8)
    assert ei.value.tail > 1e-8
    rep = parseval_report(P(0.3, 1.0), PolyBump(1.0, 2.0).grid(), 30.0)
    assert rep.tail > 1e-8 and rep.defect > 0


def test_polarization():
    p = P(-0.4, 1.5)
    assert parseval_polarization(p, PolyBump(1.0, 2.0).grid(), PolyBump(1.5, 2.5).grid(), 400.0) <= 1e-4


def test_diagonalization():
    assert diag_defect(P(0.0, math.pi / 2), PolyBump(1.0, 2.0, 4).grid(), [0.5, 1.0, 2.0, 5.0]) <= 1e-6
    assert diag_defect(P(0.6, 0.2), PolyBump(0.5, 1.5, 4).grid(), [0.1, 3.0, 30.0]) <= 1e-6


# --- bound state -----------------------------------------------------------


def test_bound_state_norm():
    p = P(0.0, math.pi / 2)
    assert bound_state_norm(p) == pytest.approx(2 / math.pi**2, rel=1e-12)
    for q in (P(0.5, math.pi / 2), P(-0.3, 2.2), P(0.8, 1.7)):
        assert bound_state_norm(q) == pytest.approx(1 / atom_weight(q), rel=1e-10)
    with pytest.raises(ValueError):
        bound_state_norm(P(0.5, 0.3))


@pytest.mark.parametrize("k,th", [(0.2, 0.4), (0.0, math.pi / 2), (-0.6, 1.8), (0.3, 2.0)])
def test_bound_state_function_tail(k, th):
    # u_theta(E_b) is a multiple of sqrt(r) K_k(sqrt|E_b| r), far into the decay
    from scipy.special import kv

    from isq_spectral.spectral_measures import bound_state_function

    p = P(k, th)
    s = math.sqrt(-bound_state_energy(p))
    r = np.geomspace(0.05, 40, 25) / s
    ratio = bound_state_function(p, r).value / (np.sqrt(r) * kv(abs(k), s * r))
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-12)
    assert bound_state_norm(p) == pytest.approx(1 / atom_weight(p), rel=1e-10)
