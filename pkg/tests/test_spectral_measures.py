import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from isq_spectral.eigen_solutions import ExtensionParams
from isq_spectral.exceptions import BoundaryError, ConvergenceError, DomainError, PoleError
from isq_spectral.spectral_measures import (atom_weight, atom_weight_phi_form, bound_state_energy, build_measure,
                                            density, density_envelope, density_quotient_form, m_function,
                                            m_function_wronskian, m_limit_check, phi, residue_weight, t_function,
                                            t_function_expanded, v_kappa_density)

kappas = st.floats(-0.95, 0.95)
thetas = st.floats(0.0, math.pi)
energies = st.floats(1e-3, 1e3)


def P(k, th):
    return ExtensionParams(k, th)


def im_m_closed(k, th, E):
    # E > 0 imaginary part with theta_pm = theta +- pi k/2
    tk = math.pi * k / 2
    sp, sm = math.sin(th + tk), math.sin(th - tk)
    den = E**-k * sp * sp - 2 * math.cos(math.pi * k) * sp * sm + E**k * sm * sm
    return 0.5 * math.sin(math.pi * k) ** 2 / den


# --- m-function ------------------------------------------------------------


def test_m_function_examples():
    assert m_function(P(0, 0), 1.0) == pytest.approx(0.5j, abs=1e-15)
    z = 2 + 3j
    want = (1j - np.log(z) / math.pi) / 2
    assert abs(m_function(P(0, 0), z) - want) < 1e-15
    assert m_function(P(0.5, 1.0), 2.0).imag == pytest.approx(im_m_closed(0.5, 1.0, 2.0), rel=1e-13)
    assert m_function(P(0.5, math.pi / 4), 4.0).imag == pytest.approx(1.0, rel=1e-14)


def test_m_function_pole():
    p = P(0, math.pi / 2)
    with pytest.raises(PoleError):
        m_function(p, -1.0 + 1e-13j)
    m = m_function(p, -1.0 + 1e-6j)
    assert abs(m) > 1e4


@given(kappas, thetas, st.floats(-50, 50), st.floats(1e-3, 50))
def test_herglotz(k, th, x, y):
    assert m_function(P(k, th), complex(x, y)).imag > 0


def test_herglotz_grid():
    ks = np.linspace(-0.9, 0.9, 7)
    ths = np.linspace(0.05, 3.1, 6)
    z = np.array([complex(x, y) for x in (-20, -1, 0.3, 5) for y in (1e-2, 1.0, 10.0)])
    count = 0
    for k in ks:
        for th in ths:
            assert np.all(m_function(P(k, th), z).imag > 0)
            count += z.size
    assert count >= 200


@pytest.mark.parametrize("k", [0.0, 3e-3, -7e-3, 1.2e-2, 0.3, -0.6, 0.9])
@pytest.mark.parametrize("th", [0.0, 0.9, math.pi / 2, 2.5])
@pytest.mark.parametrize("z", [2.0, -3.0 + 0.5j, 0.1 + 2j, 40 + 1j])
def test_closed_form_matches_wronskian_form(k, th, z):
    a = m_function(P(k, th), z)
    b = m_function_wronskian(P(k, th), z)
    assert abs(a - b) <= 1e-10 * abs(a)


@given(kappas, thetas, energies)
def test_m_is_real_below_zero(k, th, E):
    p = P(k, th)
    try:
        eb = bound_state_energy(p)
    except BoundaryError:
        eb = None
    if eb is not None and abs(-E - eb) < 1e-6 * abs(eb):
        return
    m = m_function(p, complex(-E, 0.0))
    assert abs(m.imag) <= 1e-12 * (1 + abs(m))


# --- phi / density ---------------------------------------------------------


def test_phi_examples():
    assert phi(0, math.e) == pytest.approx(-1 / math.pi, rel=1e-15)
    assert phi(0.37, 1.0) == 0
    assert phi(0.5, 4.0) == pytest.approx(2**-0.5 - 2**0.5, rel=1e-14)


@given(st.floats(0.01, 0.95), energies)
def test_phi_matches_piecewise_form(k, E):
    want = (E ** (-k / 2) - E ** (k / 2)) / math.sin(math.pi * k)
    assert phi(k, E) == pytest.approx(want, rel=1e-11, abs=1e-13)
    assert phi(-k, E) == pytest.approx(phi(k, E), rel=1e-14, abs=1e-300)


def test_density_examples():
    assert density(P(0.5, math.pi / 4), 4.0) == pytest.approx(1.0, rel=1e-15)
    np.testing.assert_allclose(density(P(0, 0), np.geomspace(1e-3, 1e3, 9)), 0.5, rtol=1e-15)
    with pytest.raises(DomainError):
        density(P(0.1, 1.0), 0.0)


@given(kappas, thetas, energies)
def test_density_bounds(k, th, E):
    d = density(P(k, th), E)
    f = phi(k, E)
    assert 0 < d <= (1 + f * f / 2) * (1 + 1e-13)
    alpha = 0.5 * (abs(k) + 1)
    assert d <= density_envelope(alpha, E) * (1 + 1e-13)


@given(st.floats(0.05, 0.95), st.booleans(), thetas, energies)
def test_density_equals_quotient_form(k, neg, th, E):
    p = P(-k if neg else k, th)
    assert density(p, E) == pytest.approx(float(density_quotient_form(p, E)), rel=1e-11)


@given(thetas, energies)
def test_density_equals_log_form_at_zero(th, E):
    p = P(0.0, th)
    assert density(p, E) == pytest.approx(float(density_quotient_form(p, E)), rel=1e-11)


@given(kappas, thetas, st.floats(0.05, 20))
def test_t_sum_of_squares_matches_expanded(k, th, E):
    p = P(k, th)
    a, b = float(t_function(p, E)), float(t_function_expanded(p, E))
    assert a == pytest.approx(b, rel=1e-11)


@given(kappas, thetas, st.floats(0.01, 100))
def test_density_is_imaginary_part_of_m(k, th, E):
    # density equals Im M(E + i0); M is analytic across E > 0
    p = P(k, th)
    assert density(p, E) == pytest.approx(m_function(p, complex(E, 0.0)).imag, rel=1e-9)


@given(kappas, thetas, energies)
def test_density_even_in_kappa_and_pi_periodic(k, th, E):
    d = density(P(k, th), E)
    assert density(P(-k, th), E) == pytest.approx(d, rel=1e-12)
    assert density(P(k, th + math.pi), E) == pytest.approx(d, rel=1e-10)


def test_v_kappa_density():
    assert v_kappa_density(0.5, 4.0) == 1.0
    assert v_kappa_density(0.5, -1.0) == 0.0
    with pytest.raises(DomainError):
        v_kappa_density(-1.0, 1.0)
    for k in (0.0, 0.3, -0.8):
        E = np.geomspace(1e-2, 1e2, 7)
        np.testing.assert_allclose(build_measure(P.__call__(k, math.pi * k / 2)).density(E), v_kappa_density(k, E),
                                   rtol=1e-13)


# --- bound states ----------------------------------------------------------


def test_bound_state_examples():
    # float pi/2 leaves cot = 6e-17
    assert bound_state_energy(P(0, math.pi / 2)) == pytest.approx(-1, rel=1e-15)
    assert bound_state_energy(P(0.5, math.pi / 2)) == pytest.approx(-1, rel=1e-15)
    assert bound_state_energy(P(0.5, 0.3)) is None
    assert atom_weight(P(0, math.pi / 2)) == pytest.approx(math.pi**2 / 2, rel=1e-15)
    assert atom_weight(P(0.5, math.pi / 2)) == pytest.approx(2 * math.pi, rel=1e-15)
    assert atom_weight(P(0.5, 0.3)) is None


@given(thetas.filter(lambda t: 0.05 < t < math.pi - 0.05))
def test_bound_state_kappa_zero_closed_form(th):
    assert bound_state_energy(P(0, th)) == pytest.approx(-math.exp(math.pi / math.tan(th)), rel=1e-12)


@given(st.floats(0.02, 0.95), st.floats(0.0, 1.0))
def test_bound_state_matches_power_form(k, s):
    tk = math.pi * k / 2
    th = tk + 0.01 + s * (math.pi - 2 * tk - 0.02)
    want = -((math.sin(th + tk) / math.sin(th - tk)) ** (1 / k))
    got = bound_state_energy(P(k, th))
    assert got == pytest.approx(want, rel=1e-9)
    # the weight formula in terms of Phi(|E|) is an independent route
    assert atom_weight(P(k, th)) == pytest.approx(atom_weight_phi_form(k, -got), rel=1e-9)


def test_boundary_error():
    k = 0.4
    tk = math.pi * k / 2
    with pytest.raises(BoundaryError):
        bound_state_energy(P(k, tk + 5e-13))
    with pytest.raises(BoundaryError):
        atom_weight(P(k, math.pi - tk - 5e-13))
    assert bound_state_energy(P(k, tk)) is None


def test_measure_symmetries():
    a, b = build_measure(P(0.3, 1.2)), build_measure(P(0.3, 1.2 + math.pi))
    assert a.atom.energy == pytest.approx(b.atom.energy, rel=1e-12)
    assert a.atom.weight == pytest.approx(b.atom.weight, rel=1e-12)
    a, b = build_measure(P(0.4, 1.0)), build_measure(P(-0.4, 1.0))
    assert a.atom == b.atom or (a.atom.energy == pytest.approx(b.atom.energy, rel=1e-14)
                                and a.atom.weight == pytest.approx(b.atom.weight, rel=1e-14))
    E = np.geomspace(0.01, 100, 11)
    np.testing.assert_allclose(a.density(E), b.density(E), rtol=1e-14)


@pytest.mark.parametrize("k,th", [(0, math.pi / 2), (0.5, math.pi / 2), (0.3, 2.0), (-0.7, 1.9), (1e-3, 0.8),
                                  (0, 2.9), (0.9, 1.6)])
def test_residue_matches_atom_weight(k, th):
    p = P(k, th)
    assert residue_weight(p) == pytest.approx(atom_weight(p), rel=1e-6)


def test_residue_requires_atom():
    with pytest.raises(DomainError):
        residue_weight(P(0.5, 0.3))


# --- eta limit -------------------------------------------------------------


def test_m_limit_examples():
    lim, err = m_limit_check(P(0, 0), 1.0)
    assert lim == pytest.approx(0.5, abs=1e-6) and err < 1e-6
    lim, _ = m_limit_check(P(0.5, math.pi / 4), 4.0)
    assert lim == pytest.approx(1.0, abs=1e-6)
    lim, _ = m_limit_check(P(0, math.pi / 2), -2.0)
    assert abs(lim) < 1e-6


@given(kappas, thetas, st.floats(0.2, 20))
def test_m_limit_converges_to_density(k, th, E):
    p = P(k, th)
    tk = math.pi * k / 2
    assume(min(abs(math.sin(th - tk)), abs(math.sin(th + tk))) > 1e-11)
    lim, err = m_limit_check(p, E)
    assert lim == pytest.approx(density(p, E), rel=1e-6, abs=1e-9)


def test_m_limit_argument_validation():
    with pytest.raises(ValueError):
        m_limit_check(P(0, 0), 1.0, etas=(1e-3, 1e-2, 1e-4))
    with pytest.raises(ValueError):
        m_limit_check(P(0, 0), 1.0, etas=(1e-5, 1e-6, 1e-7))
    with pytest.raises(DomainError):
        m_limit_check(P(0, 0), 0.0)


def test_m_limit_non_contracting_reported():
    # right next to the pole the eta sequence is far from asymptotic
    p = P(0, math.pi / 2)
    with pytest.raises(ConvergenceError):
        m_limit_check(p, -1.0 + 1e-4)


# --- continuity of integrated measures ------------------------------------


def bump(E):
    E = np.asarray(E, dtype=float)
    return np.where(np.abs(E - 1) < 5, (1 - ((E - 1) / 5) ** 2) ** 3, 0.0)


def test_integral_continuous_through_zero_kappa():
    th = 1.3
    base = build_measure(P(0.0, th)).integrate(bump, -4, 6)
    gaps = [abs(build_measure(P(s * 10.0**-j, th)).integrate(bump, -4, 6) - base)
            for j in range(2, 6) for s in (1, -1)]
    assert max(gaps[-2:]) < 1e-8
    assert gaps[-2] < gaps[0]


def test_integral_continuous_across_atom_exit():
    # the atom weight vanishes as theta approaches theta_k from inside
    k = 0.4
    tk = math.pi * k / 2
    vals = [build_measure(P(k, tk + d)).integrate(bump, -4, 6) for d in (1e-2, 1e-3, 1e-4)]
    edge = build_measure(P(k, tk)).integrate(bump, -4, 6)
    gaps = [abs(v - edge) for v in vals]
    assert gaps[0] > gaps[1] > gaps[2]


def test_bound_state_beyond_double_range():
    p = P(0.0, 1e-3)
    assert bound_state_energy(p) == -math.inf
    assert atom_weight(p) == math.inf
    assert build_measure(p).integrate(bump, -4, 6) == pytest.approx(
        build_measure(p).integrate(bump, 0, 6), rel=1e-15)
    with pytest.raises(DomainError):
        residue_weight(p)
