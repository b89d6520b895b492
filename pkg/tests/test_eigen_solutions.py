import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from isq_spectral.eigen_solutions import (ExtensionParams, SolutionEval, eval_u, eval_u_theta, eval_v, eval_w,
                                          eval_w_direct, ode_residual, wronskian_at)
from isq_spectral.exceptions import BranchCutError, DomainError
from isq_spectral.special_functions import LOWER_CUT, cut_power

TWO_PI = 2 / math.pi
kappas = st.floats(-0.95, 0.95)
thetas = st.floats(0.0, math.pi)
# moderate |Im sqrt(z)| so growing/decaying pairs do not swamp the Wronskian
zs = st.builds(lambda a, b: complex(a, b) ** 2, st.floats(0.05, 5.5), st.floats(-0.4, 0.4)).filter(
    lambda z: not (abs(z.real) < 1e-6 * abs(z) and z.imag < 0))


def mp_u(k, z, r):
    k, z, r = mp.mpf(k), mp.mpc(z), mp.mpf(r)
    if z == 0:
        return complex(2**-k * r ** (0.5 + k) / mp.gamma(k + 1))
    s = mp.sqrt(z)
    return complex(s**-k * mp.sqrt(r) * mp.besselj(k, s * r))


# --- ExtensionParams -------------------------------------------------------


def test_extension_params():
    p = ExtensionParams(0.5, 4.0)
    assert p.theta_kappa == math.pi / 4
    assert 0 <= p.canonical_theta < math.pi
    assert ExtensionParams.from_offset(0.3, 0.1).theta == pytest.approx(0.3 * math.pi / 2 + 0.1)
    with pytest.raises(ValueError):
        ExtensionParams(1.0, 0.0)
    with pytest.raises(ValueError):
        ExtensionParams(0.1, float("nan"))


# --- u ---------------------------------------------------------------------


@pytest.mark.parametrize("k", [0.0, 0.3, -0.6, 1.5])
def test_u_at_zero_energy(k):
    r = np.array([0.1, 1.0, 3.0])
    want = 2**-k * r ** (0.5 + k) / math.gamma(k + 1)
    np.testing.assert_allclose(eval_u(k, 0.0, r).value, want, rtol=1e-15)


def test_u_half_integer_example():
    want = 4**-0.25 * math.sqrt(2 / (math.pi * 2)) * math.sin(2)
    assert eval_u(0.5, 4.0, 1.0).value == pytest.approx(want, rel=1e-15)


@pytest.mark.parametrize("k", [0.0, 0.45, -0.8, 1.3])
@pytest.mark.parametrize("z", [3.0, -2.0, 1 + 2j, 400.0, -0.3 + 0.01j])
def test_u_against_mp(k, z):
    r = 1.7
    want = mp_u(k, z, r)
    assert abs(eval_u(k, z, r).value - want) <= 1e-13 * (1 + abs(want))


@given(kappas, st.floats(-20, 50), st.floats(0.05, 6))
def test_u_derivative_matches_difference(k, E, r):
    h = 1e-5 * r
    f = eval_u(k, E, np.array([r - h, r + h])).value
    d = eval_u(k, E, r).d_r
    assert abs(d - (f[1] - f[0]) / (2 * h)) <= 1e-6 * (1 + abs(d) + abs(f).max())


def test_ode_residual_examples():
    assert ode_residual(0.3, 1.0, lambda r: eval_u(0.3, 1.0, r), 2.0, 1e-3) <= 1e-8
    assert ode_residual(0.5, 1.0, lambda r: eval_u(0.5, 1.0, r), 1.0, 1e-3) <= 1e-8
    p = ExtensionParams(0.0, 0.9)
    assert ode_residual(0.0, -1.0, lambda r: eval_u_theta(p, -1.0, r), 2.0, 1e-3) <= 1e-8

    def corrupted(r):
        s = eval_u(0.3, 1.0, r)
        return SolutionEval(s.value * (1 + 1e-4 * r), s.d_r)

    assert ode_residual(0.3, 1.0, corrupted, 2.0, 1e-3) >= 1e-5
    with pytest.raises(ValueError):
        ode_residual(0.3, 1.0, lambda r: eval_u(0.3, 1.0, r), 1e-3, 1e-3)


def test_r_must_be_positive():
    with pytest.raises(DomainError):
        eval_u(0.2, 1.0, 0.0)


# --- w ---------------------------------------------------------------------


def test_w_examples():
    z, r = 1.3 + 0.2j, np.array([0.2, 1.0, 4.0])
    for k in (0.0, 0.4, -0.7, 1e-3):
        assert np.allclose(wronskian_at(eval_u(k, z, r), eval_w(k, z, r)), TWO_PI, rtol=1e-12)
    np.testing.assert_allclose(eval_w(0.5, z, r).value, -eval_u(-0.5, z, r).value, rtol=1e-14)


def test_w_near_zero_kappa():
    # w is not even in k, so w(+-1e-4) drifts linearly from w(0); the two
    # evaluation routes agree there, and the symmetric mean removes the drift
    w0 = eval_w(0.0, 1.0, 1.0).value
    wk = {k: eval_w(k, 1.0, 1.0).value for k in (1e-4, -1e-4)}
    for k, v in wk.items():
        assert abs(eval_w_direct(k, 1.0, 1.0).value - v) <= 1e-7
    assert abs(0.5 * (wk[1e-4] + wk[-1e-4]) - w0) <= 1e-7
    slope = (wk[1e-4] - wk[-1e-4]) / 2e-4
    h = 1e-2
    assert slope == pytest.approx((eval_w(h, 1.0, 1.0).value - eval_w(-h, 1.0, 1.0).value) / (2 * h), rel=1e-3)


@pytest.mark.parametrize("k", [0.0, 5e-3, -1e-2, 1.5e-2, 0.3, -0.75])
@pytest.mark.parametrize("z", [2.0, -1.5, 0.5 + 3j])
def test_w_two_routes_agree(k, z):
    # series of (u^k - u^-k)/k against the sin(pi k) quotient / logarithmic form
    r = np.array([0.05, 0.7, 3.0])
    a, b = eval_w(k, z, r), eval_w_direct(k, z, r)
    tol = 1e-7 if abs(k) < 0.02 else 1e-12
    np.testing.assert_allclose(a.value, b.value, rtol=tol, atol=tol)
    np.testing.assert_allclose(a.d_r, b.d_r, rtol=tol, atol=tol)


def test_w_rejects_large_kappa():
    with pytest.raises(DomainError):
        eval_w(1.2, 1.0, 1.0)


# --- u_theta ---------------------------------------------------------------


def test_u_theta_examples():
    z, r = 2.0, np.array([0.3, 1.0, 2.5])
    for k in (0.0, 0.3, -0.8):
        p = ExtensionParams.from_offset(k, 0.0)
        np.testing.assert_allclose(eval_u_theta(p, z, r).value, eval_u(k, z, r).value, rtol=1e-15)
    p = ExtensionParams(0.3, 0.7)
    np.testing.assert_allclose(eval_u_theta(p.shifted(math.pi), 2.0, 1.0).value,
                               -eval_u_theta(p, 2.0, 1.0).value, rtol=1e-14)
    a = eval_u_theta(ExtensionParams(0.4, 1.1), 3.0, 0.5).value
    b = eval_u_theta(ExtensionParams(-0.4, 1.1), 3.0, 0.5).value
    assert abs(a - b) <= 1e-13 * abs(a)


def test_u_theta_sine_quotient_form():
    # cross-check against u^k sin(theta+) - u^-k sin(theta-) over sin(pi k)
    k, th, z, r = 0.35, 1.9, 1 + 1j, np.array([0.1, 1.0, 5.0])
    tk = math.pi * k / 2
    want = (eval_u(k, z, r).value * math.sin(th + tk) - eval_u(-k, z, r).value * math.sin(th - tk)) / math.sin(math.pi * k)
    np.testing.assert_allclose(eval_u_theta(ExtensionParams(k, th), z, r).value, want, rtol=1e-12)


@given(kappas, thetas, st.floats(-10, 60), st.floats(0.01, 6))
def test_u_theta_real_for_real_energy(k, th, E, r):
    v = eval_u_theta(ExtensionParams(k, th), E, r).value
    assert np.isrealobj(v)
    c = eval_u_theta(ExtensionParams(k, th), complex(E, 0.0), r).value
    assert abs(np.imag(c)) <= 1e-13 * (1 + abs(c))


@given(kappas, thetas, st.floats(-10, 60), st.floats(0.01, 6))
def test_u_theta_even_in_kappa(k, th, E, r):
    a = eval_u_theta(ExtensionParams(k, th), E, r).value
    b = eval_u_theta(ExtensionParams(-k, th), E, r).value
    assert abs(a - b) <= 1e-10 * (1 + abs(a))


# --- v ---------------------------------------------------------------------


def test_v_examples():
    z = 1 + 1j
    a, b = eval_v(0.3, z, 1.0), eval_v(-0.3, z, 1.0)
    assert abs(a.value - b.value) <= 1e-13 * abs(a.value)
    k, z = 0.5, 2j
    r = np.array([0.1, 1.0, 7.0])
    want = cut_power(z, -k / 2, LOWER_CUT) * np.exp(0.5j * math.pi * k)
    np.testing.assert_allclose(wronskian_at(eval_v(k, z, r), eval_u(k, z, r)), want, rtol=1e-12)


def test_v_decay_rate_for_negative_energy():
    # v ~ (sqrt(pi)/2)(1+i) z^{-1/4} e^{i sqrt(z) r}; for E = -1 the ratio tends to 1
    ratios = []
    for r in (10.0, 20.0, 40.0):
        v = eval_v(0.3, -1.0 + 0j, r).value
        lead = 0.5 * math.sqrt(math.pi) * (1 + 1j) * cut_power(-1.0, -0.25, LOWER_CUT) * math.exp(-r)
        ratios.append(abs(v / lead - 1))
    assert ratios[0] > ratios[1] > ratios[2]
    assert ratios[2] < 0.01


@pytest.mark.parametrize("k", [0.0, 0.3, -0.9])
@pytest.mark.parametrize("z", [2.0, -3.0, 1j, 5 + 20j, 900.0, -0.01 + 1e-3j, -2 - 0.5j])
def test_v_against_mp(k, z):
    r = 1.3
    with mp.workdps(60):
        s = mp.sqrt(mp.mpc(z)) if complex(z).imag >= 0 or complex(z).real > 0 else mp.mpc(0, 1) * mp.sqrt(-mp.mpc(z))
        want = complex(0.5j * mp.pi * mp.exp(0.5j * mp.pi * k) * mp.sqrt(r) * mp.hankel1(k, r * s))
    assert abs(eval_v(k, z, r).value - want) <= 1e-12 * abs(want)


def test_v_cut_rejected():
    with pytest.raises(BranchCutError):
        eval_v(0.2, -2j, 1.0)


# --- Wronskian identities -------------------------------------------------


def test_wronskian_antisymmetry_and_pi_shift():
    p = ExtensionParams(0.2, 0.8)
    f = eval_u_theta(p, 2.0, 1.0)
    assert wronskian_at(f, f) == 0
    g = eval_u_theta(p.shifted(-math.pi / 2), 2.0, np.array([0.1, 1.0, 10.0]))
    np.testing.assert_allclose(wronskian_at(eval_u_theta(p, 2.0, np.array([0.1, 1.0, 10.0])), g), -TWO_PI, rtol=1e-12)


def test_plucker_identity():
    z, r = 0.7 + 0.3j, 1.4
    fs = [eval_u(0.3, z, r), eval_w(0.3, z, r), eval_v(0.3, z, r), eval_u_theta(ExtensionParams(0.3, 2.0), z, r)]
    W = lambda i, j: wronskian_at(fs[i], fs[j])  # noqa: E731
    res = W(0, 1) * W(2, 3) + W(0, 2) * W(3, 1) + W(1, 2) * W(0, 3)
    assert abs(res) < 1e-13


@given(kappas, zs)
def test_wronskian_constant_in_r(k, z):
    r = np.array([1e-2, 1e-1, 1.0, 10.0])
    u = eval_u(k, z, r)
    np.testing.assert_allclose(wronskian_at(u, eval_w(k, z, r)), TWO_PI, rtol=1e-9)
    want = cut_power(z, -k / 2, LOWER_CUT) * np.exp(0.5j * math.pi * k)
    np.testing.assert_allclose(wronskian_at(eval_v(k, z, r), u), want, rtol=1e-9)


@given(kappas, thetas, zs, zs)
def test_left_boundary_degeneracy(k, th, z1, z2):
    p = ExtensionParams(k, th)
    r = np.array([1e-2, 1e-3, 1e-4])
    f, g = eval_u_theta(p, z1, r), eval_u_theta(p, z2, r)
    w = np.abs(wronskian_at(f, g))
    # W_r = (z2 - z1) int_0^r u u dr' -> 0 like r^{1 - 2|k|} (log^2 r at k = 0);
    # the computed value cannot beat cancellation at eps |u| |u'|
    floor = 8 * np.finfo(float).eps * (np.abs(f.value * g.d_r) + np.abs(f.d_r * g.value))
    bound = abs(z1 - z2) * 10 * r ** (1 - 2 * abs(k)) * (1 + np.log(r) ** 2)
    assert np.all(w <= bound + floor)
    assert w[-1] <= w[0] + floor[-1] + floor[0]


def test_ode_residual_near_origin_is_stencil_truncation():
    # worst seeded sample of the ODE acceptance check: the residual falls like h^4,
    # so its size at h = 1e-3 is discretisation error, not an error in u_theta
    p = ExtensionParams(0.08288748378430344, 2.9376166571460542)
    E, r = 19.475606623645966, 0.06355557584223308
    res = [ode_residual(p.kappa, E, lambda x: eval_u_theta(p, E, x), r, h) for h in (2e-3, 1e-3, 5e-4)]
    for coarse, fine in zip(res, res[1:]):
        assert 12 < coarse / fine < 20
    assert res[-1] < 1e-8
