import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from otpuc.errors import DegeneracyError, InsufficientOrderError
from otpuc.measures import bernstein_szego_measure, build_measure, moments
from otpuc.opuc import verblunsky_from_moments
from otpuc.otp import (
    alphas_from_otp,
    bernstein_szego_weight_otp,
    kappas_from_otp,
    opuc_from_otp,
    otp_coefficients,
    otp_from_opuc,
    otp_gram_schmidt,
    seven_term_residual,
)

R2 = 2**-0.5


def _setup(m, N):
    c = moments(m, 2 * N + 2)
    s = otp_gram_schmidt(c, N + 1)
    return c, s, otp_coefficients(c, N + 1, s), verblunsky_from_moments(c, 2 * N + 2)


def test_lebesgue_system_closed_form():
    c, s, k, _ = _setup(build_measure({"kind": "lebesgue"}), 6)
    np.testing.assert_allclose(k.a[1:], R2, atol=1e-12)
    np.testing.assert_allclose(k.b[1:], R2, atol=1e-12)
    for n in range(1, 7):
        # σ_n = √2 cos nθ, π_n = √2 sin nθ
        np.testing.assert_allclose(s.sigma[n].coeffs[[0, -1]], [R2, R2], atol=1e-12)
        np.testing.assert_allclose(s.pi[n].coeffs[[0, -1]], [1j * R2, -1j * R2], atol=1e-12)
        assert np.max(np.abs(s.sigma[n].coeffs[1:-1])) < 1e-12


def test_gram_schmidt_matches_dense_qr_oracle():
    w = lambda th: np.exp(np.cos(th) + 0.3 * np.sin(2 * th))  # noqa: E731
    th = 2 * np.pi * np.arange(4096) / 4096
    vals = w(th) / np.mean(w(th))
    m = build_measure({"kind": "samples", "values": vals.tolist()})
    s = otp_gram_schmidt(moments(m, 12), 5)
    th_o, ref, norms = oracles.dense_trig_gram_schmidt(lambda t: np.interp(t, th, vals, period=2 * np.pi), 5, M=4096)
    z = np.exp(1j * th_o)
    for n in range(1, 6):
        np.testing.assert_allclose(s.sigma[n](z).real, ref[2 * n], atol=1e-10)
        np.testing.assert_allclose(s.pi[n](z).real, ref[2 * n - 1], atol=1e-10)
        assert s.a[n] == pytest.approx(norms[2 * n], rel=1e-12)
        assert s.b[n] == pytest.approx(norms[2 * n - 1], rel=1e-12)


def test_leading_coefficients_are_half():
    # a_nσ_n + β_n b_nπ_n has z^{±n} coefficients exactly 1/2
    c, s, k, _ = _setup(build_measure({"kind": "exp_cos"}), 5)
    for n in range(1, 6):
        f = s.sigma[n] * k.a[n] + s.pi[n] * (k.beta[n] * k.b[n])
        assert f.coef(n) == pytest.approx(0.5, abs=1e-12)
        assert f.coef(-n) == pytest.approx(0.5, abs=1e-12)
        g = s.pi[n] * k.b[n]
        assert g.coef(n) == pytest.approx(-0.5j, abs=1e-12)


@pytest.mark.parametrize("name", ["leb", "cos", "exp", "bs1", "ger16"])
def test_dual_path_kappas_and_alphas(fixture_measures, name):
    c, s, k, lad = _setup(fixture_measures[name], 8)
    for n in range(1, 9):
        ko, ke = kappas_from_otp(k, n)
        assert ko == pytest.approx(lad.kappas[2 * n - 1], rel=1e-9)
        assert ke == pytest.approx(lad.kappas[2 * n], rel=1e-9)
        ae, ao = alphas_from_otp(k, n)
        assert abs(ae - lad.alphas[2 * n - 2]) < 1e-8
        assert abs(ao - lad.alphas[2 * n - 1]) < 1e-8


@pytest.mark.parametrize("name", ["leb", "cos", "exp", "bs1"])
def test_seven_term_identity(fixture_measures, name):
    c, s, k, _ = _setup(fixture_measures[name], 8)
    for n in range(0, 8):
        assert abs(seven_term_residual(k, n)) < 1e-10


def test_mutual_representation_round_trip(fixture_measures):
    c, s, k, lad = _setup(fixture_measures["cos"], 6)
    for n in range(1, 7):
        odd, even = opuc_from_otp(s, k, n)
        np.testing.assert_allclose(odd, lad.phi(2 * n - 1), atol=1e-11)
        np.testing.assert_allclose(even, lad.phi_star(2 * n), atol=1e-11)
        sig, pi = otp_from_opuc(lad, k, n)
        assert sig.allclose(s.sigma[n], 1e-11)
        assert pi.allclose(s.pi[n], 1e-11)


def test_bernstein_szego_weight_in_otp_form(fixture_measures):
    c, s, k, lad = _setup(fixture_measures["exp"], 4)
    th = np.linspace(0, 2 * np.pi, 33)
    z = np.exp(1j * th)
    for order in range(1, 9):
        phi = lad.phi(order) * lad.kappas[order]
        direct = 1 / np.abs(np.polyval(phi[::-1], z)) ** 2
        np.testing.assert_allclose(bernstein_szego_weight_otp(s, k, order, th), direct, rtol=1e-11)


def test_bernstein_szego_weight_reproduces_measure():
    al = [0.4, -0.2j]
    m = bernstein_szego_measure(al)
    c, s, k, _ = _setup(m, 3)
    th = np.linspace(0, 2 * np.pi, 11)
    np.testing.assert_allclose(bernstein_szego_weight_otp(s, k, 2, th), m.weight(th), rtol=1e-12)


def test_otp_needs_moments_to_2n():
    c = moments(build_measure({"kind": "lebesgue"}), 5)
    with pytest.raises(InsufficientOrderError):
        otp_gram_schmidt(c, 3)


def test_gram_schmidt_degenerate_on_finite_support():
    m = build_measure({"kind": "samples", "values": [0.0] * 64, "atoms": [[0.0, 0.5], [1.0, 0.5]]})
    with pytest.raises(DegeneracyError):
        otp_gram_schmidt(moments(m, 8), 4)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 0.8), st.floats(0, 2 * math.pi)), min_size=1, max_size=10))
def test_identities_on_random_bernstein_szego(rp):
    al = np.array([r * np.exp(1j * p) for r, p in rp])
    c, s, k, lad = _setup(bernstein_szego_measure(al), 6)
    for n in range(1, 7):
        ae, ao = alphas_from_otp(k, n)
        assert abs(ae - lad.alphas[2 * n - 2]) < 1e-8
        assert abs(ao - lad.alphas[2 * n - 1]) < 1e-8
        assert abs(seven_term_residual(k, n - 1)) < 1e-8
    # P_n and K_n are tied by P_n a_n² b_n² = K_n
    np.testing.assert_allclose(k.P[1:] * k.a[1:] ** 2 * k.b[1:] ** 2, k.K[1:], rtol=1e-12)
