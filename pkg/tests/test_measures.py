import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from otpuc.errors import DomainError, InputError, InsufficientOrderError, ResolutionError
from otpuc.measures import (
    LaurentPolynomial,
    MomentSequence,
    bernstein_szego_measure,
    build_measure,
    complex_inner,
    log_weight_fourier,
    moments,
    real_inner,
)
from otpuc.opuc import kappa_seq


def test_lebesgue_moments_are_delta():
    c = moments(build_measure({"kind": "lebesgue"}), 20)
    assert c.values[0] == pytest.approx(1.0)
    assert np.max(np.abs(c.values[1:])) < 1e-15


def test_cosine_moments():
    c = moments(build_measure({"kind": "cosine"}), 10)
    np.testing.assert_allclose(c.values.real, [1, 0.5] + [0] * 9, atol=1e-15)


def test_exp_cos_moments_match_bessel_series():
    c = moments(build_measure({"kind": "exp_cos"}), 16)
    np.testing.assert_allclose(c.values, oracles.exp_cos_moments(16), atol=1e-15)


def test_bernstein_szego_one_coefficient_moments():
    c = moments(bernstein_szego_measure([0.5]), 12)
    np.testing.assert_allclose(c.values, 0.5 ** np.arange(13), atol=1e-15)


def test_exact_bernstein_szego_moments_agree_with_fine_quadrature():
    m = bernstein_szego_measure([0.3 + 0.2j, -0.4, 0.1j], nodes=1 << 14)
    exact = moments(m, 20)
    quad = moments(m, 20, method="quadrature")
    np.testing.assert_allclose(exact.values, quad.values, atol=1e-13)


def test_geronimus_moments_agree_with_fine_quadrature():
    m = build_measure({"kind": "geronimus", "alpha": 0.5})
    exact = moments(m, 12).values
    M = 1 << 16
    th = 2 * np.pi * np.arange(M) / M
    fine = np.fft.fft(m.weight(th))[:13] / M + m.atom_masses.sum()
    # the trapezoid rule only converges like h^{3/2} at the gap edges
    np.testing.assert_allclose(exact, fine, atol=1e-6)
    assert exact[0] == pytest.approx(1.0, abs=1e-14)


def test_atoms_are_added_and_normalized():
    m = build_measure({"kind": "lebesgue", "atoms": [{"theta": 0.0, "mass": 1.0}]})
    assert m.total_mass() == pytest.approx(1.0)
    c = moments(m, 4).values
    np.testing.assert_allclose(c[1:], 0.5, atol=1e-15)


def test_normalization_of_unnormalized_weight():
    m = build_measure({"kind": "samples", "values": [3.0] * 64})
    assert m.total_mass() == pytest.approx(1.0)
    assert m.nodes == 64


@pytest.mark.parametrize(
    "spec",
    [
        {"kind": "samples", "values": [-1.0] + [1.0] * 63},
        {"kind": "lebesgue", "atoms": [{"theta": 0.0, "mass": -0.1}]},
        {"kind": "lebesgue", "atoms": [[0.0, 0.1], [2 * math.pi, 0.1]]},
        {"kind": "samples", "values": [0.0] * 64},
        {"kind": "nonsense"},
        {"kind": "lebesgue", "quadrature": {"nodes": 1000}},
    ],
)
def test_invalid_specs_rejected(spec):
    with pytest.raises(InputError):
        build_measure(spec)


def test_bernstein_szego_rejects_coefficient_on_circle():
    with pytest.raises(DomainError):
        bernstein_szego_measure([1.0])


def test_resolution_guard():
    with pytest.raises(ResolutionError):
        moments(build_measure({"kind": "lebesgue", "quadrature": {"nodes": 64}}), 17)


def test_moment_sequence_validation_and_extension():
    with pytest.raises(InputError):
        MomentSequence(np.array([2.0, 0.0]))
    c = MomentSequence(np.array([1.0, 0.3 + 0.1j]))
    assert c.ext(-1) == pytest.approx(0.3 - 0.1j)
    with pytest.raises(InsufficientOrderError):
        c.ext(2)


def test_toeplitz_positive_definite_for_genuine_measure():
    c = moments(build_measure({"kind": "exp_cos"}), 10)
    assert c.is_positive_definite()
    assert c.min_eigenvalue() > 0


def test_inner_products_on_lebesgue():
    c = moments(build_measure({"kind": "lebesgue"}), 8)
    z2 = np.array([0, 0, 1.0])
    assert complex_inner(z2, z2, c) == pytest.approx(1.0)
    assert abs(complex_inner(np.array([1.0]), z2, c)) < 1e-15
    cs = LaurentPolynomial.cos_basis(3)
    assert real_inner(cs, cs, c) == pytest.approx(0.5)


def test_real_inner_rejects_non_real_function():
    c = moments(build_measure({"kind": "lebesgue"}), 4)
    with pytest.raises(InputError):
        real_inner(LaurentPolynomial.monomial(1), LaurentPolynomial.monomial(1), c)


def test_laurent_cos_sin_basis_real_on_circle():
    th = np.linspace(0, 2 * np.pi, 17)
    z = np.exp(1j * th)
    np.testing.assert_allclose(LaurentPolynomial.cos_basis(3)(z), np.cos(3 * th), atol=1e-15)
    np.testing.assert_allclose(LaurentPolynomial.sin_basis(2)(z), np.sin(2 * th), atol=1e-15)
    assert LaurentPolynomial.sin_basis(2).is_real_on_circle()


def test_log_fourier_exp_cos():
    lw = log_weight_fourier(build_measure({"kind": "exp_cos"}), 8)
    assert lw.finite
    assert lw.values[0].real == pytest.approx(-math.log(oracles.bessel_i(0)), abs=1e-12)
    assert lw.values[1] == pytest.approx(0.5, abs=1e-12)
    assert np.max(np.abs(lw.values[2:])) < 1e-12


def test_log_fourier_cosine_uses_zero_template():
    lw = log_weight_fourier(build_measure({"kind": "cosine"}), 20)
    assert lw.finite and len(lw.zeros) == 1
    assert lw.zeros[0][1] == pytest.approx(2.0)
    np.testing.assert_allclose(lw.values.real, oracles.cosine_log_fourier(20), atol=1e-8)


def test_log_fourier_bernstein_szego_exact_against_quadrature():
    al = [0.4 - 0.2j, 0.3j]
    m = bernstein_szego_measure(al, nodes=1 << 12)
    exact = log_weight_fourier(m, 10).values
    th = 2 * np.pi * np.arange(m.nodes) / m.nodes
    quad = np.fft.fft(np.log(m.weight(th)))[:11] / m.nodes
    np.testing.assert_allclose(exact, quad, atol=1e-13)
    assert exact[0].real == pytest.approx(np.log(np.prod(1 - np.abs(al) ** 2)), abs=1e-14)


def test_log_fourier_flags_gap_as_divergent():
    assert not log_weight_fourier(build_measure({"kind": "geronimus", "alpha": 0.5}), 4).finite


alpha_lists = st.lists(
    st.tuples(st.floats(0, 0.8), st.floats(0, 2 * math.pi)).map(lambda rp: rp[0] * complex(math.cos(rp[1]), math.sin(rp[1]))),
    min_size=1,
    max_size=8,
)


@settings(max_examples=40, deadline=None)
@given(alpha_lists)
def test_bernstein_szego_weight_is_probability_density(al):
    m = bernstein_szego_measure(al)
    th = 2 * np.pi * np.arange(1 << 14) / (1 << 14)
    # κ_N^{-2} = Π(1 - |α|²) bounds how sharp the peaks are; moderate α resolve easily
    if np.prod(1 - np.abs(al) ** 2) > 0.05:
        assert np.mean(m.weight(th)) == pytest.approx(1.0, abs=1e-9)
    assert moments(m, 0).values[0] == pytest.approx(1.0)
    assert kappa_seq(al)[-1] >= 1.0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=5), st.lists(st.floats(-2, 2), min_size=1, max_size=5),
       st.integers(-3, 3), st.integers(-3, 3))
def test_laurent_product_evaluates_pointwise(p, q, lp, lq):
    f, g = LaurentPolynomial(p, lp), LaurentPolynomial(q, lq)
    z = np.exp(1j * np.linspace(0, 6, 7))
    np.testing.assert_allclose((f * g)(z), f(z) * g(z), atol=1e-12)
    np.testing.assert_allclose((f + g)(z), f(z) + g(z), atol=1e-12)
