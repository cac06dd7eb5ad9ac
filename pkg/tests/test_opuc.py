import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from otpuc.errors import DegeneracyError, DomainError, InsufficientOrderError
from otpuc.measures import MomentSequence, bernstein_szego_measure, build_measure, complex_inner, moments
from otpuc.opuc import kappa_seq, monic_phi, reversed_poly, szego_step, verblunsky_from_moments


def test_reversed_poly():
    np.testing.assert_allclose(reversed_poly([1, 2j, 3]), [3, -2j, 1])
    np.testing.assert_allclose(reversed_poly([1, 1], 3), [0, 0, 1, 1])


def test_szego_step_is_monic():
    phi = szego_step(np.array([1.0 + 0j]), 0.5)
    np.testing.assert_allclose(phi, [-0.5, 1.0])


def test_lebesgue_alphas_vanish():
    lad = verblunsky_from_moments(moments(build_measure({"kind": "lebesgue"}), 32), 32)
    assert np.max(np.abs(lad.alphas)) <= 1e-12
    np.testing.assert_allclose(lad.kappas, 1.0, atol=1e-12)


def test_cosine_alphas_closed_form():
    lad = verblunsky_from_moments(moments(build_measure({"kind": "cosine"}), 24), 24)
    np.testing.assert_allclose(lad.alphas, oracles.cosine_alphas(24), atol=1e-12)


@pytest.mark.parametrize("name", ["cos", "exp", "bs1", "ger16"])
def test_alphas_match_independent_levinson(fixture_measures, name):
    c = moments(fixture_measures[name], 16)
    lad = verblunsky_from_moments(c, 16)
    np.testing.assert_allclose(lad.alphas, oracles.szego_recursion_alphas_from_toeplitz(c.values, 16), atol=1e-10)


def test_kappa_seq_and_measured_norms_agree(fixture_measures):
    lad = verblunsky_from_moments(moments(fixture_measures["exp"], 20), 20)
    np.testing.assert_allclose(lad.kappas, kappa_seq(lad.alphas), rtol=1e-12)


def test_kappa_seq_domain():
    with pytest.raises(DomainError):
        kappa_seq([0.2, 1.0])


def test_insufficient_order():
    with pytest.raises(InsufficientOrderError):
        verblunsky_from_moments(moments(build_measure({"kind": "lebesgue"}), 4), 5)


def test_finitely_supported_measure_degenerates():
    # two atoms: the Toeplitz matrix has rank 2, so Φ_2 has zero norm
    m = build_measure({"kind": "samples", "values": [0.0] * 64, "atoms": [[0.0, 0.5], [math.pi, 0.5]]})
    with pytest.raises(DegeneracyError) as exc:
        verblunsky_from_moments(moments(m, 8), 8)
    assert exc.value.index == 2


def test_orthogonality_of_phis(fixture_measures):
    c = moments(fixture_measures["exp"], 12)
    lad = verblunsky_from_moments(c, 12)
    for n in range(1, 8):
        for k in range(n):
            zk = np.zeros(k + 1)
            zk[k] = 1.0
            assert abs(complex_inner(zk, lad.phi(n), c)) < 1e-13


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 0.8), st.floats(0, 2 * math.pi)), min_size=1, max_size=12))
def test_bernstein_szego_alphas_recovered(rp):
    al = np.array([r * np.exp(1j * p) for r, p in rp])
    N = al.size + 3
    lad = verblunsky_from_moments(moments(bernstein_szego_measure(al), N), N)
    np.testing.assert_allclose(lad.alphas[: al.size], al, atol=1e-9)
    assert np.max(np.abs(lad.alphas[al.size :])) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 0.95), st.floats(0, 2 * math.pi)), min_size=1, max_size=10))
def test_zeros_of_phi_inside_disc(rp):
    al = [r * np.exp(1j * p) for r, p in rp]
    roots = np.roots(monic_phi(al, len(al))[::-1])
    assert np.all(np.abs(roots) < 1)


def test_moment_sequence_must_be_normalized():
    with pytest.raises(Exception):
        verblunsky_from_moments(MomentSequence(np.array([0.5, 0.1])), 1)
