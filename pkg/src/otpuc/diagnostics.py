"""Theorem-level quantities evaluated on finite data, assembled into reports.

A_n = |α_{2n-1}|² and B_n = 1 - |α_{2n}|² are the two rational expressions in
(a, b, β) that appear in the Baxter, Rakhmanov, Szegő and strong Szegő
statements; everything here is built from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SzegoConditionError
from .measures import Measure, MomentSequence, grid, log_weight_fourier, moments, real_inner
from .opuc import verblunsky_from_moments
from .otp import (
    OtpCoefficients,
    alphas_from_otp,
    kappas_from_otp,
    opuc_from_otp,
    otp_coefficients,
    otp_from_opuc,
    otp_gram_schmidt,
    bernstein_szego_weight_otp,
    seven_term_residual,
)
from .report import Report

DIVERGENT = "divergent-trend"
SUMMABLE = "summable"
TREND_RATIO = 0.9
IDENTITY_RECORDS = 12


@dataclass(frozen=True)
class SzegoCoefficients:
    """L̂_0..L̂_N with D(z) = exp(L̂_0/2 + Σ_{n>=1} L̂_n zⁿ)."""

    values: np.ndarray

    @property
    def N(self) -> int:
        return self.values.size - 1


def tail_trend(terms) -> tuple[str, float]:
    """Classify a nonnegative series from its first N terms.

    Compares the partial-sum increments over the dyadic windows (N/4, N/2] and
    (N/2, N]: a ratio near 1 means the terms decay like 1/n or slower.
    """
    t = np.abs(np.asarray(terms, dtype=float))
    N = t.size
    if N < 8:
        return SUMMABLE if not np.any(t) else "undetermined", float("nan")
    early = t[N // 4 : N // 2].sum()
    late = t[N // 2 :].sum()
    total = t.sum()
    if late <= 1e-14 * max(1.0, total):
        return SUMMABLE, 0.0
    ratio = late / early if early > 0 else math.inf
    return (DIVERGENT if ratio >= TREND_RATIO else SUMMABLE), float(ratio)


# --------------------------------------------------------------------------
# the (a, b, β) expressions
# --------------------------------------------------------------------------


def odd_terms(k: OtpCoefficients) -> np.ndarray:
    """A_n, n = 1..N.

    The numerator a⁴ + b⁴(1+β²)² + 2a²b²(β²-1) is evaluated as
    (a² - b²(1-β²))² + (2b²β)², which is the same polynomial without the
    cancellation when a ≈ b.
    """
    a2, b2, be = k.a[1:] ** 2, k.b[1:] ** 2, k.beta[1:]
    num = (a2 - b2 * (1 - be**2)) ** 2 + (2 * b2 * be) ** 2
    den = (a2 + b2 * (1 + be**2)) ** 2
    return num / den


def odd_terms_literal(k: OtpCoefficients) -> np.ndarray:
    a2, b2, be = k.a[1:] ** 2, k.b[1:] ** 2, k.beta[1:]
    core = a2**2 + b2**2 * (1 + be**2) ** 2
    return (core + 2 * a2 * b2 * (be**2 - 1)) / (core + 2 * a2 * b2 * (be**2 + 1))


def even_ratio(k: OtpCoefficients) -> np.ndarray:
    """B_n = (1/4) P_n K_{n+1}, n = 0..N-1."""
    return 0.25 * k.P[:-1] * k.K[1:]


def even_defect(k: OtpCoefficients) -> np.ndarray:
    """1 - B_n, n = 0..N-1, through the seven-term identity (no cancellation)."""
    out = np.zeros(k.N)
    for n in range(k.N):
        x, y = k.even_parts(n + 1)
        out[n] = (x * x + y * y) if n == 0 else 0.25 * (x * x + y * y)
    return out


# --------------------------------------------------------------------------
# Szegő integral and function
# --------------------------------------------------------------------------


def szego_integral(m: Measure) -> float:
    """(1/2π)∫ log w dθ, or -inf when w vanishes on a set of positive measure."""
    lw = log_weight_fourier(m, 0)
    if not lw.finite:
        return -math.inf
    return float(lw.values[0].real)


def szego_function_coefficients(m: Measure, N: int) -> SzegoCoefficients:
    lw = log_weight_fourier(m, N)
    if not lw.finite:
        raise SzegoConditionError()
    L = lw.values.copy()
    L[0] = L[0].real
    return SzegoCoefficients(L)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def baxter_report(c: MomentSequence, k: OtpCoefficients, N: int, alphas=None) -> Report:
    """Partial sums of Σ|c_n| and of the two Baxter-type OTP series.

    With ``alphas`` (moment-side Verblunsky coefficients) the summands are
    checked against |α_{2n}| and |α_{2n-1}|.
    """
    N = min(N, k.N)
    r = Report("baxter", order=N)
    cn = np.abs(c.values[: 2 * N + 1])
    r.add_sequence("abs_moments_partial", np.arange(cn.size), np.cumsum(cn))
    even = np.sqrt(np.maximum(even_defect(k)[:N], 0.0))
    even_lit = np.sqrt(np.maximum(1.0 - even_ratio(k)[:N], 0.0))
    odd = np.sqrt(odd_terms(k)[:N])
    r.add_sequence("even_terms", np.arange(N), even)
    r.add_sequence("even_terms_literal", np.arange(N), even_lit)
    r.add_sequence("odd_terms", np.arange(1, N + 1), odd)
    r.add_sequence("otp_partial", np.arange(N), np.cumsum(even) + np.cumsum(odd))
    r.scalars["abs_moment_sum"] = float(cn.sum())
    r.scalars["even_sum"] = float(even.sum())
    r.scalars["odd_sum"] = float(odd.sum())
    r.verdicts["abs_moments"] = tail_trend(cn[1:])[0]
    r.verdicts["otp_sum"] = tail_trend(even[1:] + odd[: N - 1] if N > 1 else even)[0]
    if alphas is not None:
        # beyond a dozen records the moment-side α of a nearly singular measure
        # is itself only good to ~1e-10, and the square root amplifies noise
        n_chk = min(N, IDENTITY_RECORDS)
        al = np.asarray(alphas)[: 2 * n_chk]
        r.check("even_terms_vs_abs_alpha", np.max(np.abs(even[:n_chk] - np.abs(al[0::2]))), 1e-10)
        r.check("odd_terms_vs_abs_alpha", np.max(np.abs(odd[:n_chk] - np.abs(al[1::2]))), 1e-10)
    return r


def rakhmanov_sequences(k: OtpCoefficients, N: int, alphas=None, window: int = 4) -> Report:
    N = min(N, k.N)
    r = Report("rakhmanov", order=N)
    A = odd_terms(k)[:N]
    B = even_ratio(k)[:N]
    r.add_sequence("A", np.arange(1, N + 1), A)
    r.add_sequence("B", np.arange(N), B)
    w = max(1, min(window, N))
    r.scalars["A_last_window_max"] = float(np.max(np.abs(A[-w:])))
    r.scalars["B_last_window_dev"] = float(np.max(np.abs(B[-w:] - 1)))
    if alphas is not None:
        al = np.asarray(alphas)
        r.check("A_vs_abs_alpha_odd_sq", np.max(np.abs(A - np.abs(al[1 : 2 * N : 2]) ** 2)), 1e-10)
        r.check("B_vs_one_minus_abs_alpha_even_sq", np.max(np.abs(B - (1 - np.abs(al[0 : 2 * N : 2]) ** 2))), 1e-10)
    return r


def szego_partial_products(k: OtpCoefficients, N: int, szego: float | None = None, kappas=None) -> Report:
    """Π_{n<N} K_{n+1}/K_n (with K_0 = 1) and the sum Σ(1 - B_n) + Σ A_n."""
    N = min(N, k.N)
    r = Report("szego", order=N)
    K = k.K
    prod = np.cumprod(K[1 : N + 1] / K[:N])
    r.add_sequence("partial_product", np.arange(1, N + 1), prod)
    sums = np.cumsum(even_defect(k)[:N]) + np.cumsum(odd_terms(k)[:N])
    r.add_sequence("partial_sum", np.arange(1, N + 1), sums)
    r.scalars["product"] = float(prod[-1]) if N else 1.0
    r.scalars["sum"] = float(sums[-1]) if N else 0.0
    if szego is not None:
        target = math.exp(szego) if math.isfinite(szego) else 0.0
        r.scalars["exp_szego_integral"] = target
        r.scalars["product_deviation"] = float(abs(r.scalars["product"] - target))
    if kappas is not None and N:
        kap = np.asarray(kappas)
        r.check("telescoping_vs_kappa", abs(prod[-1] - kap[2 * N - 1] ** -2 * kap[0] ** 2), 1e-9)
    return r


def strong_szego_sums(k: OtpCoefficients, L: SzegoCoefficients | None, N: int, alphas=None) -> Report:
    """S_α = Σ 2n(1 - B_n) + Σ (2n-1)A_n and S_L = Σ n|L̂_n|²."""
    N = min(N, k.N)
    r = Report("strong_szego", order=N)
    n_even = np.arange(N)
    n_odd = np.arange(1, N + 1)
    even = 2 * n_even * even_defect(k)[:N]
    odd = (2 * n_odd - 1) * odd_terms(k)[:N]
    terms = np.concatenate([even[1:] + odd[:-1], odd[-1:]]) if N > 1 else odd
    S_alpha = np.cumsum(even) + np.cumsum(odd)
    r.add_sequence("S_alpha_partial", n_odd, S_alpha)
    r.scalars["S_alpha"] = float(S_alpha[-1]) if N else 0.0
    r.verdicts["S_alpha"] = tail_trend(terms)[0]
    if L is not None:
        n = np.arange(1, L.N + 1)
        tl = n * np.abs(L.values[1:]) ** 2
        r.add_sequence("S_L_partial", n, np.cumsum(tl))
        r.scalars["S_L"] = float(tl.sum())
        r.verdicts["S_L"] = tail_trend(tl)[0]
    if alphas is not None:
        al = np.asarray(alphas)[: 2 * N]
        m = np.arange(al.size)
        direct = np.cumsum(m * np.abs(al) ** 2)[1::2]
        r.add_sequence("sum_m_abs_alpha_sq", n_odd, direct)
        r.check("S_alpha_vs_sum_m_abs_alpha_sq", np.max(np.abs(S_alpha - direct)), 1e-9)
    return r


def limit_checks(k: OtpCoefficients, m: Measure, N: int, szego: float | None = None) -> Report:
    """a_N b_N against exp(S)/2 and K_N against exp(S), S the Szegő integral."""
    N = min(N, k.N)
    S = szego_integral(m) if szego is None else szego
    target = math.exp(S) if math.isfinite(S) else 0.0
    r = Report("limits", measure=m.describe(), order=N)
    ab = k.a[1 : N + 1] * k.b[1 : N + 1]
    K = k.K[1 : N + 1]
    r.add_sequence("a_b", np.arange(1, N + 1), ab)
    r.add_sequence("K", np.arange(1, N + 1), K)
    r.scalars["szego_integral"] = S
    r.scalars["a_b_deviation"] = float(abs(ab[-1] - 0.5 * target))
    r.scalars["K_deviation"] = float(abs(K[-1] - target))
    if not math.isfinite(S):
        r.verdicts["limits"] = "expected-degenerate"
    return r


def identity_suite(m: Measure, N: int, tol: float, points: int = 64) -> Report:
    """Both sides of every closed-form relation between the OPUC and OTP data."""
    c = moments(m, 2 * N + 2)
    lad = verblunsky_from_moments(c, 2 * N + 2)
    s = otp_gram_schmidt(c, N + 1)
    k = otp_coefficients(c, N + 1, s)
    z = np.exp(1j * grid(points))
    th = grid(points)

    res = {key: 0.0 for key in (
        "kappa_even", "kappa_odd", "kappa_product", "alpha_odd", "alpha_even", "seven_term",
        "lambda", "rep_phi_odd", "rep_phi_star_even", "rep_sigma", "rep_pi",
        "rep_pointwise", "orthonormality", "bs_weight_otp_form",
    )}
    rel = lambda x, y: abs(x - y) / max(1.0, abs(y))  # noqa: E731
    for n in range(1, N + 1):
        k_odd, k_even = kappas_from_otp(k, n)
        res["kappa_even"] = max(res["kappa_even"], rel(k_even**2, lad.kappas[2 * n] ** 2))
        res["kappa_odd"] = max(res["kappa_odd"], rel(k_odd**2, lad.kappas[2 * n - 1] ** 2))
        res["kappa_product"] = max(
            res["kappa_product"], rel(k.K[n] ** -1 * k.P[n] / 4, 0.25 / (k.a[n] ** 2 * k.b[n] ** 2))
        )
        ae, ao = alphas_from_otp(k, n)
        res["alpha_even"] = max(res["alpha_even"], abs(ae - lad.alphas[2 * n - 2]))
        res["alpha_odd"] = max(res["alpha_odd"], abs(ao - lad.alphas[2 * n - 1]))
        res["lambda"] = max(res["lambda"], rel(k.lam[n], -2j * lad.kappas[2 * n] ** 2))

        phi_odd, star_even = opuc_from_otp(s, k, n, tol=math.inf)
        res["rep_phi_odd"] = max(res["rep_phi_odd"], np.max(np.abs(phi_odd - lad.phi(2 * n - 1))))
        res["rep_phi_star_even"] = max(res["rep_phi_star_even"], np.max(np.abs(star_even - lad.phi_star(2 * n))))
        sig, pi = otp_from_opuc(lad, k, n, tol=math.inf)
        res["rep_sigma"] = max(res["rep_sigma"], np.max(np.abs(sig.coeffs - s.sigma[n].coeffs)))
        res["rep_pi"] = max(res["rep_pi"], np.max(np.abs(pi.coeffs - s.pi[n].coeffs)))

        # pointwise on the circle, straight from the formulas
        a, b, be, lam = k.a[n], k.b[n], k.beta[n], k.lam[n]
        sg, pv = s.sigma[n](z), s.pi[n](z)
        po = np.polyval(lad.phi(2 * n - 1)[::-1], z)
        pe = np.polyval(lad.phi_star(2 * n)[::-1], z)
        kap2 = lad.kappas[2 * n] ** 2
        d = [
            z ** (n - 1) * (a * sg + (be + 1j) * b * pv) - po,
            # κ²_{2n}Φ*_{2n} relation divided through by κ²_{2n}, which grows like
            # Π(1 - |α|²)^{-1} and would otherwise swamp the comparison
            pe - 0.5 / kap2 * z**n * ((1 + 1j * be) * sg / a - 1j * pv / b),
            a * sg + 0.5 * z ** (-n) * (1j / (lam * b * b) * z * po - (1 - 1j * be) * pe),
            b * pv + 0.5 * z ** (-n) * ((1 + 1j * be) / (lam * a * a) * z * po - 1j * pe),
        ]
        scale = max(1.0, np.max(np.abs(po)), np.max(np.abs(pe)))
        res["rep_pointwise"] = max(res["rep_pointwise"], max(np.max(np.abs(x)) for x in d) / scale)

        for order in (2 * n - 1, 2 * n):
            phi = lad.phi(order)
            direct = 1.0 / (lad.kappas[order] ** 2 * np.abs(np.polyval(phi[::-1], z)) ** 2)
            otpf = bernstein_szego_weight_otp(s, k, order, th)
            res["bs_weight_otp_form"] = max(res["bs_weight_otp_form"], np.max(np.abs(otpf / direct - 1)))

    for n in range(0, N + 1):
        res["seven_term"] = max(res["seven_term"], abs(seven_term_residual(k, n)))

    fams = [("s", s.sigma[n]) for n in range(N + 1)] + [("p", s.pi[n]) for n in range(1, N + 1)]
    for i, (ti, fi) in enumerate(fams):
        for j, (tj, fj) in enumerate(fams[: i + 1]):
            want = 1.0 if i == j else 0.0
            res["orthonormality"] = max(res["orthonormality"], abs(real_inner(fi, fj, c) - want))

    r = Report("identities", measure=m.describe(), order=N)
    for key, val in res.items():
        r.check(key, val, tol)
    r.add_sequence("alpha", np.arange(lad.N), lad.alphas)
    r.add_sequence("kappa", np.arange(lad.N + 1), lad.kappas)
    return r
