"""Orthonormal trigonometric (Laurent) polynomials and their relation to OPUC.

The ordered basis is 1, s_1, c_1, s_2, c_2, ... with
s_n = (zⁿ - z⁻ⁿ)/2i and c_n = (zⁿ + z⁻ⁿ)/2; Gram–Schmidt under the real
bilinear form gives b_nπ_n (from s_n) and then a_nσ_n (from c_n).

Index-0 conventions: σ_0 = 1, π_0 = 0, a_0 = b_0 = 1, β_0 = 0.  Plugging
that row into the closed forms for κ²_{2n} would give κ_0² = 1/2, so the
derived quantities below use their n = 0 values instead: P_0 = 4κ_0² = 4 and
K_0 = κ_{-1}^{-2} = 1.  Likewise σ_0 carries constant coefficient 1 (not 1/2),
which doubles the even Verblunsky formula at n = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, InconsistencyError, InputError, InsufficientOrderError
from .measures import LaurentPolynomial, MomentSequence, real_inner
from .opuc import OpucLadder

DEGENERACY_TOL = 1e-13
CANCELLATION_TOL = 1e-10


@dataclass(frozen=True)
class OtpSystem:
    """σ_0..σ_N, π_0..π_N and the Gram–Schmidt norms a_n, b_n.

    ``coords`` holds the orthonormal functions in the basis 1, s_1, c_1, ...
    (row 2n is σ_n, row 2n-1 is π_n) and ``gram`` the Gram matrix of that
    basis, both in extended precision.
    """

    N: int
    sigma: tuple[LaurentPolynomial, ...]
    pi: tuple[LaurentPolynomial, ...]
    a: np.ndarray
    b: np.ndarray
    coords: np.ndarray | None = None
    gram: np.ndarray | None = None

    def inner_with_basis(self, j: int, row: int) -> float:
        """⟨basis_j, row-th orthonormal function⟩_R in extended precision."""
        return float(self.gram[j] @ self.coords[row])


@dataclass(frozen=True)
class OtpCoefficients:
    """Per-n coefficient records; index 0 holds the convention row."""

    a: np.ndarray
    b: np.ndarray
    beta: np.ndarray
    iota: np.ndarray
    jmath: np.ndarray
    varsigma: np.ndarray
    zeta: np.ndarray

    @property
    def N(self) -> int:
        return self.a.size - 1

    @property
    def K(self) -> np.ndarray:
        """a_n² + b_n²(1 + β_n²) = κ_{2n-1}^{-2}; K_0 = 1."""
        K = self.a**2 + self.b**2 * (1 + self.beta**2)
        K[0] = 1.0
        return K

    @property
    def P(self) -> np.ndarray:
        """a_n^{-2}(1 + β_n²) + b_n^{-2} = 4κ_{2n}²; P_0 = 4."""
        P = self.a**-2 * (1 + self.beta**2) + self.b**-2
        P[0] = 4.0
        return P

    @property
    def lam(self) -> np.ndarray:
        """Λ_n = -(1/2) P_n i."""
        return -0.5j * self.P

    def even_parts(self, n: int) -> tuple[float, float]:
        """(ι_n - ζ_n + β_{n-1}ς_n, ȷ_n + ς_n - β_{n-1}ι_n) for n >= 1."""
        bp = self.beta[n - 1]
        x = self.iota[n] - self.zeta[n] + bp * self.varsigma[n]
        y = self.jmath[n] + self.varsigma[n] - bp * self.iota[n]
        return float(x), float(y)

    def row(self, n: int) -> dict:
        return {
            "a": float(self.a[n]),
            "b": float(self.b[n]),
            "beta": float(self.beta[n]),
            "iota": float(self.iota[n]),
            "jmath": float(self.jmath[n]),
            "varsigma": float(self.varsigma[n]),
            "zeta": float(self.zeta[n]),
        }


def _basis(n_max: int) -> list[LaurentPolynomial]:
    out = [LaurentPolynomial.cos_basis(0)]
    for n in range(1, n_max + 1):
        out.append(LaurentPolynomial.sin_basis(n))
        out.append(LaurentPolynomial.cos_basis(n))
    return out


def otp_gram_schmidt(c: MomentSequence, N: int) -> OtpSystem:
    """Orthonormalize 1, s_1, c_1, ..., s_N, c_N under ⟨f, g⟩_R.

    Modified Gram–Schmidt with one reorthogonalization pass, carried out in
    trigonometric coordinates with the Gram matrix assembled from the moments.
    """
    if N < 0:
        raise InputError("order must be >= 0")
    if c.order < 2 * N:
        raise InsufficientOrderError(2 * N, c.order)
    basis = _basis(N)
    B = np.array([f.padded(-N, N).coeffs for f in basis])
    pw = np.arange(-N, N + 1)
    H = c.ext(-(pw[:, None] + pw[None, :]))
    # extended precision keeps the orthogonalization error near the moment
    # rounding level even when the Gram matrix is badly conditioned
    G = (B @ H @ B.T).real.astype(np.longdouble)

    dim = len(basis)
    Q = np.zeros((dim, dim), dtype=np.longdouble)
    norms = np.zeros(dim, dtype=np.longdouble)
    for i in range(dim):
        v = np.zeros(dim, dtype=np.longdouble)
        v[i] = 1
        for _ in range(2):
            for j in range(i):
                v -= (Q[j] @ (G @ v)) * Q[j]
        nrm2 = v @ (G @ v)
        if nrm2 <= DEGENERACY_TOL:
            raise DegeneracyError((i + 1) // 2, float(nrm2))
        norms[i] = np.sqrt(nrm2)
        Q[i] = v / norms[i]

    lau = Q.astype(float) @ B
    sigma = [LaurentPolynomial([1.0])]
    pi = [LaurentPolynomial([0.0])]
    a = np.ones(N + 1)
    b = np.ones(N + 1)
    for n in range(1, N + 1):
        sl = slice(N - n, N + n + 1)
        pi.append(LaurentPolynomial(lau[2 * n - 1, sl], -n))
        sigma.append(LaurentPolynomial(lau[2 * n, sl], -n))
        b[n] = norms[2 * n - 1]
        a[n] = norms[2 * n]
    return OtpSystem(N, tuple(sigma), tuple(pi), a, b, Q, G)


def otp_coefficients(c: MomentSequence, N: int, system: OtpSystem | None = None) -> OtpCoefficients:
    """a_n, b_n from the Gram–Schmidt norms; β, ι, ȷ, ς, ζ as real inner products."""
    s = system if system is not None else otp_gram_schmidt(c, N)
    if s.N < N:
        raise InputError(f"system of order {s.N} cannot supply records up to {N}")
    a, b = s.a[: N + 1].copy(), s.b[: N + 1].copy()
    beta, iota, jm, vs, zt = (np.zeros(N + 1) for _ in range(5))
    if s.coords is not None:
        # basis index of s_n is 2n-1, of c_n is 2n; σ_n is row 2n, π_n row 2n-1
        ip = s.inner_with_basis
        for n in range(1, N + 1):
            beta[n] = ip(2 * n, 2 * n - 1) / b[n]
            iota[n] = ip(2 * n, 2 * n - 2) / a[n - 1]
            vs[n] = ip(2 * n - 1, 2 * n - 2) / a[n - 1]
            if n > 1:
                jm[n] = ip(2 * n, 2 * n - 3) / b[n - 1]
                zt[n] = ip(2 * n - 1, 2 * n - 3) / b[n - 1]
        return OtpCoefficients(a, b, beta, iota, jm, vs, zt)
    for n in range(1, N + 1):
        cn = LaurentPolynomial.cos_basis(n)
        sn = LaurentPolynomial.sin_basis(n)
        beta[n] = real_inner(cn, s.pi[n], c) / b[n]
        iota[n] = real_inner(cn, s.sigma[n - 1], c) / a[n - 1]
        vs[n] = real_inner(sn, s.sigma[n - 1], c) / a[n - 1]
        if n > 1:
            jm[n] = real_inner(cn, s.pi[n - 1], c) / b[n - 1]
            zt[n] = real_inner(sn, s.pi[n - 1], c) / b[n - 1]
    return OtpCoefficients(a, b, beta, iota, jm, vs, zt)


def _check_index(k: OtpCoefficients, n: int):
    if not 1 <= n <= k.N:
        raise InputError(f"index n={n} outside 1..{k.N}")


def kappas_from_otp(k: OtpCoefficients, n: int) -> tuple[float, float]:
    """(κ_{2n-1}, κ_{2n}) from κ²_{2n} = P_n/4 and κ²_{2n-1} = 1/K_n."""
    _check_index(k, n)
    return float(k.K[n] ** -0.5), float(np.sqrt(k.P[n] / 4))


def alphas_from_otp(k: OtpCoefficients, n: int) -> tuple[complex, complex]:
    """(α_{2n-2}, α_{2n-1}) from the coefficient records."""
    _check_index(k, n)
    a2, b2, be = k.a[n] ** 2, k.b[n] ** 2, k.beta[n]
    kap2 = k.P[n] / 4
    odd = 0.25 / kap2 * (1 / b2 - (1 - be**2) / a2) - 0.5j / kap2 * be / a2
    x, y = k.even_parts(n)
    half = 1.0 if n == 1 else 0.5
    return complex(half * (x - 1j * y)), complex(odd)


def seven_term_residual(k: OtpCoefficients, n: int) -> float:
    """LHS - 4 of P_n K_{n+1} + (ι - ζ + βς)² + (ȷ + ς - βι)² = 4, needs records to n+1."""
    if not 0 <= n < k.N:
        raise InputError(f"identity at n={n} needs records up to n+1 <= {k.N}")
    x, y = k.even_parts(n + 1)
    w = 4.0 if n == 0 else 1.0
    return float(k.P[n] * k.K[n + 1] + w * (x * x + y * y) - 4.0)


def opuc_from_otp(
    s: OtpSystem, k: OtpCoefficients, n: int, tol: float = CANCELLATION_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """(Φ_{2n-1}, Φ*_{2n}) as ascending coefficient arrays.

    Φ_{2n-1} = z^{n-1}[a_nσ_n + (β_n + i)b_nπ_n] and
    κ²_{2n}Φ*_{2n} = (1/2)zⁿ[a_n^{-1}(1 + β_n i)σ_n - i b_n^{-1}π_n].
    """
    _check_index(k, n)
    a, b, be = k.a[n], k.b[n], k.beta[n]
    sig, pi = s.sigma[n], s.pi[n]
    odd = (sig * a + pi * ((be + 1j) * b)).shift(n - 1).padded(-1, 2 * n - 1)
    kap2 = k.P[n] / 4
    even = ((sig * ((1 + 1j * be) / a) - pi * (1j / b)) * (0.5 / kap2)).shift(n).padded(0, 2 * n)
    resid = abs(odd.coeffs[0])
    if resid > tol:
        raise InconsistencyError(f"negative powers in Φ_{2 * n - 1} do not cancel (residual {resid:.2e})")
    return odd.coeffs[1:].copy(), even.coeffs.copy()


def otp_from_opuc(
    ladder: OpucLadder, k: OtpCoefficients, n: int, tol: float = CANCELLATION_TOL
) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """(σ_n, π_n) from Φ_{2n-1} and Φ*_{2n}."""
    _check_index(k, n)
    if ladder.N < 2 * n:
        raise InputError(f"ladder must reach Φ_{2 * n}")
    a, b, be, lam = k.a[n], k.b[n], k.beta[n], k.lam[n]
    zphi = LaurentPolynomial(ladder.phi(2 * n - 1), 1)
    star = LaurentPolynomial(ladder.phi_star(2 * n), 0)
    a_sig = (zphi * (1j / (lam * b * b)) - star * (1 - 1j * be)).shift(-n) * -0.5
    b_pi = (zphi * ((1 + 1j * be) / (lam * a * a)) - star * 1j).shift(-n) * -0.5
    sig, pi = a_sig / a, b_pi / b
    for name, f in (("σ", sig), ("π", pi)):
        if not f.is_real_on_circle(tol):
            raise InconsistencyError(f"{name}_{n} is not real on the circle (defect {f.reality_defect():.2e})")
    return sig.padded(-n, n), pi.padded(-n, n)


def bernstein_szego_weight_otp(s: OtpSystem, k: OtpCoefficients, order: int, theta) -> np.ndarray:
    """Weight 1/|φ_order(e^{iθ})|² of the Bernstein–Szegő approximant, written via σ_m, π_m.

    order = 2m-1: K_m / |a_mσ_m + (β_m + i)b_mπ_m|²;
    order = 2m:   K_m / (a_m² b_m² |a_m^{-1}(β_m - i)σ_m - b_m^{-1}π_m|²).
    """
    if order < 1:
        raise InputError("order must be >= 1")
    m = (order + 1) // 2
    _check_index(k, m)
    z = np.exp(1j * np.asarray(theta, dtype=float))
    a, b, be, K = k.a[m], k.b[m], k.beta[m], k.K[m]
    sig, pi = s.sigma[m](z), s.pi[m](z)
    if order % 2:
        return K / np.abs(a * sig + (be + 1j) * b * pi) ** 2
    return K / (a * a * b * b * np.abs((be - 1j) * sig / a - pi / b) ** 2)
