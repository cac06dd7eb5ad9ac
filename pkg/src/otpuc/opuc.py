"""Monic orthogonal polynomials on the unit circle via the Szegő recurrence.

Polynomials are dense ascending coefficient arrays: p[k] multiplies z^k.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, DomainError, InputError, InsufficientOrderError
from .measures import MomentSequence, complex_inner

DEGENERACY_TOL = 1e-13


def reversed_poly(p, n: int | None = None) -> np.ndarray:
    """Q*_n(z) = zⁿ conj(Q_n(1/z̄)), i.e. reverse and conjugate the coefficients."""
    p = np.asarray(p, dtype=complex)
    if n is None:
        n = p.size - 1
    if n < p.size - 1:
        raise InputError(f"degree {n} is below the coefficient length {p.size}")
    q = np.zeros(n + 1, complex)
    q[: p.size] = p
    return np.conj(q[::-1])


def szego_step(phi: np.ndarray, alpha: complex) -> np.ndarray:
    """Φ_{n+1} = zΦ_n - conj(α_n) Φ*_n."""
    out = np.zeros(phi.size + 1, complex)
    out[1:] = phi
    out[:-1] -= np.conj(alpha) * reversed_poly(phi)
    out[-1] = 1.0
    return out


def monic_phi(alphas, n: int) -> np.ndarray:
    alphas = np.asarray(alphas, dtype=complex)
    if n > alphas.size:
        raise InputError(f"Φ_{n} needs {n} Verblunsky coefficients, got {alphas.size}")
    phi = np.array([1.0 + 0j])
    for k in range(n):
        phi = szego_step(phi, alphas[k])
    return phi


def kappa_seq(alphas) -> np.ndarray:
    """κ_0..κ_N with κ_n = Π_{j<n} (1 - |α_j|²)^{-1/2}."""
    alphas = np.asarray(alphas, dtype=complex)
    r = 1.0 - np.abs(alphas) ** 2
    if np.any(r <= 0):
        raise DomainError("Verblunsky coefficients must lie in the open unit disc")
    return np.concatenate([[1.0], np.cumprod(r ** -0.5)])


@dataclass(frozen=True)
class OpucLadder:
    """α_0..α_{N-1}, monic Φ_0..Φ_N and κ_0..κ_N for one measure."""

    alphas: np.ndarray
    phis: tuple[np.ndarray, ...]
    kappas: np.ndarray

    @property
    def N(self) -> int:
        return self.alphas.size

    def phi(self, n: int) -> np.ndarray:
        return self.phis[n]

    def phi_star(self, n: int) -> np.ndarray:
        return reversed_poly(self.phis[n])


def verblunsky_from_moments(c: MomentSequence, N: int) -> OpucLadder:
    """α_n = conj(⟨Φ*_n, zΦ_n⟩ / ⟨Φ*_n, Φ*_n⟩), advancing Φ_n by the Szegő recurrence.

    The norms are tracked from the inner products themselves, so κ_n here is
    ‖Φ_n‖^{-1} as measured, and the κ product formula is an independent check.
    """
    if N < 0:
        raise InputError("N must be >= 0")
    if c.order < N:
        raise InsufficientOrderError(N, c.order)
    phi = np.array([1.0 + 0j])
    phis = [phi]
    alphas = np.zeros(N, complex)
    norms = [1.0]
    for n in range(N):
        star = reversed_poly(phi)
        nrm = complex_inner(star, star, c).real
        if nrm <= DEGENERACY_TOL:
            raise DegeneracyError(n, nrm, "‖Φ*_n‖²")
        zphi = np.concatenate([[0.0], phi])
        abar = complex_inner(star, zphi, c) / nrm
        alphas[n] = np.conj(abar)
        phi = szego_step(phi, alphas[n])
        phis.append(phi)
        nrm_next = complex_inner(phi, phi, c).real
        if nrm_next <= DEGENERACY_TOL:
            raise DegeneracyError(n + 1, nrm_next, "‖Φ_n‖²")
        norms.append(nrm_next)
    return OpucLadder(alphas, tuple(phis), np.asarray(norms) ** -0.5)
