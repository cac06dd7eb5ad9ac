"""Truncated power series, Carathéodory/Schur functions and the Schur algorithm."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InputError, InsufficientOrderError
from .measures import MomentSequence
from .otp import OtpCoefficients

DIVISION_TOL = 1e-13
BOUNDARY_TOL = 1e-12
GUARD_TERMS = 8


@dataclass(frozen=True)
class PowerSeries:
    """s_0 + s_1 z + ... + s_M z^M  (mod z^{M+1})."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise InputError("power series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        c = np.zeros(order + 1, complex)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise InputError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def _coerce(self, other) -> tuple[np.ndarray, np.ndarray]:
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(other, self.order)
        m = min(self.order, other.order)
        return self.coeffs[: m + 1], other.coeffs[: m + 1]

    def __add__(self, other):
        a, b = self._coerce(other)
        return PowerSeries(a + b)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        a, b = self._coerce(other)
        return PowerSeries(a - b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs * complex(other))
        a, b = self._coerce(other)
        return PowerSeries(np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs / complex(other))
        a, b = self._coerce(other)
        if abs(b[0]) <= DIVISION_TOL:
            raise ZeroDivisionError(f"series division by a series with |s_0| = {abs(b[0]):.2e}")
        q = np.zeros_like(a)
        for n in range(a.size):
            q[n] = (a[n] - np.dot(q[:n], b[n:0:-1])) / b[0]
        return PowerSeries(q)

    def divide_by_z(self) -> "PowerSeries":
        """(s - s_0)/z; the caller is responsible for s_0 being (numerically) zero."""
        if self.order == 0:
            raise InputError("dividing an order-0 series by z leaves nothing")
        return PowerSeries(self.coeffs[1:])

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc


def caratheodory_series(c: MomentSequence, M: int) -> PowerSeries:
    """F(z) = ∫(τ+z)/(τ-z) dμ = 1 + 2 Σ_{n>=1} c_n zⁿ, truncated at order M."""
    if c.order < M:
        raise InsufficientOrderError(M, c.order)
    coeffs = 2 * np.asarray(c.values[: M + 1])
    coeffs[0] = 1.0
    return PowerSeries(coeffs)


def schur_from_caratheodory(F: PowerSeries) -> PowerSeries:
    """f = (1/z)(F - 1)/(F + 1); one order is consumed by the division by z."""
    if abs(F.coeffs[0] - 1) > 1e-12:
        raise InputError(f"a Carathéodory function has F(0) = 1, got {F.coeffs[0]}")
    if F.order < 1:
        raise InputError("need F to order >= 1")
    num = (F - 1).divide_by_z()
    return num / (F + 1).truncate(num.order)


@dataclass(frozen=True)
class SchurResult:
    gammas: np.ndarray
    iterates: tuple[PowerSeries, ...]

    @property
    def final_order(self) -> int:
        return self.iterates[-1].order


def schur_parameters(f0: PowerSeries, N: int) -> SchurResult:
    """γ_0..γ_{N-1} from f_{n+1} = (1/z)(f_n - γ_n)/(1 - conj(γ_n) f_n), γ_n = f_n(0)."""
    if f0.order < N:
        raise InsufficientOrderError(N, f0.order)
    f = f0
    gammas = np.zeros(N, complex)
    iterates = [f]
    for n in range(N):
        g = f.coeffs[0]
        if abs(g) >= 1 - BOUNDARY_TOL:
            raise DomainError(f"|γ_{n}| = {abs(g):.15f} is on the boundary (finite Blaschke product)")
        gammas[n] = g
        if n == N - 1:
            break
        num = (f - g).divide_by_z()
        f = num / (1 - np.conj(g) * f).truncate(num.order)
        iterates.append(f)
    return SchurResult(gammas, tuple(iterates))


def schur_parameters_from_moments(c: MomentSequence, N: int, guard: int = GUARD_TERMS) -> SchurResult:
    """Schur parameters of the measure, starting from a series of order N + guard."""
    M = min(N + guard, c.order)
    if M < N + 1:
        raise InsufficientOrderError(N + 1, c.order)
    f0 = schur_from_caratheodory(caratheodory_series(c, M))
    return schur_parameters(f0, N)


def geronimus_otp(k: OtpCoefficients, n: int) -> tuple[complex, complex]:
    """(γ_{2n-2}, γ_{2n-1}) written in the OTP coefficients."""
    if not 1 <= n <= k.N:
        raise InputError(f"index n={n} outside 1..{k.N}")
    a2, b2, be = k.a[n] ** 2, k.b[n] ** 2, k.beta[n]
    K = a2 + b2 * (1 + be**2)
    odd = (a2 - b2 * (1 - be**2)) / K - 2j * b2 * be / K
    x, y = k.even_parts(n)
    half = 1.0 if n == 1 else 0.5
    return complex(half * (x - 1j * y)), complex(odd)
