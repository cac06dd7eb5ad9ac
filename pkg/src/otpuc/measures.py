"""Probability measures on the unit circle, their moments and inner products.

A measure is an absolutely continuous weight (density w.r.t. dθ/2π) plus
finitely many atoms.  Everything downstream only sees the trigonometric
moments c_n = ∫ τ̄ⁿ dμ, through the Toeplitz forms implemented here.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

import numpy as np
from scipy.linalg import toeplitz
from scipy.special import iv

from .errors import DomainError, InputError, InsufficientOrderError, ResolutionError

log = logging.getLogger(__name__)

DEFAULT_NODES = 4096
NORMALIZATION_TOL = 1e-10
ZERO_THRESHOLD = 1e-13

WEIGHT_KINDS = ("lebesgue", "cosine", "exp_cos", "bernstein_szego", "geronimus", "samples")


def default_nodes() -> int:
    """Quadrature node count, honouring the ``OTP_NODES`` environment variable."""
    env = os.environ.get("OTP_NODES")
    if env:
        nodes = int(env)
        _check_nodes(nodes)
        return nodes
    return DEFAULT_NODES


def _check_nodes(nodes: int) -> None:
    if nodes < 16 or nodes & (nodes - 1):
        raise InputError(f"quadrature nodes must be a power of two >= 16, got {nodes}")


def grid(nodes: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(nodes) / nodes


# --------------------------------------------------------------------------
# Laurent polynomials
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentPolynomial:
    """Σ_k coeffs[k] z^(low + k), stored densely."""

    coeffs: np.ndarray
    low: int = 0

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise InputError("Laurent coefficients must be a non-empty 1-D array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "low", int(self.low))

    @classmethod
    def monomial(cls, k: int, coef: complex = 1.0) -> "LaurentPolynomial":
        return cls([coef], k)

    @classmethod
    def cos_basis(cls, n: int) -> "LaurentPolynomial":
        """(zⁿ + z⁻ⁿ)/2, i.e. cos nθ on the circle."""
        if n == 0:
            return cls([1.0], 0)
        c = np.zeros(2 * n + 1, complex)
        c[0] = c[-1] = 0.5
        return cls(c, -n)

    @classmethod
    def sin_basis(cls, n: int) -> "LaurentPolynomial":
        """(zⁿ - z⁻ⁿ)/2i, i.e. sin nθ on the circle."""
        if n == 0:
            return cls([0.0], 0)
        c = np.zeros(2 * n + 1, complex)
        c[-1] = 0.5 / 1j
        c[0] = -0.5 / 1j
        return cls(c, -n)

    @property
    def high(self) -> int:
        return self.low + self.coeffs.size - 1

    @property
    def powers(self) -> np.ndarray:
        return np.arange(self.low, self.high + 1)

    @property
    def degree(self) -> int:
        return max(abs(self.low), abs(self.high))

    def coef(self, k: int) -> complex:
        i = k - self.low
        if 0 <= i < self.coeffs.size:
            return complex(self.coeffs[i])
        return 0j

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        # Horner in z, then the z^low factor
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * z ** self.low

    def padded(self, lo: int, hi: int) -> "LaurentPolynomial":
        if lo > self.low or hi < self.high:
            raise InputError("padding range must contain the current support")
        c = np.zeros(hi - lo + 1, complex)
        c[self.low - lo : self.high - lo + 1] = self.coeffs
        return LaurentPolynomial(c, lo)

    def _aligned(self, other: "LaurentPolynomial"):
        lo, hi = min(self.low, other.low), max(self.high, other.high)
        return self.padded(lo, hi).coeffs, other.padded(lo, hi).coeffs, lo

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial([other], 0)
        a, b, lo = self._aligned(other)
        return LaurentPolynomial(a + b, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(-self.coeffs, self.low)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            return LaurentPolynomial(np.convolve(self.coeffs, other.coeffs), self.low + other.low)
        return LaurentPolynomial(self.coeffs * complex(other), self.low)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return LaurentPolynomial(self.coeffs / complex(scalar), self.low)

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by z^k."""
        return LaurentPolynomial(self.coeffs, self.low + k)

    def symmetric(self) -> "LaurentPolynomial":
        d = self.degree
        return self.padded(-d, d)

    def reality_defect(self) -> float:
        """max_k |l_{-k} - conj(l_k)|; zero iff the function is real on |z| = 1."""
        c = self.symmetric().coeffs
        return float(np.max(np.abs(c[::-1] - np.conj(c))))

    def is_real_on_circle(self, tol: float = 1e-10) -> bool:
        return self.reality_defect() <= tol

    def allclose(self, other: "LaurentPolynomial", atol: float) -> bool:
        a, b, _ = self._aligned(other)
        return bool(np.max(np.abs(a - b)) <= atol)


def as_laurent(p) -> LaurentPolynomial:
    """Accept a LaurentPolynomial or an ascending coefficient array (low power 0)."""
    if isinstance(p, LaurentPolynomial):
        return p
    return LaurentPolynomial(np.asarray(p, dtype=complex), 0)


# --------------------------------------------------------------------------
# Measures
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Measure:
    """μ = w(θ) dθ/2π + Σ m_j δ_{θ_j}, normalized to total mass 1.

    ``scale`` is the factor applied to the raw user-supplied weight and atoms.
    """

    kind: str
    params: Mapping[str, Any]
    atoms: tuple[tuple[float, float], ...] = ()
    nodes: int = DEFAULT_NODES
    scale: float = 1.0
    implicit_atoms: int = 0  # trailing atoms contributed by the weight family itself
    _raw: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False, compare=False)

    def weight(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return self.scale * self._raw(theta)

    def weight_on_grid(self) -> np.ndarray:
        return self.weight(grid(self.nodes))

    @property
    def atom_thetas(self) -> np.ndarray:
        return np.array([t for t, _ in self.atoms], dtype=float)

    @property
    def atom_masses(self) -> np.ndarray:
        return np.array([m for _, m in self.atoms], dtype=float)

    def total_mass(self) -> float:
        return float(np.mean(self.weight_on_grid()) + self.atom_masses.sum())

    def with_nodes(self, nodes: int) -> "Measure":
        """Same measure, different quadrature grid (re-normalized on the new grid)."""
        spec = self.to_spec()
        spec["quadrature"] = {"nodes": nodes}
        return build_measure(spec)

    def to_spec(self) -> dict:
        """JSON-ready description that rebuilds this measure (raw, unscaled atom masses)."""
        user = self.atoms[: len(self.atoms) - self.implicit_atoms]
        raw_atoms = [{"theta": t, "mass": m / self.scale} for t, m in user]
        return {
            "weight": {"kind": self.kind, "params": _jsonable(dict(self.params))},
            "atoms": raw_atoms,
            "quadrature": {"nodes": self.nodes},
        }

    def describe(self) -> str:
        s = self.kind
        if self.atoms:
            s += f"+{len(self.atoms)}atoms"
        return s


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, np.generic):
        return v.item()
    return v


def parse_complex(v) -> complex:
    """Accept 0.5, [re, im] or {"re": .., "im": ..}."""
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InputError(f"complex value must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, Mapping):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    try:
        return complex(v)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a complex number: {v!r}") from exc


def _geronimus_weight(a: float):
    """Absolutely continuous part for constant Verblunsky coefficients α_n ≡ a ∈ (0, 1).

    Obtained from the fixed point of the Schur algorithm; the weight vanishes on
    the arc |θ| < 2 arcsin a, and there is an atom of mass 2a/(1+a) at θ = 0.
    """

    def w(theta):
        s = np.abs(np.sin(theta / 2))
        out = np.zeros_like(s)
        on = s > a
        t = np.sqrt(s[on] ** 2 - a * a)
        r = a / (s[on] + t)
        out[on] = (1 - r * r) / (1 + r * r + 2 * r * s[on])
        return out

    return w


def _raw_weight(kind: str, params: Mapping[str, Any], nodes: int):
    """Return (raw weight callable, extra atoms, forced node count or None)."""
    if kind == "lebesgue":
        return (lambda th: np.ones_like(th)), [], None
    if kind == "cosine":
        r = float(params.get("r", 1.0))
        if abs(r) > 1:
            raise InputError(f"cosine weight 1 + r cos θ needs |r| <= 1, got r={r}")
        return (lambda th: 1.0 + r * np.cos(th)), [], None
    if kind == "exp_cos":
        t = float(params.get("t", 1.0))
        i0 = float(iv(0, t))
        return (lambda th: np.exp(t * np.cos(th)) / i0), [], None
    if kind == "bernstein_szego":
        from .opuc import kappa_seq, monic_phi

        alphas = np.array([parse_complex(a) for a in params.get("alphas", [])], complex)
        if np.any(np.abs(alphas) >= 1):
            raise DomainError("Bernstein–Szegő coefficients must satisfy |α| < 1")
        phi = monic_phi(alphas, alphas.size) * kappa_seq(alphas)[-1]
        orth = LaurentPolynomial(phi, 0)
        return (lambda th: 1.0 / np.abs(orth(np.exp(1j * th))) ** 2), [], None
    if kind == "geronimus":
        a = float(params.get("alpha", 0.5))
        if not 0 < a < 1:
            raise DomainError(f"geronimus weight needs 0 < alpha < 1, got {a}")
        return _geronimus_weight(a), [(0.0, 2 * a / (1 + a))], None
    if kind == "samples":
        vals = np.asarray(params.get("values", []), dtype=float)
        if vals.ndim != 1 or vals.size < 16:
            raise InputError("sampled weight needs at least 16 uniform samples")
        n = vals.size
        nodes_s = grid(n)

        def w(th):
            return np.interp(np.mod(th, 2 * np.pi), nodes_s, vals, period=2 * np.pi)

        return w, [], n
    raise InputError(f"unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}")


def build_measure(spec: Mapping[str, Any]) -> Measure:
    """Build a normalized measure from its JSON description.

    ``{"weight": {"kind": ..., "params": {...}}, "atoms": [...], "quadrature": {"nodes": K}}``
    A bare ``{"kind": ...}`` is accepted as shorthand for the weight block.
    """
    if "weight" in spec:
        wspec = spec["weight"] or {}
    else:
        wspec = {"kind": spec.get("kind", "lebesgue"), "params": spec.get("params", {})}
    kind = wspec.get("kind", "lebesgue")
    params = dict(wspec.get("params") or {})
    for key in ("r", "t", "alpha", "alphas", "values"):
        if key in spec and key not in params:
            params[key] = spec[key]

    quad = spec.get("quadrature") or {}
    nodes = int(quad.get("nodes", default_nodes()))
    _check_nodes(nodes)

    raw, extra_atoms, forced = _raw_weight(kind, params, nodes)
    if forced is not None:
        nodes = forced

    atoms = []
    for a in spec.get("atoms") or []:
        if isinstance(a, Mapping):
            theta, mass = a.get("theta"), a.get("mass")
        else:
            theta, mass = a
        theta, mass = float(theta), float(mass)
        if not (math.isfinite(theta) and math.isfinite(mass)):
            raise InputError("atom angle and mass must be finite")
        if mass <= 0:
            raise InputError(f"negative atom mass {mass} (atom masses must be > 0)")
        atoms.append((theta % (2 * np.pi), mass))
    atoms.extend(extra_atoms)
    thetas = [t for t, _ in atoms]
    if len(set(thetas)) != len(thetas):
        raise InputError("atom angles must be pairwise distinct")

    w = raw(grid(nodes))
    if not np.all(np.isfinite(w)):
        raise InputError("weight is not finite on the quadrature grid")
    if np.any(w < 0):
        raise InputError(f"negative weight sample (min {w.min():.3e})")
    # the Bernstein–Szegő and Geronimus families are probability measures by
    # construction; their peaks and edge singularities defeat the trapezoid rule
    if kind == "bernstein_szego":
        ac_mass = 1.0
    elif kind == "geronimus":
        ac_mass = 1.0 - sum(m for _, m in extra_atoms)
    else:
        ac_mass = float(np.mean(w))
    total = ac_mass + sum(m for _, m in atoms)
    if total <= 0:
        raise InputError("measure has empty support (zero weight and no atoms)")
    scale = 1.0 / total
    if abs(scale - 1.0) > NORMALIZATION_TOL:
        log.info("normalizing %s measure by factor %.17g", kind, scale)
    return Measure(
        kind=kind,
        params=params,
        atoms=tuple((t, m * scale) for t, m in atoms),
        nodes=nodes,
        scale=scale,
        implicit_atoms=len(extra_atoms),
        _raw=raw,
    )


def bernstein_szego_measure(alphas: Sequence[complex], nodes: int | None = None) -> Measure:
    """Measure with weight 1/|φ_N(e^{iθ})|² whose Verblunsky coefficients are
    ``alphas`` followed by zeros."""
    alphas = [complex(a) for a in alphas]
    if any(abs(a) >= 1 for a in alphas):
        raise DomainError("Bernstein–Szegő coefficients must satisfy |α| < 1")
    spec = {"weight": {"kind": "bernstein_szego", "params": {"alphas": alphas}}}
    if nodes is not None:
        spec["quadrature"] = {"nodes": nodes}
    return build_measure(spec)


# --------------------------------------------------------------------------
# Moments and Toeplitz forms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """c_0..c_N with c_{-n} = conj(c_n)."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex)).copy()
        if v.ndim != 1 or v.size == 0:
            raise InputError("moment sequence must be a non-empty 1-D array")
        if abs(v[0] - 1) > 1e-12:
            raise InputError(f"c_0 must equal 1 for a probability measure, got {v[0]}")
        if np.any(np.abs(v) > 1 + 1e-12):
            raise InputError("moments of a probability measure satisfy |c_n| <= 1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def order(self) -> int:
        return self.values.size - 1

    def __len__(self):
        return self.values.size

    def ext(self, idx) -> np.ndarray:
        """c_n for signed (array) n, using the conjugate-symmetric extension."""
        idx = np.asarray(idx)
        need = int(np.max(np.abs(idx))) if idx.size else 0
        if need > self.order:
            raise InsufficientOrderError(need, self.order)
        vals = self.values[np.abs(idx)]
        return np.where(idx >= 0, vals, np.conj(vals))

    def truncated(self, N: int) -> "MomentSequence":
        if N > self.order:
            raise InsufficientOrderError(N, self.order)
        return MomentSequence(self.values[: N + 1])

    def toeplitz(self, N: int | None = None) -> np.ndarray:
        """[c_{j-k}]_{0<=j,k<=N}."""
        N = self.order if N is None else N
        if N > self.order:
            raise InsufficientOrderError(N, self.order)
        c = self.values[: N + 1]
        return toeplitz(c, np.conj(c))

    def min_eigenvalue(self, N: int | None = None) -> float:
        return float(np.linalg.eigvalsh(self.toeplitz(N))[0])

    def is_positive_definite(self, N: int | None = None) -> bool:
        return self.min_eigenvalue(N) > 0


def bernstein_szego_moments(alphas, N: int) -> np.ndarray:
    """Exact c_0..c_N of the Bernstein–Szegő measure for ``alphas`` (then zeros).

    Runs the Szegő recursion backwards: in ⟨Φ*_n, zΦ_n⟩ the unknown moment
    c_{n+1} enters only through the term conj(c_{n+1}) with coefficient 1, and
    the left side must equal conj(α_n)·Π_{j<n}(1 - |α_j|²).
    """
    from .opuc import reversed_poly, szego_step

    alphas = np.asarray(alphas, dtype=complex)
    c = np.zeros(N + 1, complex)
    c[0] = 1.0
    phi = np.array([1.0 + 0j])
    norm2 = 1.0
    for n in range(N):
        al = alphas[n] if n < alphas.size else 0.0
        star = reversed_poly(phi)
        zphi = np.concatenate([[0.0], phi])
        j = np.arange(n + 1)[:, None]
        k = np.arange(n + 2)[None, :]
        d = j - k
        vals = c[np.abs(d)]
        T = np.where(d >= 0, vals, np.conj(vals))
        T[0, n + 1] = 0.0  # the unknown conj(c_{n+1})
        rest = np.conj(star) @ T @ zphi
        c[n + 1] = np.conj(np.conj(al) * norm2 - rest)
        phi = szego_step(phi, al)
        norm2 *= 1.0 - abs(al) ** 2
    return c


def _geronimus_moments(a: float, N: int) -> np.ndarray:
    """Moments of the absolutely continuous part of the constant-α measure.

    The weight is even and supported on [θ_e, 2π - θ_e], θ_e = 2 arcsin a, with
    square-root behaviour at θ_e; θ = θ_e + (π - θ_e)t² makes the integrand
    smooth in t, so Gauss–Legendre converges geometrically.
    """
    te = 2 * np.arcsin(a)
    t, wt = np.polynomial.legendre.leggauss(max(256, 8 * N))
    t, wt = (t + 1) / 2, wt / 2
    th = te + (np.pi - te) * t**2
    dens = _geronimus_weight(a)(th) * 2 * (np.pi - te) * t * wt / np.pi
    n = np.arange(N + 1)
    return (np.cos(n[:, None] * th[None, :]) @ dens).astype(complex)


def moments(m: Measure, N: int, method: str = "auto") -> MomentSequence:
    """Moments c_0..c_N.

    ``method="quadrature"`` uses the trapezoid rule on the measure's grid.
    ``"auto"`` does the same except for the Bernstein–Szegő family (exact
    moments) and the Geronimus family (Gauss–Legendre after removing the edge
    singularity).  Atoms are always added in closed form.
    """
    if N < 0:
        raise InputError("moment order must be >= 0")
    if N > m.nodes // 4:
        raise ResolutionError(
            f"moment order {N} exceeds the resolution guarantee nodes/4 = {m.nodes // 4}"
        )
    if method not in ("auto", "quadrature"):
        raise InputError(f"unknown moment method {method!r}")
    if method == "auto" and m.kind == "bernstein_szego":
        alphas = [parse_complex(a) for a in m.params.get("alphas", [])]
        c = m.scale * bernstein_szego_moments(alphas, N)
    elif method == "auto" and m.kind == "geronimus":
        c = m.scale * _geronimus_moments(float(m.params.get("alpha", 0.5)), N)
    else:
        c = np.fft.fft(m.weight_on_grid())[: N + 1] / m.nodes
    n = np.arange(N + 1)
    for theta, mass in m.atoms:
        c = c + mass * np.exp(-1j * n * theta)
    return MomentSequence(c)


def complex_inner(p, q, c: MomentSequence) -> complex:
    """⟨p, q⟩_C = ∫ conj(p) q dμ = Σ_{j,k} conj(p_j) q_k c_{j-k}."""
    p, q = as_laurent(p), as_laurent(q)
    T = c.ext(p.powers[:, None] - q.powers[None, :])
    return complex(np.conj(p.coeffs) @ T @ q.coeffs)


def real_inner(f, g, c: MomentSequence, tol: float = 1e-10):
    """⟨f, g⟩_R = ∫ f g dμ = Σ_{j,k} f_j g_k conj(c_{j+k}) for f, g real on the circle."""
    f, g = as_laurent(f), as_laurent(g)
    for name, h in (("f", f), ("g", g)):
        if not h.is_real_on_circle(tol):
            raise InputError(f"{name} is not real on the unit circle (defect {h.reality_defect():.2e})")
    H = c.ext(-(f.powers[:, None] + g.powers[None, :]))
    val = complex(f.coeffs @ H @ g.coeffs)
    if abs(val.imag) <= 1e-12 * max(1.0, abs(val.real)):
        return val.real
    return val


# --------------------------------------------------------------------------
# log-weight quadrature
# --------------------------------------------------------------------------


def _runs(mask: np.ndarray) -> list[np.ndarray]:
    """Circular runs of True in a boolean array, as index arrays."""
    n = mask.size
    if mask.all():
        return [np.arange(n)]
    start = int(np.argmin(mask))  # begin scanning at a False entry
    runs, cur = [], []
    for step in range(n):
        i = (start + step) % n
        if mask[i]:
            cur.append(i)
        elif cur:
            runs.append(np.array(cur))
            cur = []
    if cur:
        runs.append(np.array(cur))
    return runs


@dataclass
class LogWeightFourier:
    """(1/2π)∫ e^{-inθ} log w(θ) dθ, n = 0..N, or a divergence flag."""

    values: np.ndarray | None
    zeros: list[tuple[float, float]]  # (angle, exponent) of subtracted templates

    @property
    def finite(self) -> bool:
        return self.values is not None


def _log_series(p: np.ndarray, N: int) -> np.ndarray:
    """Taylor coefficients 0..N of log p(z) for a polynomial with p(0) = 1."""
    q = np.zeros(N + 1, complex)
    q[: min(p.size, N + 1)] = p[: N + 1]
    out = np.zeros(N + 1, complex)
    for n in range(1, N + 1):
        k = np.arange(1, n)
        out[n] = q[n] - np.sum(k * out[k] * q[n - k]) / n
    return out


def _bernstein_szego_log_fourier(m: Measure, N: int) -> np.ndarray:
    # w = s/|φ*_N|² with φ*_N zero-free on the closed disc, so the Szegő
    # function is sqrt(s)/φ*_N and log w has coefficients -log κ_N² and -[zⁿ] log Φ*_N
    from .opuc import kappa_seq, monic_phi, reversed_poly

    alphas = np.array([parse_complex(a) for a in m.params.get("alphas", [])], complex)
    star = reversed_poly(monic_phi(alphas, alphas.size))
    L = -_log_series(star, N)
    L[0] = np.log(m.scale) - 2 * np.log(kappa_seq(alphas)[-1])
    return L


def log_weight_fourier(m: Measure, N: int, threshold: float = ZERO_THRESHOLD) -> LogWeightFourier:
    """Fourier coefficients of log w with isolated zeros handled analytically.

    At each isolated node where w < threshold a template p·log|e^{iθ} - e^{iθ0}|
    is subtracted; its coefficients are known exactly (0 for n = 0,
    -p e^{-inθ0}/(2n) otherwise) and the smooth remainder is integrated by the
    trapezoid rule.  Runs of three or more vanishing nodes are treated as an
    interval where w = 0, i.e. a divergent integral.
    """
    if N > m.nodes // 4:
        raise ResolutionError(f"order {N} exceeds nodes/4 = {m.nodes // 4}")
    if m.kind == "bernstein_szego":
        return LogWeightFourier(_bernstein_szego_log_fourier(m, N), [])
    M = m.nodes
    th = grid(M)
    w = m.weight_on_grid()
    mask = w < threshold
    if not mask.any():
        return LogWeightFourier(np.fft.fft(np.log(w))[: N + 1] / M, [])

    runs = _runs(mask)
    if any(r.size >= 3 for r in runs) or mask.sum() > M // 8:
        return LogWeightFourier(None, [])

    h = 2 * np.pi / M
    denom = 2 * (np.log(abs(np.exp(4j * h) - 1)) - np.log(abs(np.exp(2j * h) - 1)))
    logw = np.full(M, np.nan)
    logw[~mask] = np.log(w[~mask])
    template = np.zeros(M)
    zeros = []
    for r in runs:
        k0 = int(r[np.argmin(w[r])])
        near = lambda j: logw[(k0 + j) % M]  # noqa: E731
        p = (near(4) + near(-4) - near(2) - near(-2)) / denom
        if abs(p - round(p)) < 0.05:
            p = float(round(p))
        theta0 = th[k0]
        with np.errstate(divide="ignore"):
            template += p * np.log(np.abs(np.exp(1j * th) - np.exp(1j * theta0)))
        zeros.append((float(theta0), float(p)))

    rem = logw - template
    offsets = np.array([-4, -3, -2, 2, 3, 4])
    for r in runs:
        k0 = int(r[np.argmin(w[r])])
        coef = np.polyfit(offsets, rem[(k0 + offsets) % M], 5)
        for k in r:
            d = (int(k) - k0 + M // 2) % M - M // 2
            rem[k] = np.polyval(coef, d)
    if not np.all(np.isfinite(rem)):
        return LogWeightFourier(None, zeros)

    L = np.fft.fft(rem)[: N + 1] / M
    n = np.arange(1, N + 1)
    for theta0, p in zeros:
        L[1:] += -p * np.exp(-1j * n * theta0) / (2 * n)
    return LogWeightFourier(L, zeros)
