"""From (a, b, β) tuple sequences to a measure, and back.

Validated tuples fix κ_0 ≤ κ_1 ≤ ..., every odd Verblunsky coefficient and the
modulus of every even one; the even phases are free.  The measure realized
here is the Bernstein–Szegő one for the interleaved coefficients.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import AdmissibilityError, InputError
from .measures import Measure, bernstein_szego_measure, moments
from .otp import OtpCoefficients, otp_coefficients
from .report import Report

STRICTNESS_TOL = 1e-12


@dataclass(frozen=True)
class TupleSeq:
    """Rows n = 0..N of (a_n, b_n, β_n); row 0 is the convention row (1, 1, 0)."""

    a: np.ndarray
    b: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        arrs = [np.atleast_1d(np.asarray(x, dtype=float)) for x in (self.a, self.b, self.beta)]
        if len({x.size for x in arrs}) != 1:
            raise InputError("a, b and beta must have the same length")
        if arrs[0].size == 0 or not np.allclose([arrs[0][0], arrs[1][0], arrs[2][0]], [1, 1, 0], atol=0):
            raise InputError("row 0 must be the convention row a_0 = b_0 = 1, beta_0 = 0")
        if not all(np.all(np.isfinite(x)) for x in arrs):
            raise InputError("tuple entries must be finite")
        for name, x in zip(("a", "b", "beta"), arrs):
            x.setflags(write=False)
            object.__setattr__(self, name, x)

    @classmethod
    def from_rows(cls, rows) -> "TupleSeq":
        """Rows of (a, b, β); a leading (1, 1, 0) row is taken as row 0, otherwise one is prepended."""
        rows = [tuple(float(v) for v in r) for r in rows]
        if not rows or rows[0] != (1.0, 1.0, 0.0):
            rows = [(1.0, 1.0, 0.0)] + rows
        a, b, be = (np.array(col) for col in zip(*rows))
        return cls(a, b, be)

    @property
    def N(self) -> int:
        return self.a.size - 1

    @property
    def K(self) -> np.ndarray:
        """a² + b²(1 + β²), taken literally (the convention row gives 2)."""
        return self.a**2 + self.b**2 * (1 + self.beta**2)

    def truncated(self, N: int) -> "TupleSeq":
        if N > self.N:
            raise InputError(f"only {self.N} tuple rows available, {N} requested")
        return TupleSeq(self.a[: N + 1], self.b[: N + 1], self.beta[: N + 1])

    def rows(self) -> list[dict]:
        return [{"a": float(x), "b": float(y), "beta": float(z)} for x, y, z in zip(self.a, self.b, self.beta)]


@dataclass(frozen=True)
class PhasePolicy:
    """Phases of the even coefficients: all zero, or uniform from a seeded generator."""

    kind: str = "zero"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("zero", "random"):
            raise InputError(f"phase policy must be 'zero' or 'random', got {self.kind!r}")

    def phases(self, count: int) -> np.ndarray:
        if self.kind == "zero":
            return np.zeros(count)
        return np.random.default_rng(self.seed).uniform(0.0, 2 * np.pi, count)


@dataclass
class TupleValidation:
    passed: bool
    ratios: np.ndarray  # LHS / RHS of the admissibility inequality, rows 0..N-1
    failures: list[str] = field(default_factory=list)

    @property
    def margins(self) -> np.ndarray:
        return 1.0 - self.ratios


def _pair_ratio(t: TupleSeq) -> np.ndarray:
    """K_n K_{n+1} / (4 a_n² b_n²) = κ²_{2n}/κ²_{2n+1}, rows n = 0..N-1.

    At n = 0 the row (1, 1, 0) stands for κ_0 = 1, so the ratio is K_1.
    """
    K = t.K
    r = np.empty(t.N)
    if t.N:
        r[0] = K[1]
    for n in range(1, t.N):
        r[n] = K[n] * K[n + 1] / (4 * t.a[n] ** 2 * t.b[n] ** 2)
    return r


def validate_tuples(t: TupleSeq, strict: bool = True) -> TupleValidation:
    """Positivity and the admissibility inequality for every consecutive pair of rows.

    In strict mode a ratio within 1e-12 of 1 fails; otherwise equality is allowed.
    """
    failures = []
    for n in range(t.N + 1):
        if t.a[n] <= 0 or t.b[n] <= 0:
            failures.append(f"row {n}: a and b must be positive (a={t.a[n]}, b={t.b[n]})")
    if failures:
        return TupleValidation(False, np.full(t.N, np.nan), failures)
    ratios = _pair_ratio(t)
    for n, q in enumerate(ratios):
        bad = q >= 1 - STRICTNESS_TOL if strict else q > 1 + STRICTNESS_TOL
        if bad:
            failures.append(f"rows {n},{n + 1}: admissibility ratio {q:.15g} " + ("not < 1" if strict else "> 1"))
    return TupleValidation(not failures, ratios, failures)


def _require_valid(t: TupleSeq, strict: bool) -> None:
    v = validate_tuples(t, strict)
    if not v.passed:
        raise AdmissibilityError("; ".join(v.failures))


def kappas_from_tuples(t: TupleSeq, strict: bool = True) -> np.ndarray:
    """κ_0..κ_{2N}: κ_{2n} = (1/2)P_n^{1/2} (κ_0 = 1) and κ_{2n+1} = K_{n+1}^{-1/2}."""
    _require_valid(t, strict)
    kap = np.empty(2 * t.N + 1)
    kap[0] = 1.0
    for n in range(1, t.N + 1):
        P = (1 + t.beta[n] ** 2) / t.a[n] ** 2 + 1 / t.b[n] ** 2
        kap[2 * n] = 0.5 * math.sqrt(P)
    kap[1::2] = t.K[1:] ** -0.5
    # κ_{2n} < κ_{2n+1} is the admissibility condition itself; κ_{2n-1} <= κ_{2n}
    # holds with equality exactly when α_{2n-1} = 0
    d = np.diff(kap)
    ok = d >= -STRICTNESS_TOL * kap[1:]
    if strict:
        ok[0::2] &= d[0::2] > 0
    if not np.all(ok):
        j = int(np.argmin(ok))
        raise AdmissibilityError(f"κ ladder not increasing at index {j}: κ_{j}={kap[j]:.15g}, κ_{j + 1}={kap[j + 1]:.15g}")
    return kap


def odd_alphas(t: TupleSeq, strict: bool = True) -> np.ndarray:
    """α_1, α_3, ..., α_{2N-1} from the tuple rows 1..N."""
    _require_valid(t, strict)
    a2, b2, be = t.a[1:] ** 2, t.b[1:] ** 2, t.beta[1:]
    K = a2 + b2 * (1 + be**2)
    out = ((a2 - b2 * (1 - be**2)) - 2j * b2 * be) / K
    if np.any(np.abs(out) >= 1):
        raise AdmissibilityError("an odd coefficient left the unit disc")
    return out


def even_alphas(t: TupleSeq, p: PhasePolicy, strict: bool = True) -> np.ndarray:
    """α_0, α_2, ..., α_{2N-2}: modulus sqrt(1 - κ²_{2n}/κ²_{2n+1}), phase from the policy."""
    kap = kappas_from_tuples(t, strict)
    rad = 1.0 - (kap[0:-1:2] / kap[1::2]) ** 2
    if np.any(rad < -STRICTNESS_TOL) or np.any(rad >= 1):
        raise AdmissibilityError("even modulus radicand outside [0, 1)")
    return np.sqrt(np.clip(rad, 0.0, None)) * np.exp(1j * p.phases(t.N))


def interleaved_alphas(t: TupleSeq, p: PhasePolicy, strict: bool = True) -> np.ndarray:
    out = np.empty(2 * t.N, complex)
    out[0::2] = even_alphas(t, p, strict)
    out[1::2] = odd_alphas(t, strict)
    return out


def synthesize_measure(t: TupleSeq, p: PhasePolicy, N: int | None = None, strict: bool = True) -> Measure:
    """Bernstein–Szegő measure with coefficients α_0..α_{2N-1} built from rows 0..N."""
    t = t if N is None else t.truncated(N)
    return bernstein_szego_measure(interleaved_alphas(t, p, strict))


def realized_coefficients(m: Measure, N: int) -> OtpCoefficients:
    return otp_coefficients(moments(m, 2 * N + 2), N + 1)


def seven_tuples(m: Measure, t: TupleSeq, N: int) -> list[dict]:
    """(a, b, β, ι, ȷ, ς, ζ) of the realized measure for n = 0..N.

    The first three entries reproduce the tuples; the other four depend on the
    even phases, so different phase policies give different seven-tuples.
    """
    if N > t.N:
        raise InputError(f"only {t.N} tuple rows available, {N} requested")
    k = realized_coefficients(m, N)
    return [k.row(n) for n in range(N + 1)]


def recovery_report(t: TupleSeq, p: PhasePolicy, N: int, tol: float = 1e-8, strict: bool = True) -> Report:
    """Synthesize, recompute (a, b, β) from the measure's moments and compare."""
    t = t.truncated(N)
    v = validate_tuples(t, strict)
    r = Report("synthesis", order=N)
    r.add_sequence("admissibility_ratio", np.arange(N), v.ratios)
    r.check("admissibility", 0.0 if v.passed else math.inf, 0.0)
    if not v.passed:
        r.verdicts["admissibility"] = "; ".join(v.failures)
        return r
    alphas = interleaved_alphas(t, p, strict)
    m = bernstein_szego_measure(alphas)
    r.measure = m.to_spec()
    k = realized_coefficients(m, N)
    r.add_sequence("alpha", np.arange(alphas.size), alphas)
    for name, want, got in (("a", t.a, k.a), ("b", t.b, k.b), ("beta", t.beta, k.beta)):
        r.add_sequence(name, np.arange(N + 1), got[: N + 1])
        r.check(f"recovery_{name}", np.max(np.abs(got[: N + 1] - want)), tol)
    for name in ("iota", "jmath", "varsigma", "zeta"):
        r.add_sequence(name, np.arange(N + 1), getattr(k, name)[: N + 1])
    r.scalars["phase_policy"] = p.kind
    r.scalars["seed"] = p.seed
    return r


def tuples_from_alphas(alphas, N: int | None = None) -> TupleSeq:
    """Inverse map: rows 0..N from α_0..α_{2N-1}.

    With α_{2n-1} = x + iy and K = κ_{2n-1}^{-2}:
    b² = K(1 - x)/2, a² = K(1 - |α_{2n-1}|²)/(2(1 - x)), β = -y/(1 - x).
    """
    al = np.asarray(alphas, dtype=complex)
    if al.size % 2:
        al = np.append(al, 0.0)
    N = al.size // 2 if N is None else N
    if al.size < 2 * N:
        al = np.concatenate([al, np.zeros(2 * N - al.size)])
    if np.any(np.abs(al) >= 1):
        raise InputError("coefficients must lie in the open unit disc")
    norm = np.concatenate([[1.0], np.cumprod(1 - np.abs(al) ** 2)])
    a, b, be = np.ones(N + 1), np.ones(N + 1), np.zeros(N + 1)
    for n in range(1, N + 1):
        K = norm[2 * n - 1]
        x, y = al[2 * n - 1].real, al[2 * n - 1].imag
        b[n] = math.sqrt(K * (1 - x) / 2)
        a[n] = math.sqrt(K * (1 - abs(al[2 * n - 1]) ** 2) / (2 * (1 - x)))
        be[n] = -y / (1 - x)
    return TupleSeq(a, b, be)


def load_tuples(path) -> TupleSeq:
    """Read ``{"tuples": [{"a": .., "b": .., "beta": ..}, ...]}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read tuple file {path}: {exc}") from exc
    rows = data.get("tuples") if isinstance(data, dict) else None
    if not isinstance(rows, list):
        raise InputError('tuple file must contain {"tuples": [...]}')
    try:
        return TupleSeq.from_rows([(r["a"], r["b"], r.get("beta", 0.0)) for r in rows])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed tuple row: {exc}") from exc


def geronimus_family(N: int) -> TupleSeq:
    """a_n = (3/4)ⁿ, b_n = (3/4)ⁿ/√3, β_n = 0: the rows of α ≡ 1/2."""
    n = np.arange(N + 1)
    a = 0.75**n
    b = a / math.sqrt(3)
    b[0] = 1.0
    return TupleSeq(a, b, np.zeros(N + 1))
