"""Orthogonal polynomials on the unit circle and orthonormal trigonometric polynomials.

Moments of a circle measure feed two independent computations: the Szegő
recursion (Verblunsky coefficients, κ_n) and real Gram–Schmidt on the
trigonometric basis (σ_n, π_n and their coefficients).  The two are tied
together by closed-form identities, which the diagnostics evaluate.
"""

from .errors import (
    AdmissibilityError,
    DegeneracyError,
    DomainError,
    InconsistencyError,
    InputError,
    InsufficientOrderError,
    OtpError,
    ResolutionError,
    SzegoConditionError,
)
from .favard import PhasePolicy, TupleSeq, synthesize_measure, validate_tuples
from .measures import (
    LaurentPolynomial,
    Measure,
    MomentSequence,
    bernstein_szego_measure,
    build_measure,
    moments,
)
from .opuc import OpucLadder, kappa_seq, verblunsky_from_moments
from .otp import OtpCoefficients, OtpSystem, alphas_from_otp, otp_coefficients, otp_gram_schmidt
from .schur import PowerSeries, schur_parameters, schur_parameters_from_moments

__all__ = [
    "AdmissibilityError",
    "DegeneracyError",
    "DomainError",
    "InconsistencyError",
    "InputError",
    "InsufficientOrderError",
    "LaurentPolynomial",
    "Measure",
    "MomentSequence",
    "OpucLadder",
    "OtpCoefficients",
    "OtpError",
    "OtpSystem",
    "PhasePolicy",
    "PowerSeries",
    "ResolutionError",
    "SzegoConditionError",
    "TupleSeq",
    "alphas_from_otp",
    "bernstein_szego_measure",
    "build_measure",
    "kappa_seq",
    "moments",
    "otp_coefficients",
    "otp_gram_schmidt",
    "schur_parameters",
    "schur_parameters_from_moments",
    "synthesize_measure",
    "validate_tuples",
    "verblunsky_from_moments",
]
