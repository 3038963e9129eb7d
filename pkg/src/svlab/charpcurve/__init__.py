"""Finite-field Laurent-series kernel and the catalogued curve families.

Submodules: ``gf`` (exact arithmetic in GF(p^d)), ``series`` (Laurent
series with precision tracking), ``families`` (curve families, local
expansions at infinity, and the invariant certificates built from
them)."""

from .gf import FieldElement, GaloisField
from .series import LaurentSeries, PrecisionError, SeriesError
from .families import (
    ArtinSchreier,
    CertificateError,
    FamilyParameterError,
    Hyperelliptic,
    InfinityChart,
    NotSeparatingError,
    SeriesUnavailable,
    TangoCertificate,
    TangoPlane,
    affine_support_certificate,
    certify_tango,
    default_witness,
    defining_residual,
    differential_valuation,
    expand_at_infinity,
    genus,
    n_of_f,
    v_infinity_df,
    witness_series,
)

__all__ = [
    "ArtinSchreier",
    "CertificateError",
    "FamilyParameterError",
    "FieldElement",
    "GaloisField",
    "Hyperelliptic",
    "InfinityChart",
    "LaurentSeries",
    "NotSeparatingError",
    "PrecisionError",
    "SeriesError",
    "SeriesUnavailable",
    "TangoCertificate",
    "TangoPlane",
    "affine_support_certificate",
    "certify_tango",
    "default_witness",
    "defining_residual",
    "differential_valuation",
    "expand_at_infinity",
    "genus",
    "n_of_f",
    "v_infinity_df",
    "witness_series",
]
