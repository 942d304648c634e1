"""Canonical forms of 2x2 complex matrices under *congruence and their closure order."""

from ._starcong import (
    AmbiguousClassification,
    ArrowExists,
    CanonicalForm,
    CertificateNotFound,
    DegenerateDelta,
    DuplicateVertex,
    Family,
    InvalidInput,
    NoArrow,
    NotHermitian,
    SingularMatrix,
    StarcongError,
    classify,
    codimension,
    format_form,
    hasse_edges,
    no_arrow_certificate,
    parse_form,
    reachable,
    sample_neighborhood,
    stratum,
    tangent_space_dim,
    to_dot,
    witness,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
