"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the CLI can surface
it without string matching.
"""

from __future__ import annotations


class CliffordError(Exception):
    """Base class; ``code`` is stable across releases."""

    code = "error"


class DimensionError(CliffordError):
    """Operands live in algebras of different m, or a matrix shape is wrong."""

    code = "dimension_mismatch"


class FieldMismatchError(CliffordError):
    """Operands constructed over different scalar fields."""

    code = "field_mismatch"


class OutOfRangeError(CliffordError):
    """Parameter outside the supported desk-scale range."""

    code = "out_of_range"


class ZeroSpinorError(CliffordError):
    """Operation undefined on the zero spinor."""

    code = "zero_spinor"


class NotTotallyNullError(CliffordError):
    """Vector set fails the totally-null-plane conditions."""

    code = "not_totally_null"


class SingularTransformError(CliffordError):
    """Singular change of basis: the induced product map is the zero map."""

    code = "singular_transform"


class MalformedInputError(CliffordError):
    """Unparseable or schema-violating external input."""

    code = "malformed_input"


class InternalCheckError(CliffordError):
    """A build-time self-check failed; indicates a defect, not bad input."""

    code = "internal"
