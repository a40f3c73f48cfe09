"""Exception hierarchy of the curvature engine.

Every error derives from ``CurvatureError``, itself a ``ValueError``, so callers
that only expect invalid-value failures keep working.
"""


class CurvatureError(ValueError):
    """Base class for all geometric and numerical failures."""


class DegeneratePlaneError(CurvatureError):
    """Two vectors do not span a 2-plane (|X∧Y| below the degeneracy threshold)."""


class SingularCoframeError(CurvatureError):
    """The coframe matrix is not invertible at the requested point."""


class StepTooLargeError(CurvatureError):
    """A finite-difference stencil would leave the chart interior."""


class ParameterRangeError(CurvatureError):
    """A metric parameter lies outside its admissible range."""


class DegenerateWeylError(CurvatureError):
    """The top eigenvalue of W⁺ is not simple, so no complex structure can be read off."""


class NonPositiveEigenvalueError(CurvatureError):
    """The top eigenvalue of W⁺ is not positive, so no conformal Kähler factor exists."""


class UnsupportedFieldError(CurvatureError):
    """A 2-form field lacks the analytic partial derivatives an operator needs."""


class ChartDegeneracyError(CurvatureError):
    """A surface restriction is not well defined at the requested point."""


class StepCountError(CurvatureError):
    """The fixed-step integrator's error estimate exceeds the accepted tolerance."""


class ConfigError(CurvatureError):
    """Invalid or unreadable run configuration."""


class NonUnitVectorError(CurvatureError):
    """A tangent vector that must have unit length does not."""
