"""Exception types raised by the battery simulator."""


class QubatteryError(Exception):
    """Base class for all package errors."""


class NotHermitianError(QubatteryError):
    """Matrix fails the Hermitian symmetry check."""


class DimensionMismatchError(QubatteryError):
    """Operands have incompatible or unexpected dimensions."""


class NotPureError(QubatteryError):
    """A pure state was required but a mixed state was supplied."""


class InvalidDensityMatrixError(QubatteryError):
    """Density matrix violates Hermiticity, trace or positivity bounds."""


class UnsupportedCellCountError(QubatteryError):
    """Battery size outside the supported two- or three-cell range."""


class StepTooLargeError(QubatteryError):
    """Integrator step violates the stability bound."""


class TooFewSamplesError(QubatteryError):
    """Not enough samples for the requested stencil or quadrature."""


class NonUniformGridError(QubatteryError):
    """Time grid is not usable by the composite Simpson rule."""


class ConfigError(QubatteryError):
    """Scenario configuration is invalid; message names the offending field."""
