"""Exception hierarchy shared by every module."""


class QDCPrepError(Exception):
    pass


class InputError(QDCPrepError, ValueError):
    """Invalid classical input (vector, distribution, angle tree)."""


class DimensionError(InputError):
    pass


class NormalizationError(InputError):
    pass


class DistributionError(InputError):
    pass


class IRError(QDCPrepError, ValueError):
    """Malformed gate or circuit operation."""


class ExportError(QDCPrepError):
    pass


class ResourceError(QDCPrepError):
    """Requested simulation exceeds the configured qubit cap."""
