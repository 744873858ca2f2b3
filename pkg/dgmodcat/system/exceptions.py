from typing import Any, Dict, Optional


class DimensionMismatchError(ValueError):
    pass


class FieldMismatchError(ValueError):
    pass


class DocumentFormatError(ValueError):
    pass


class UnsupportedInstanceError(ValueError):
    pass


class InvalidBatteryError(ValueError):
    pass


class InvalidStructureError(ValueError):
    """
    Raised when an algebra, module or map fails its axioms at construction time.

    :param message: What was being constructed.
    :param report: The ValidationReport listing the failed axioms.
    """

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class FlatnessFailure(RuntimeError):
    """
    The target failed flatness: either on a battery sequence, or because the lifting system of the
    Lazard construction has no solution.
    """

    def __init__(self, message: str, witness: Dict[str, Any]):
        super().__init__(message)
        self.witness = witness
