from typing import Any, Optional


class HopfError(RuntimeError):
    """Base class for every failure the workbench reports as an error (exit code 1)."""


class DimensionMismatch(HopfError):
    pass


class AxiomError(HopfError):
    """An object or morphism failed the axioms of its declared level."""

    def __init__(self, message: str, result: Any = None) -> None:
        super().__init__(message)
        self.result = result


class UnverifiedMorphism(HopfError):
    pass


class UnsupportedCharacteristic(HopfError):
    pass


class ResourceBudgetExceeded(HopfError):
    pass


class InvalidParameters(HopfError):
    pass


class UnknownExample(HopfError):
    pass


class FileFormatError(HopfError):
    def __init__(self, message: str, location: Optional[str] = None) -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
