from .base import StateSumError


class DataParseError(StateSumError):
    def __init__(self, message: str = "Malformed spherical data file.", line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DataShapeError(StateSumError):
    def __init__(self, message: str = "Partition tensor shape does not match the 2Hom dimensions.") -> None:
        super().__init__(message)


class InadmissibleLabelError(StateSumError):
    def __init__(self, message: str = "Label tuple is not admissible.") -> None:
        super().__init__(message)


class BudgetExceededError(StateSumError):
    def __init__(self, message: str = "Computation budget exceeded.") -> None:
        super().__init__(message)


class ZeroDimensionError(StateSumError):
    def __init__(self, message: str = "The category has dimension zero.") -> None:
        super().__init__(message)
