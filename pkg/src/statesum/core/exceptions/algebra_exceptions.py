from .base import StateSumError


class GroupSpecError(StateSumError):
    def __init__(self, message: str = "Malformed group specification.") -> None:
        super().__init__(message)


class GroupAxiomError(StateSumError):
    def __init__(self, message: str = "Table does not define a group.") -> None:
        super().__init__(message)


class FieldMismatchError(StateSumError):
    def __init__(self, message: str = "Cyclotomic operands live in incompatible fields.") -> None:
        super().__init__(message)


class CyclotomicZeroDivisionError(StateSumError, ZeroDivisionError):
    def __init__(self, message: str = "Inverse of zero in a cyclotomic field.") -> None:
        super().__init__(message)


class CochainParseError(StateSumError):
    def __init__(self, message: str = "Malformed cochain file.", line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CocycleError(StateSumError):
    def __init__(self, message: str = "Cochain is not a cocycle.") -> None:
        super().__init__(message)


class CyclotomicParseError(StateSumError, ValueError):
    def __init__(self, message: str = "Malformed cyclotomic literal.") -> None:
        super().__init__(message)
