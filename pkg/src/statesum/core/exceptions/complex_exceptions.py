from .base import StateSumError


class TriangulationParseError(StateSumError):
    def __init__(self, message: str = "Malformed triangulation file.", line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RepeatedVertexError(StateSumError):
    def __init__(self, message: str = "Facet has a repeated vertex.") -> None:
        super().__init__(message)


class DuplicateFacetError(StateSumError):
    def __init__(self, message: str = "Duplicate facet.") -> None:
        super().__init__(message)


class VertexRangeError(StateSumError):
    def __init__(self, message: str = "Vertex id out of range.") -> None:
        super().__init__(message)


class NotClosedError(StateSumError):
    def __init__(self, message: str = "not a closed pseudomanifold") -> None:
        super().__init__(message)


class DisconnectedComplexError(StateSumError):
    def __init__(self, message: str = "Complex is not connected.") -> None:
        super().__init__(message)


class NonOrientableError(StateSumError):
    def __init__(self, message: str = "Complex is not orientable.") -> None:
        super().__init__(message)


class InvalidPermutationError(StateSumError):
    def __init__(self, message: str = "Permutation is not a bijection of the vertex set.") -> None:
        super().__init__(message)


class InvalidMoveError(StateSumError):
    def __init__(self, message: str = "Move site is invalid or stale.") -> None:
        super().__init__(message)
