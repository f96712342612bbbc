# ruff: noqa
from .base import StateSumError
from .complex_exceptions import (
    TriangulationParseError,
    RepeatedVertexError,
    DuplicateFacetError,
    VertexRangeError,
    NotClosedError,
    DisconnectedComplexError,
    NonOrientableError,
    InvalidPermutationError,
    InvalidMoveError,
)
from .algebra_exceptions import (
    GroupSpecError,
    GroupAxiomError,
    FieldMismatchError,
    CyclotomicZeroDivisionError,
    CochainParseError,
    CocycleError,
)
from .engine_exceptions import (
    DataParseError,
    DataShapeError,
    InadmissibleLabelError,
    BudgetExceededError,
    ZeroDimensionError,
)
