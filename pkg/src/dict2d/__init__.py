"""Dynamic two-dimensional dictionary matching in small working space."""

from .core import (
    Counters,
    DictionaryError,
    DictionaryStats,
    MatrixFormatError,
    Occurrence,
    PatternMatrix,
    TextGrid,
    format_occurrences,
    naive_min_rotation,
    naive_search,
    parse_matrix,
    serialize_matrix,
)
from .dictionary import ENGINES, Dictionary2D
from .kernels import BACKEND as KERNEL_BACKEND

__all__ = [
    "Counters",
    "Dictionary2D",
    "DictionaryError",
    "DictionaryStats",
    "ENGINES",
    "KERNEL_BACKEND",
    "MatrixFormatError",
    "Occurrence",
    "PatternMatrix",
    "TextGrid",
    "format_occurrences",
    "naive_min_rotation",
    "naive_search",
    "parse_matrix",
    "serialize_matrix",
]
