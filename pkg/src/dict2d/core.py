"""Shared domain types, matrix file I/O and the brute-force oracle."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import kernels

FORBIDDEN = frozenset(b"\n\r")


class MatrixFormatError(ValueError):
    """Raised when a matrix file does not follow the ``R C`` + rows format."""


class DictionaryError(ValueError):
    """Raised on invalid dictionary updates (width mismatch, unknown id...)."""


def _check_rows(rows: Sequence[bytes]) -> tuple[bytes, ...]:
    rows = tuple(bytes(r) for r in rows)
    if not rows:
        raise ValueError("matrix needs at least one row")
    width = len(rows[0])
    if width == 0:
        raise ValueError("matrix needs at least one column")
    for i, r in enumerate(rows, 1):
        if len(r) != width:
            raise ValueError(f"row {i} has length {len(r)}, expected {width}")
        if FORBIDDEN.intersection(r):
            raise ValueError(f"row {i} contains a newline byte")
    return rows


@dataclass(frozen=True)
class TextGrid:
    rows: tuple[bytes, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _check_rows(self.rows))

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])


@dataclass(frozen=True)
class PatternMatrix:
    """A dictionary pattern: ``height`` rows of a shared width."""

    id: int
    rows: tuple[bytes, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", _check_rows(self.rows))

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return len(self.rows[0])


class Occurrence(NamedTuple):
    pattern: int
    row: int
    col: int


@dataclass
class Counters:
    """Instrumentation shared by every engine of one dictionary.

    ``tau`` counts queries against the row index, ``comparisons`` counts
    character/symbol inspections.  ``cells`` is the transient working
    storage currently held by a search and ``peak_cells`` its maximum.
    """

    tau: int = 0
    comparisons: int = 0
    duels: int = 0
    candidates: int = 0
    cells: int = 0
    peak_cells: int = 0

    def alloc(self, n: int) -> None:
        self.cells += n
        if self.cells > self.peak_cells:
            self.peak_cells = self.cells

    def free(self, n: int) -> None:
        self.cells -= n

    @property
    def work(self) -> int:
        return self.tau + self.comparisons

    def reset(self) -> None:
        self.tau = self.comparisons = self.duels = self.candidates = 0
        self.cells = self.peak_cells = 0


@dataclass
class DictionaryStats:
    d: int = 0
    ell: int = 0
    m_bar: int = 0
    heights: Counter = field(default_factory=Counter)

    @property
    def m_prime(self) -> int:
        return max(self.heights) if self.heights else 0

    def add(self, height: int, width: int) -> None:
        self.d += 1
        self.ell += height * width
        self.m_bar = width
        self.heights[height] += 1

    def remove(self, height: int, width: int) -> None:
        self.d -= 1
        self.ell -= height * width
        self.heights[height] -= 1
        if not self.heights[height]:
            del self.heights[height]
        if self.d == 0:
            self.m_bar = 0


def parse_matrix(data: bytes, pattern_id: int | None = None) -> TextGrid | PatternMatrix:
    """Parse the ``R C`` header followed by exactly R newline-terminated rows.

    Returns a :class:`PatternMatrix` when ``pattern_id`` is given, else a
    :class:`TextGrid`.
    """
    lines = data.split(b"\n")
    try:
        nrows, ncols = (int(x) for x in lines[0].split(b" "))
    except ValueError:
        raise MatrixFormatError(f"malformed header {lines[0][:40]!r}") from None
    if nrows <= 0 or ncols <= 0:
        raise MatrixFormatError("matrix dimensions must be positive")
    body = lines[1:]
    # a trailing newline leaves one empty element after the last row
    if len(body) != nrows + 1 or body[-1] != b"":
        raise MatrixFormatError(f"expected {nrows} newline-terminated rows")
    rows = body[:-1]
    for i, r in enumerate(rows, 1):
        if len(r) != ncols:
            raise MatrixFormatError(f"row {i}: length {len(r)} != declared width {ncols}")
        if b"\r" in r:
            raise MatrixFormatError(f"row {i}: carriage return is not allowed")
    if pattern_id is None:
        return TextGrid(tuple(rows))
    return PatternMatrix(pattern_id, tuple(rows))


def serialize_matrix(m: TextGrid | PatternMatrix) -> bytes:
    head = f"{m.height} {m.width}\n".encode()
    return head + b"".join(r + b"\n" for r in m.rows)


def naive_search(patterns: Iterable[PatternMatrix], text: TextGrid) -> set[Occurrence]:
    """Every (id, row, col) where a pattern equals the text window, cell by cell."""
    out: set[Occurrence] = set()
    for p in patterns:
        for r, c in kernels.naive_match(text.rows, p.rows):
            out.add(Occurrence(p.id, r, c))
    return out


def naive_min_rotation(s: bytes) -> tuple[bytes, int]:
    """Least cyclic rotation of ``s`` and the smallest 1-based shift giving it."""
    if not s:
        raise ValueError("empty string has no rotations")
    best, shift = s, 1
    for k in range(1, len(s)):
        rot = s[k:] + s[:k]
        if rot < best:
            best, shift = rot, k + 1
    return best, shift


def format_occurrences(occs: Iterable[Occurrence]) -> bytes:
    ordered = sorted(occs, key=lambda o: (o.row, o.col, o.pattern))
    return b"".join(f"MATCH {o.pattern} {o.row} {o.col}\n".encode() for o in ordered)
