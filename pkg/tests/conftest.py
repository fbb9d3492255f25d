import random

import pytest

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_rows(rng: random.Random, h: int, w: int, alphabet: bytes) -> list[bytes]:
    return [bytes(rng.choice(alphabet) for _ in range(w)) for _ in range(h)]


def periodic_row(rng: random.Random, w: int, period: int, alphabet: bytes) -> bytes:
    unit = bytes(rng.choice(alphabet) for _ in range(period))
    return (unit * (w // period + 1))[:w]


def plant(text: list[bytes], rows, r0: int, c0: int) -> list[bytes]:
    """Copy ``rows`` into ``text`` with 0-based top-left (r0, c0)."""
    out = [bytearray(r) for r in text]
    for i, row in enumerate(rows):
        out[r0 + i][c0:c0 + len(row)] = row
    return [bytes(r) for r in out]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
