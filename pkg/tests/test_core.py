import pytest
from hypothesis import given
from hypothesis import strategies as st

from dict2d import (
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
from dict2d.core import Counters, DictionaryStats

row_bytes = st.binary(min_size=1, max_size=12).map(lambda b: b.replace(b"\n", b"x").replace(b"\r", b"y"))


def test_parse_basic():
    assert parse_matrix(b"2 3\nabc\ndef\n").rows == (b"abc", b"def")
    assert parse_matrix(b"1 1\nx\n").rows == (b"x",)


def test_parse_as_pattern():
    P = parse_matrix(b"1 2\nab\n", pattern_id=7)
    assert isinstance(P, PatternMatrix) and P.id == 7 and P.width == 2


@pytest.mark.parametrize(
    "data",
    [
        b"2 3\nabc\nde\n",
        b"2 3\nabc\n",
        b"2 3\nabc\ndef",
        b"2 3\nabc\ndef\nghi\n",
        b"0 3\n",
        b"x 3\nabc\n",
        b"1 3\na\rc\n",
        b"",
    ],
)
def test_parse_rejects(data):
    with pytest.raises(MatrixFormatError):
        parse_matrix(data)


@given(st.integers(1, 6).flatmap(lambda w: st.lists(row_bytes.map(lambda r: (r * w)[:w]), min_size=1, max_size=6)))
def test_round_trip(rows):
    rows = [r for r in rows if len(r) == len(rows[0])]
    data = serialize_matrix(TextGrid(tuple(rows)))
    assert serialize_matrix(parse_matrix(data)) == data


def test_naive_search_examples():
    P = PatternMatrix(1, (b"ab", b"cd"))
    T = TextGrid((b"abx", b"cdx", b"xxx"))
    assert naive_search([P], T) == {Occurrence(1, 1, 1)}
    assert naive_search([], T) == set()


def test_naive_search_tiled():
    P = PatternMatrix(1, (b"abababab", b"abababab"))
    T = TextGrid(tuple(b"ab" * 8 for _ in range(4)))
    got = naive_search([P], T)
    assert got == {Occurrence(1, r, c) for r in (1, 2, 3) for c in (1, 3, 5, 7, 9)}
    assert len(got) == 15


def test_naive_search_order_invariant():
    ps = [PatternMatrix(1, (b"ab",)), PatternMatrix(2, (b"ba",)), PatternMatrix(3, (b"ab",))]
    T = TextGrid((b"abab", b"baba"))
    assert naive_search(ps, T) == naive_search(ps[::-1], T)


@pytest.mark.parametrize("s,expected", [(b"ba", (b"ab", 2)), (b"aab", (b"aab", 1)), (b"aaaa", (b"aaaa", 1))])
def test_min_rotation_examples(s, expected):
    assert naive_min_rotation(s) == expected


@given(st.binary(min_size=1, max_size=16))
def test_min_rotation_is_minimum(s):
    rot, shift = naive_min_rotation(s)
    rots = [s[k:] + s[:k] for k in range(len(s))]
    assert rot == min(rots)
    assert shift == rots.index(rot) + 1


def test_format_occurrences():
    assert format_occurrences({Occurrence(1, 1, 1)}) == b"MATCH 1 1 1\n"
    assert format_occurrences(set()) == b""
    got = format_occurrences({Occurrence(2, 1, 3), Occurrence(1, 1, 1)})
    assert got == b"MATCH 1 1 1\nMATCH 2 1 3\n"


def test_counters_peak():
    c = Counters()
    c.alloc(5)
    c.alloc(3)
    c.free(8)
    c.alloc(2)
    assert c.peak_cells == 8 and c.cells == 2
    c.tau, c.comparisons = 3, 4
    assert c.work == 7
    c.reset()
    assert c.work == 0 and c.peak_cells == 0


def test_dictionary_stats():
    s = DictionaryStats()
    s.add(3, 4)
    s.add(5, 4)
    assert (s.d, s.ell, s.m_bar, s.m_prime) == (2, 32, 4, 5)
    s.remove(5, 4)
    assert s.m_prime == 3
    s.remove(3, 4)
    assert (s.d, s.ell, s.m_bar, s.m_prime) == (0, 0, 0, 0)
