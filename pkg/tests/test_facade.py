import random

import pytest
from conftest import periodic_row, plant, random_rows

from dict2d import ENGINES, Dictionary2D, DictionaryError, Occurrence, PatternMatrix, TextGrid, naive_search
from dict2d.periodicity import Group


def oracle(D, T):
    return naive_search(D.patterns.values(), T)


def test_width_fixed_by_first_insert():
    D = Dictionary2D()
    D.insert_pattern([b"abc"])
    with pytest.raises(DictionaryError):
        D.insert_pattern([b"ab"])
    with pytest.raises(DictionaryError):
        D.insert_pattern([])


def test_empty_pattern_rejected():
    with pytest.raises(DictionaryError):
        Dictionary2D().insert_pattern([b""])


def test_taller_pattern_grows_plan():
    D = Dictionary2D()
    D.insert_pattern([b"abcd"])
    small = D.plan()
    D.insert_pattern([b"abcd"] * 6)
    assert D.plan().block_h > small.block_h and D.stats.m_prime == 6


def test_round_trip_against_oracle():
    rng = random.Random(1)
    D = Dictionary2D()
    a = D.insert_pattern([b"abab", b"baba"])
    D.remove_pattern(a)
    b = D.insert_pattern([b"abab", b"baba"])
    assert b != a
    for _ in range(20):
        T = TextGrid(tuple(random_rows(rng, 8, 8, b"ab")))
        for eng in ENGINES:
            assert D.search(T, eng) == oracle(D, T)


def test_remove_sole_pattern():
    D = Dictionary2D()
    pid = D.insert_pattern([b"ab"])
    D.remove_pattern(pid)
    assert D.m_bar == 0
    for eng in ENGINES:
        assert D.search([b"abab"], eng) == set()
    with pytest.raises(DictionaryError):
        D.remove_pattern(pid)
    D.insert_pattern([b"abc"])  # width may change once empty


def test_remove_one_of_two_sharing_rows():
    D = Dictionary2D()
    a = D.insert_pattern([b"abcd", b"efgh"])
    b = D.insert_pattern([b"abcd", b"ijkl"])
    D.remove_pattern(a)
    T = TextGrid((b"abcd", b"ijkl"))
    for eng in ENGINES:
        assert D.search(T, eng) == {Occurrence(b, 1, 1)}


def test_text_narrower_than_patterns():
    D = Dictionary2D()
    D.insert_pattern([b"abcd"])
    for eng in ENGINES:
        assert D.search([b"abc"] * 3, eng) == set()


def test_both_groups_union():
    rng = random.Random(2)
    D = Dictionary2D()
    g1 = D.insert_pattern([b"ab" * 4, b"aa" * 4])
    g2 = D.insert_pattern([b"abcdefgh", b"ab" * 4])
    assert D.group_of(g1) is Group.I and D.group_of(g2) is Group.II
    assert D.resolve_engine() == "grouped"
    for _ in range(25):
        text = [periodic_row(rng, 20, rng.choice([1, 2]), b"ab") for _ in range(10)]
        text = plant(text, D.patterns[g2].rows, rng.randint(0, 8), rng.randint(0, 12))
        text = plant(text, D.patterns[g1].rows, rng.randint(0, 8), rng.randint(0, 12))
        T = TextGrid(tuple(text))
        assert D.search(T) == oracle(D, T)


def test_auto_threshold():
    D = Dictionary2D()
    for k in range(3):
        D.insert_pattern([bytes([97 + k]) * 3])
    assert D.resolve_engine() == "blocked"  # d = m_bar
    D.remove_pattern(1)
    assert D.resolve_engine() == "grouped"


def test_duplicate_content_both_reported():
    D = Dictionary2D()
    a, b = D.insert_pattern([b"xy"]), D.insert_pattern([b"xy"])
    for eng in ENGINES:
        assert D.search([b"xy"], eng) == {Occurrence(a, 1, 1), Occurrence(b, 1, 1)}


def test_unknown_engine():
    with pytest.raises(ValueError):
        Dictionary2D("fast")
    with pytest.raises(ValueError):
        Dictionary2D().resolve_engine("fast")


def test_stats_lines_and_counters():
    D = Dictionary2D.from_patterns([[b"ab", b"ba"], [b"aa"]])
    D.reset_counters()
    D.search([b"abab", b"baba"])
    lines = dict(s.split("=") for s in D.stats_lines())
    assert lines["d"] == "2" and lines["ell"] == "6" and lines["m_bar"] == "2" and lines["m_prime"] == "2"
    assert int(lines["tau"]) > 0 and int(lines["comparisons"]) > 0
    assert D.counters.cells == 0
