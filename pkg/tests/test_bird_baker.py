import random

import pytest
from conftest import plant, random_rows

from dict2d import Dictionary2D, Occurrence, PatternMatrix, TextGrid, naive_search
from dict2d.bird_baker import BlockPlan, LinearEngine


def test_update_names_rows():
    e = LinearEngine()
    e.update(PatternMatrix(1, (b"ab", b"cd")), "add")
    assert len(e.d_prime[1]) == 2 and len(set(e.d_prime[1])) == 2
    e.update(PatternMatrix(2, (b"ab", b"ef")), "add")
    shared = e.d_prime[1][0]
    assert e.d_prime[2][0] == shared and e.row_count[shared] == 2


def test_add_then_remove_is_invisible():
    rng = random.Random(1)
    base = [random_rows(rng, 2, 3, b"ab") for _ in range(3)]
    e, ref = LinearEngine(), LinearEngine()
    for i, rows in enumerate(base, 1):
        e.update(PatternMatrix(i, tuple(rows)), "add")
        ref.update(PatternMatrix(i, tuple(rows)), "add")
    extra = PatternMatrix(9, tuple(random_rows(rng, 3, 3, b"ab")))
    e.update(extra, "add")
    e.update(extra, "remove")
    for _ in range(30):
        T = TextGrid(tuple(random_rows(rng, 8, 8, b"ab")))
        assert e.search_linear(T) == ref.search_linear(T)


def test_search_linear_examples():
    e = LinearEngine()
    e.update(PatternMatrix(1, (b"ab", b"cd")), "add")
    assert e.search_linear(TextGrid((b"abx", b"cdx", b"xxx"))) == {Occurrence(1, 1, 1)}
    assert e.search_linear(TextGrid((b"zzz", b"zzz"))) == set()
    f = LinearEngine()
    f.update(PatternMatrix(1, (b"ab",)), "add")
    assert f.search_linear(TextGrid((b"abab",))) == {Occurrence(1, 1, 1), Occurrence(1, 1, 3)}


def test_block_plan_dims():
    p = BlockPlan.for_dims(5, 7)
    assert (p.block_h, p.block_w, p.step_h, p.step_w) == (8, 11, 3, 4)
    q = BlockPlan.for_dims(1, 1)
    assert (q.block_h, q.block_w, q.step_h, q.step_w) == (2, 2, 1, 1)


@pytest.mark.parametrize("m_prime,m_bar", [(1, 1), (2, 3), (3, 5), (4, 4), (7, 9)])
def test_blocks_cover_every_placement_once(m_prime, m_bar):
    """Each pattern-sized window lies inside exactly one block that owns it."""
    plan = BlockPlan.for_dims(m_prime, m_bar)
    n1, n2 = 3 * m_prime + 2, 3 * m_bar + 1
    for r in range(1, n1 - m_prime + 2):
        for c in range(1, n2 - m_bar + 2):
            owners = [
                (top, left)
                for top, left, h, w in plan.blocks(n1, n2)
                if plan.owns(r - top + 1, c - left + 1)
                and r >= top and c >= left
                and r + m_prime - 1 <= top + h - 1 and c + m_bar - 1 <= left + w - 1
            ]
            assert len(owners) == 1, (r, c, owners)


def test_blocked_equals_linear_on_single_block():
    rng = random.Random(2)
    D = Dictionary2D()
    pats = [random_rows(rng, 2, 4, b"ab") for _ in range(3)]
    for p in pats:
        D.insert_pattern(p)
    plan = D.plan()
    for _ in range(30):
        T = TextGrid(tuple(random_rows(rng, plan.block_h, plan.block_w, b"ab")))
        assert D.search(T, "blocked") == D.search(T, "linear")


def test_straddling_occurrence_reported_once():
    D = Dictionary2D()
    P = [b"abcd", b"efgh", b"ijkl"]
    pid = D.insert_pattern(P)
    plan = D.plan()
    text = [b"." * 20 for _ in range(12)]
    text = plant(text, P, plan.step_h, plan.step_w)
    reports = D.search_reports(TextGrid(tuple(text)), "blocked")
    assert reports == [Occurrence(pid, plan.step_h + 1, plan.step_w + 1)]


def test_without_dedup_duplicates_appear():
    D = Dictionary2D()
    D.insert_pattern([b"ab"])
    T = TextGrid((b"xabx",) * 3)
    deduped = D.search_reports(T, "blocked")
    raw = D.search_reports(T, "blocked", dedup=False)
    assert sorted(deduped) == sorted(set(raw)) and len(raw) > len(deduped)


def test_text_smaller_than_pattern():
    D = Dictionary2D()
    D.insert_pattern([b"abc", b"abc"])
    assert D.search(TextGrid((b"abc",)), "blocked") == set()
    assert D.search(TextGrid((b"ab", b"ab")), "blocked") == set()


def test_blocked_random_against_oracle():
    rng = random.Random(3)
    for _ in range(40):
        m = rng.choice([2, 3, 5])
        D = Dictionary2D()
        pats = {}
        for _ in range(rng.randint(1, 5)):
            rows = random_rows(rng, rng.randint(1, 4), m, b"ab")
            pats[D.insert_pattern(rows)] = rows
        T = TextGrid(tuple(random_rows(rng, rng.randint(1, 20), rng.randint(1, 20), b"ab")))
        expect = naive_search([PatternMatrix(i, tuple(r)) for i, r in pats.items()], T)
        reports = D.search_reports(T, "blocked")
        assert sorted(reports) == sorted(expect)
