import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dict2d import naive_min_rotation
from dict2d.periodicity import (
    INFINITY,
    Group,
    RowMeta,
    SignatureNamer,
    brute_signature,
    build_lcm_table,
    canonical_signature,
    canonize_row,
    classify_pattern,
    compute_period,
    lyndon_shift,
    tokenize_pblocks,
)


def period_oracle(s):
    return next(p for p in range(1, len(s) + 1) if all(s[i] == s[i + p] for i in range(len(s) - p)))


def signature_oracle(periods, lwpos):
    L = math.lcm(*periods)
    vecs = [(tuple((c - lw) % p for p, lw in zip(periods, lwpos)), c) for c in range(1, L + 1)]
    vec, z = min(vecs)
    return vec, z, L


@pytest.mark.parametrize("s,p", [(b"abab", 2), (b"aaaa", 1), (b"abcab", 3)])
def test_period_examples(s, p):
    assert compute_period(s) == p


@given(st.binary(min_size=1, max_size=24).map(lambda b: bytes(97 + x % 3 for x in b)))
def test_period_matches_oracle(s):
    assert compute_period(s) == period_oracle(s)


@given(st.binary(min_size=1, max_size=16).map(lambda b: bytes(97 + x % 3 for x in b)))
def test_lyndon_shift_matches_rotation_oracle(s):
    k = lyndon_shift(s)
    assert s[k:] + s[:k] == naive_min_rotation(s)[0]
    assert k + 1 == naive_min_rotation(s)[1]


@pytest.mark.parametrize(
    "row,period,lwpos,canon",
    [(b"baba", 2, 2, b"abab"), (b"aaaa", 1, 1, b"aaaa"), (b"abcd", 4, 1, b"abcd")],
)
def test_canonize_examples(row, period, lwpos, canon):
    meta, canonical = canonize_row(row)
    assert (meta.period, meta.lwpos, canonical) == (period, lwpos, canon)


@given(st.binary(min_size=1, max_size=20).map(lambda b: bytes(97 + x % 2 for x in b)))
def test_canonical_row_is_shift_of_least_rotation(row):
    meta, canonical = canonize_row(row)
    p = meta.period
    unit = naive_min_rotation(row[:p])[0]
    assert canonical == (unit * len(row))[: len(row)]
    # the Lyndon word starts at lwpos of the periodic extension
    k = meta.lwpos - 1
    assert (row[:p] * 2)[k:k + p] == unit


def test_conjugate_rows_share_canonical():
    assert canonize_row(b"abcabcab")[1] == canonize_row(b"cabcabca")[1]
    assert canonize_row(b"abababab")[1] != canonize_row(b"aabbaabb")[1]


def test_classify_examples():
    assert classify_pattern([b"abababab", b"abababab"]).group is Group.I
    c = classify_pattern([b"abababab", b"abcabcab"])
    assert c.group is Group.II and c.filter_row == 2
    assert classify_pattern([b"aaa"]).group is Group.II
    assert classify_pattern([b"abcd", b"aaaa"]).filter_row == 1
    assert classify_pattern([b"abababab", b"abcabcab", b"abababab"]).filter_row == 2


def test_lcm_table_examples():
    assert build_lcm_table([2, 3, 4], 40).values == (2, 6, 12)
    assert build_lcm_table([4, 5, 3], 40).values == (4, 20, INFINITY)
    assert build_lcm_table([1], 7).values == (1,)
    assert build_lcm_table([2, 3, 4], 40)[3] == 12


@given(st.lists(st.integers(1, 12), min_size=1, max_size=8), st.integers(1, 100))
def test_lcm_table_oracle(periods, cap):
    vals = build_lcm_table(periods, cap).values
    for i, v in enumerate(vals):
        exact = math.lcm(*periods[: i + 1])
        assert v == (exact if exact <= cap else INFINITY)


@pytest.mark.parametrize(
    "periods,lwpos,residues,z",
    [([2, 3], [1, 1], (0, 0), 1), ([2, 3], [2, 1], (0, 0), 4), ([2, 4], [1, 2], (0, 1), 3)],
)
def test_signature_examples(periods, lwpos, residues, z):
    sig = canonical_signature(periods, lwpos)
    assert (sig.residues, sig.z, sig.L) == (residues, z, math.lcm(*periods))


@st.composite
def metas_small_lcm(draw, limit=256):
    periods = draw(st.lists(st.integers(1, 16), min_size=1, max_size=8))
    while math.lcm(*periods) > limit:
        periods.pop()
    if not periods:
        periods = [draw(st.integers(1, 16))]
    lwpos = [draw(st.integers(1, p)) for p in periods]
    return periods, lwpos


@settings(max_examples=300)
@given(metas_small_lcm())
def test_signature_matches_brute_force(pl):
    periods, lwpos = pl
    sig = canonical_signature(periods, lwpos)
    assert (sig.residues, sig.z, sig.L) == signature_oracle(periods, lwpos)
    assert brute_signature(periods, lwpos) == sig


@settings(max_examples=300)
@given(metas_small_lcm(), st.integers(-300, 300))
def test_signature_shift_equivariance(pl, delta):
    periods, lwpos = pl
    a = canonical_signature(periods, lwpos)
    b = canonical_signature(periods, [lw + delta for lw in lwpos])
    assert a.residues == b.residues
    assert (b.z - a.z - delta) % a.L == 0


def _metas(periods, lwpos, classes=None):
    classes = classes or [1] * len(periods)
    return [RowMeta(c, p, lw) for c, p, lw in zip(classes, periods, lwpos)]


def test_tokens_identical_rows():
    toks, _ = tokenize_pblocks(_metas([2] * 4, [1] * 4), 2, SignatureNamer())
    assert len(toks) == 2 and toks[0].block_class == toks[1].block_class
    assert toks[0].delta_z is None and toks[1].delta_z == 0


def test_tokens_period_one():
    toks, _ = tokenize_pblocks(_metas([1] * 5, [1] * 5), 1, SignatureNamer())
    assert len({t.block_class for t in toks}) == 1
    assert all(t.delta_z == 0 for t in toks[1:])


def test_tokens_delta_z():
    toks, sigs = tokenize_pblocks(_metas([2, 3, 2, 3], [1, 1, 2, 2]), 2, SignatureNamer())
    assert toks[0].block_class == toks[1].block_class
    assert sigs[0].residues == sigs[1].residues == (0, 0)
    assert (sigs[0].z, sigs[1].z) == (1, 2)
    assert toks[1].delta_z == 1


def test_tokens_partial_chunk_dropped_and_unknown_classes_negative():
    namer = SignatureNamer()
    toks, _ = tokenize_pblocks(_metas([2] * 5, [1] * 5), 2, namer)
    assert len(toks) == 2
    other, _ = tokenize_pblocks(_metas([3, 3], [1, 1]), 2, namer, insert=False)
    assert other[0].block_class < 0
    assert len(namer) == 1
