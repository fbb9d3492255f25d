"""Periods, Lyndon canonization of rows, group classification, LCM tables
and the canonical 2D-Lyndon signature of a stack of periodic rows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Hashable, NamedTuple, Sequence

from . import kernels

INFINITY = math.inf


@dataclass
class RowMeta:
    """Per-row periodicity record.

    ``lwpos`` is relative to the row start for pattern rows and an absolute
    block column for text rows.  ``left``/``right`` are only meaningful for
    text rows; a row without a class carries ``left = right = 0``.
    """

    class_name: int
    period: int
    lwpos: int
    left: int = 0
    right: int = 0


NULL_META = RowMeta(0, 0, 0, 0, 0)


class Group(enum.Enum):
    I = 1
    II = 2


class Classification(NamedTuple):
    group: Group
    filter_row: int | None  # 1-based, Group II only


@dataclass(frozen=True)
class LcmTable:
    values: tuple
    cap: int

    def __getitem__(self, i: int):
        # 1-based like the row numbering
        return self.values[i - 1]


class CanonicalSignature(NamedTuple):
    residues: tuple[int, ...]
    z: int
    L: int


class PBlockToken(NamedTuple):
    block_class: int
    delta_z: int | None


def compute_period(s: Sequence) -> int:
    if not len(s):
        raise ValueError("period of an empty string is undefined")
    return len(s) - kernels.prefix_function(s)[-1]


def is_periodic(s: Sequence) -> bool:
    return 2 * compute_period(s) <= len(s)


def lyndon_shift(u: Sequence) -> int:
    """0-based start of the least rotation of the primitive word ``u``."""
    return kernels.least_rotation(u)


def canonize_row(s: bytes) -> tuple[RowMeta, bytes]:
    """Period, Lyndon position and canonical form of a row.

    Two rows get the same canonical row iff their periods are conjugate.
    The class name is left at 0; naming happens in a witness tree.
    """
    p = compute_period(s)
    k = lyndon_shift(s[:p])
    lyndon = s[k:k + p] if k + p <= len(s) else (s[k:p] + s[:k])
    canonical = (lyndon * (len(s) // p + 1))[: len(s)]
    return RowMeta(0, p, k + 1), canonical


def group_threshold(width: int) -> int:
    return width // 4


def classify_pattern(rows: Sequence[bytes]) -> Classification:
    """Group I iff every row has period <= floor(width/4)."""
    t = group_threshold(len(rows[0]))
    for i, r in enumerate(rows, 1):
        if compute_period(r) > t:
            return Classification(Group.II, i)
    return Classification(Group.I, None)


def build_lcm_table(periods: Sequence[int], cap: int) -> LcmTable:
    vals = []
    cur = 1
    for p in periods:
        if p < 1:
            raise ValueError("periods must be positive")
        if cur is not INFINITY:
            cur = math.lcm(cur, p)
            if cur > cap:
                cur = INFINITY
        vals.append(cur)
    return LcmTable(tuple(vals), cap)


def canonical_signature(periods: Sequence[int], lwpos: Sequence[int]) -> CanonicalSignature:
    """Lexicographically least residue vector ``((c - lwpos_i) mod p_i)_i``.

    The admissible columns are kept as one progression ``c = a (mod M)``;
    each row picks its smallest residue compatible with it, then the
    progression is narrowed by CRT.  ``z`` is the least such column in
    ``[1, L]`` with ``L = lcm(periods)``.
    """
    a, M = 0, 1
    residues = []
    for p, lw in zip(periods, lwpos):
        g = math.gcd(M, p)
        # need c = lw + r (mod p) and c = a (mod M): solvable iff lw + r = a (mod g)
        r = (a - lw) % g
        residues.append(r)
        target = (lw + r) % p
        if M % p == 0:
            continue
        # solve a + M*t = target (mod p)
        mg, pg = M // g, p // g
        t = ((target - a) // g * pow(mg, -1, pg)) % pg if pg > 1 else 0
        a = a + M * t
        M = M * pg
        a %= M
    z = (a - 1) % M + 1
    return CanonicalSignature(tuple(residues), z, M)


def brute_signature(periods: Sequence[int], lwpos: Sequence[int]) -> CanonicalSignature:
    """Reference: enumerate every column in ``[1, lcm]``."""
    L = math.lcm(*periods)
    best = None
    for c in range(1, L + 1):
        vec = tuple((c - lw) % p for p, lw in zip(periods, lwpos))
        if best is None or vec < best[0]:
            best = (vec, c)
    return CanonicalSignature(best[0], best[1], L)


class SignatureNamer:
    """Dictionary-wide naming of p_block signatures.

    Names are never reused or renumbered, so token automata built from
    them stay valid across updates.
    """

    def __init__(self) -> None:
        self._names: dict[Hashable, int] = {}

    def name(self, key: Hashable) -> int:
        n = self._names.get(key)
        if n is None:
            n = self._names[key] = len(self._names) + 1
        return n

    def lookup(self, key: Hashable) -> int | None:
        return self._names.get(key)

    def __len__(self) -> int:
        return len(self._names)


def block_key(metas: Sequence[RowMeta], sig: CanonicalSignature) -> tuple:
    return (
        tuple(m.class_name for m in metas),
        tuple(m.period for m in metas),
        sig.residues,
    )


def tokenize_pblocks(
    metas: Sequence[RowMeta], pi: int, namer: SignatureNamer, insert: bool = True
) -> tuple[list[PBlockToken], list[CanonicalSignature]]:
    """Split rows into full ``pi``-row chunks and name each chunk's signature.

    With ``insert=False`` unknown signatures get fresh negative classes that
    never equal a dictionary class.  Returns the tokens and the signatures.
    """
    if pi < 1:
        raise ValueError("pi must be positive")
    tokens: list[PBlockToken] = []
    sigs: list[CanonicalSignature] = []
    prev = None
    for start in range(0, len(metas) - pi + 1, pi):
        chunk = metas[start:start + pi]
        sig = canonical_signature([m.period for m in chunk], [m.lwpos for m in chunk])
        key = block_key(chunk, sig)
        cls = namer.name(key) if insert else namer.lookup(key)
        if cls is None:
            cls = -(len(tokens) + 1)
        delta = None if prev is None else (sig.z - prev.z) % sig.L
        tokens.append(PBlockToken(cls, delta))
        sigs.append(sig)
        prev = sig
    return tokens, sigs
