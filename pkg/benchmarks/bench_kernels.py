"""Compare the compiled kernels with the pure-Python fallback.

Times each kernel directly on both implementations, then a full dictionary
search in a subprocess per backend (``DICT2D_PURE=1`` forces the fallback).

    python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from dict2d import _pykernels as py
from dict2d.dyn_dict_1d import _Automaton
from dict2d.row_index import SuffixAutomaton

try:
    from dict2d import _ckernels as ck
except ImportError:
    ck = None

END_TO_END = """
import random, time
from dict2d import Dictionary2D, KERNEL_BACKEND
rng = random.Random(0)
rows = lambda h, w: [bytes(rng.choice(b"abcd") for _ in range(w)) for _ in range(h)]
for engine, d in (("blocked", 12), ("grouped", 4)):
    D = Dictionary2D()
    for _ in range(d):
        D.insert_pattern(rows(rng.randint(2, 8), 8))
    T = rows(256, 256)
    t0 = time.perf_counter()
    D.search(T, engine)
    print(KERNEL_BACKEND, engine, f"{time.perf_counter() - t0:.3f}")
"""


def kernel_cases(rng: random.Random):
    text = bytes(rng.choice(b"abcd") for _ in range(4096))
    pats = [bytes(rng.choice(b"abcd") for _ in range(rng.randint(2, 8))) for _ in range(64)]
    auto = _Automaton(enumerate(pats, 1))
    sam = SuffixAutomaton()
    for _ in range(64):
        sam.add(bytes(rng.choice(b"abcd") for _ in range(16)))
    grid = [bytes(rng.choice(b"ab") for _ in range(64)) for _ in range(64)]
    block = [text[i:i + 24] for i in range(0, 24 * 36, 24)]
    return {
        "prefix_function": lambda k: k.prefix_function(text),
        "least_rotation": lambda k: k.least_rotation(text),
        "naive_match": lambda k: k.naive_match(grid, [b"abab", b"baba"]),
        "ac_scan": lambda k: k.ac_scan(k.ac_prepare(auto), text),
        "ac_scan_many": lambda k: k.ac_scan_many(k.ac_prepare(auto), block),
        "ms_scan": lambda k: k.ms_scan(k.ms_prepare(sam), text, 16),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if ck is None:
        print("compiled kernels are not built; only the fallback is available")
    cases = kernel_cases(random.Random(0))
    print(f"{'kernel':<16}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases.items():
        tp = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat)) * 1e3
        if ck is None:
            print(f"{name:<16}{tp:>12.3f}")
            continue
        tc = min(timeit.repeat(lambda: fn(ck), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<16}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x")
    print("\nend-to-end search, 256x256 text (seconds)")
    for pure in ("1", ""):
        env = dict(os.environ, DICT2D_PURE=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        print(out.stdout.rstrip())


if __name__ == "__main__":
    main()
