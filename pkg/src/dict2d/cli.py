"""Command-line front end.

``dict2d run SCRIPT`` executes a command script line by line::

    add pattern.txt      # prints the assigned id
    remove 3
    search text.txt      # prints MATCH lines
    stats                # prints key=value lines

Relative file names are resolved against the script's directory.  Blank
lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import TextIO

from .core import DictionaryError, MatrixFormatError, TextGrid, format_occurrences, parse_matrix, serialize_matrix
from .dictionary import ENGINES, Dictionary2D


class ScriptError(Exception):
    pass


def _load(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise ScriptError(f"cannot read {path}: {exc.strerror}") from None


def run_script(lines, base: Path, out, engine: str = "auto") -> Dictionary2D:
    D = Dictionary2D(engine)
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cmd, *args = line.split()
        try:
            if cmd == "add" and len(args) == 1:
                P = parse_matrix(_load(base / args[0]), pattern_id=0)
                out.write(f"{D.insert_pattern(P.rows)}\n")
            elif cmd == "remove" and len(args) == 1:
                D.remove_pattern(int(args[0]))
            elif cmd == "search" and len(args) == 1:
                T = parse_matrix(_load(base / args[0]))
                out.write(format_occurrences(D.search(T)).decode("ascii"))
            elif cmd == "stats" and not args:
                out.write("".join(s + "\n" for s in D.stats_lines()))
            else:
                raise ScriptError(f"bad command {line!r}")
        except (ScriptError, MatrixFormatError, DictionaryError, ValueError) as exc:
            raise ScriptError(f"line {lineno}: {exc}") from None
    return D


def _generate(args: argparse.Namespace, out: TextIO) -> None:
    rng = random.Random(args.seed)
    alphabet = args.alphabet.encode()
    rows = []
    for _ in range(args.rows):
        if args.period:
            unit = bytes(rng.choice(alphabet) for _ in range(args.period))
            rows.append((unit * (args.cols // args.period + 1))[: args.cols])
        else:
            rows.append(bytes(rng.choice(alphabet) for _ in range(args.cols)))
    out.write(serialize_matrix(TextGrid(tuple(rows))).decode("latin-1"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="dict2d", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a command script")
    p_run.add_argument("script", type=Path)
    p_run.add_argument("--engine", choices=ENGINES, default="auto")

    p_gen = sub.add_parser("generate", help="write a random matrix file")
    p_gen.add_argument("--rows", type=int, required=True)
    p_gen.add_argument("--cols", type=int, required=True)
    p_gen.add_argument("--alphabet", default="ab")
    p_gen.add_argument("--period", type=int, default=0, help="tile each row with a random word of this length")
    p_gen.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    if args.command == "generate":
        if args.rows < 1 or args.cols < 1 or not args.alphabet:
            parser.error("rows, cols and alphabet must be non-empty")
        _generate(args, sys.stdout)
        return 0
    try:
        lines = _load(args.script).decode("utf-8").splitlines()
        run_script(lines, args.script.parent, sys.stdout, args.engine)
    except (ScriptError, UnicodeDecodeError) as exc:
        print(f"dict2d: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
