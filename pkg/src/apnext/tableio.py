"""Truth-table text files and JSON report helpers.

File format::

    n=<int> m=<int>
    <2^n whitespace-separated hexadecimal outputs, in index order>

Index i is the input whose bit vector is i.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .vecfun import VectorialFunction

SCHEMA_VERSION = 1

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s*$")
_HEX = re.compile(r"^(0[xX])?[0-9a-fA-F]+$")


class TableFormatError(ValueError):
    pass


def format_table(F: VectorialFunction, per_line: int = 16) -> str:
    lines = [f"n={F.n_in} m={F.n_out}"]
    vals = [format(int(v), "x") for v in F.table]
    for i in range(0, len(vals), per_line):
        lines.append(" ".join(vals[i:i + per_line]))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> VectorialFunction:
    lines = text.strip().splitlines()
    if not lines:
        raise TableFormatError("empty table file")
    m = _HEADER.match(lines[0])
    if not m:
        raise TableFormatError(f"bad header {lines[0]!r}; expected 'n=<int> m=<int>'")
    n, mo = int(m.group(1)), int(m.group(2))
    if n > 24 or mo > 24:
        raise TableFormatError("dimensions above 24 are not supported")
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != 1 << n:
        raise TableFormatError(f"expected {1 << n} entries for n={n}, found {len(tokens)}")
    bad = next((tok for tok in tokens if not _HEX.match(tok)), None)
    if bad is not None:
        raise TableFormatError(f"non-hexadecimal entry {bad!r}")
    values = np.array([int(tok, 16) for tok in tokens], dtype=np.int64)
    if values.max(initial=0) >= 1 << mo:
        raise TableFormatError(f"an entry does not fit in m={mo} bits")
    return VectorialFunction(n, mo, values)


def read_table(path) -> VectorialFunction:
    with open(path) as fh:
        return parse_table(fh.read())


def write_table(path, F: VectorialFunction) -> None:
    with open(path, "w") as fh:
        fh.write(format_table(F))


def hexs(x: int) -> str:
    return format(int(x), "x")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
