"""The ``skewbrace v1`` text format.

::

    skewbrace v1
    # optional comment lines
    order N
    add:
    <N rows of N space-separated integers>
    circ:
    <N rows>

Element 0 must be the identity of both tables.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .brace import SkewBrace, validate_brace
from .errors import ParseError

HEADER = "skewbrace v1"


def parse_tables(text: str) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Tables and comments, after format checks but before brace validation."""
    comments: list[str] = []
    lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            comments.append(raw)
        elif line:
            lines.append((lineno, line))
    if not lines or lines[0][1] != HEADER:
        raise ParseError(f"line 1: expected header {HEADER!r}")
    if len(lines) < 2 or not lines[1][1].startswith("order "):
        raise ParseError("expected 'order N' after the header")
    try:
        n = int(lines[1][1].split()[1])
    except (IndexError, ValueError):
        raise ParseError(f"line {lines[1][0]}: bad order line {lines[1][1]!r}") from None
    if n < 1:
        raise ParseError("order must be positive")
    body = lines[2:]
    if len(body) != 2 * n + 2:
        raise ParseError(f"expected {2 * n + 2} lines of table data for order {n}, got {len(body)}")

    tables = []
    for offset, label in ((0, "add:"), (n + 1, "circ:")):
        lineno, line = body[offset]
        if line != label:
            raise ParseError(f"line {lineno}: expected {label!r}")
        rows = []
        for lineno, line in body[offset + 1: offset + 1 + n]:
            try:
                row = [int(tok) for tok in line.split()]
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer entry") from None
            if len(row) != n:
                raise ParseError(f"line {lineno}: expected {n} entries, got {len(row)}")
            rows.append(row)
        tables.append(np.asarray(rows, dtype=np.int64))

    ar = np.arange(n)
    for label, t in zip(("add", "circ"), tables):
        if (t < 0).any() or (t >= n).any():
            raise ParseError(f"{label} table has entries outside 0..{n - 1}")
        if not ((t[0] == ar).all() and (t[:, 0] == ar).all()):
            ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
            hint = f"; relabel so that element {ids[0]} becomes 0" if ids else ""
            raise ParseError(f"element 0 is not the identity of the {label} table{hint}")
    return tables[0], tables[1], comments


def parse_brace(text: str, name: str = "") -> SkewBrace:
    add, circ, _ = parse_tables(text)
    return validate_brace(add, circ, name=name)


def format_brace(B: SkewBrace, comments: list[str] | None = None) -> str:
    lines = [HEADER, *(comments or []), f"order {B.order}", "add:"]
    lines += [" ".join(map(str, row)) for row in B.add.rows]
    lines.append("circ:")
    lines += [" ".join(map(str, row)) for row in B.circ.rows]
    return "\n".join(lines) + "\n"


def read_brace(path: str | Path) -> SkewBrace:
    p = Path(path)
    return parse_brace(p.read_text(encoding="utf-8"), name=p.stem)


def write_brace(path: str | Path, B: SkewBrace, comments: list[str] | None = None) -> None:
    Path(path).write_text(format_brace(B, comments), encoding="utf-8")


def digest(B: SkewBrace) -> str:
    """Stable hash of the concatenated tables."""
    return hashlib.sha256(format_brace(B).encode()).hexdigest()[:16]


def gamma_digest(B: SkewBrace) -> str:
    text = "\n".join(" ".join(map(str, g)) for g in B.gamma)
    return hashlib.sha256(text.encode()).hexdigest()[:16]
