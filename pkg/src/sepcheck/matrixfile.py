"""Plain-text complex matrix files.

Grammar (one logical item per line; ``#`` lines and blank lines are skipped)::

    file    := header row{n}
    header  := "dims" d1 d2            n = d1 * d2
    row     := entry{n}                whitespace separated
    entry   := real | imag | real imag-signed
    real    := [+-]? number
    imag    := [+-]? number? "i"
    imag-signed := [+-] number? "i"
    number  := digits ["." digits] | "." digits, optional exponent [eE][+-]?digits

Examples of entries: ``0.5``, ``-2i``, ``1e-3+0.25i``, ``0.5-0.5i``.
Writers emit every entry as ``<re><+|-><im>i`` with 17 significant digits,
which reproduces IEEE doubles exactly on reparse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from sepcheck.errors import ParseError

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_ENTRY = re.compile(
    rf"^(?:(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)i"
    rf"|(?P<re_only>[+-]?{_NUM})"
    rf"|(?P<im_only>[+-]?(?:{_NUM})?)i)$"
)


@dataclass(frozen=True)
class MatrixFile:
    matrix: np.ndarray
    d1: int
    d2: int


def _imag_part(tok: str) -> float:
    if tok in ("", "+"):
        return 1.0
    if tok == "-":
        return -1.0
    return float(tok)


def parse_entry(tok: str) -> complex:
    m = _ENTRY.match(tok)
    if m is None:
        raise ParseError(f"malformed complex entry {tok!r}")
    if m.group("re") is not None:
        return complex(float(m.group("re")), _imag_part(m.group("im")))
    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    return complex(0.0, _imag_part(m.group("im_only")))


def parse_text(text: str) -> MatrixFile:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append((lineno, s))
    if not lines:
        raise ParseError("empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "dims":
        raise ParseError(f"line {lineno}: expected header 'dims d1 d2', got {header!r}")
    try:
        d1, d2 = int(parts[1]), int(parts[2])
    except ValueError:
        raise ParseError(f"line {lineno}: dimensions must be integers, got {header!r}") from None
    if d1 < 1 or d2 < 1:
        raise ParseError(f"line {lineno}: dimensions must be positive")
    n = d1 * d2
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows after the header, found {len(rows)}")
    m = np.empty((n, n), dtype=np.complex128)
    for i, (lineno, row) in enumerate(rows):
        toks = row.split()
        if len(toks) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, found {len(toks)}")
        for j, tok in enumerate(toks):
            try:
                m[i, j] = parse_entry(tok)
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
    if not np.all(np.isfinite(m)):
        raise ParseError("matrix contains non-finite entries")
    return MatrixFile(m, d1, d2)


def read(path) -> MatrixFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not a text file") from None
    return parse_text(text)


def format_entry(z: complex) -> str:
    re_, im = z.real + 0.0, z.imag + 0.0  # fold -0.0 into 0.0
    return f"{re_:.17g}{im:+.17g}i"


def format_matrix(m, d1: int, d2: int, comments=()) -> str:
    m = np.asarray(m, dtype=np.complex128)
    out = [f"# {c}" for c in comments]
    out.append(f"dims {d1} {d2}")
    for row in m:
        out.append(" ".join(format_entry(z) for z in row))
    return "\n".join(out) + "\n"


def write(path, m, d1: int, d2: int, comments=()) -> None:
    Path(path).write_text(format_matrix(m, d1, d2, comments))
