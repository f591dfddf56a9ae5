"""Text formats for algebras, unary maps and measures.

Algebra file (``.pbck``)::

    # comment
    pbck 4
    elements a b c 1
    top 1
    arrow
    1 c 1 1
    c 1 1 1
    c c 1 1
    a b c 1
    squiggle        # optional; absent means squiggle = arrow
    ...
    prod            # optional; hoop input
    ...

Each table section is followed by exactly ``n`` rows of ``n`` element names.
Map files hold ``x -> y`` lines, or one line listing the images in element
order.  Measure files hold ``name value`` lines with integer or ``p/q`` values.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from .core import FiniteAlgebra
from .errors import FormatError

FORMAT_TAG = "pbck"
TABLE_SECTIONS = ("arrow", "squiggle", "prod")


def _tokens(text: str) -> Iterator[tuple[int, list[tuple[int, str]]]]:
    """Yield ``(line_no, [(column, token), ...])`` for non-empty lines, comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = []
        col = 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


class ParsedFile:
    def __init__(self, n, names, top, tables):
        self.n = n
        self.names = names
        self.top = top
        self.tables = tables

    def algebra(self) -> FiniteAlgebra:
        arrow = self.tables["arrow"]
        return FiniteAlgebra(arrow, self.tables.get("squiggle", arrow), self.top, self.names)

    @property
    def prod(self):
        return self.tables.get("prod")


def parse_text(text: str, path=None) -> ParsedFile:
    lines = list(_tokens(text))
    if not lines:
        raise FormatError("empty file", path=path)

    def err(msg, lineno, col=None):
        return FormatError(msg, lineno, col, path)

    lineno, toks = lines[0]
    if len(toks) != 2 or toks[0][1] != FORMAT_TAG:
        raise err(f"expected header '{FORMAT_TAG} <size>'", lineno, toks[0][0])
    try:
        n = int(toks[1][1])
    except ValueError:
        raise err(f"carrier size {toks[1][1]!r} is not an integer", lineno, toks[1][0]) from None
    if n < 1:
        raise err("carrier size must be at least 1", lineno, toks[1][0])

    names = None
    index = {}
    top = None
    tables: dict[str, np.ndarray] = {}
    seen = set()
    i = 1
    while i < len(lines):
        lineno, toks = lines[i]
        col, key = toks[0]
        if key in seen:
            raise err(f"duplicate section {key!r}", lineno, col)
        if key == "elements":
            if len(toks) - 1 != n:
                raise err(f"expected {n} element names, got {len(toks) - 1}", lineno, col)
            names = tuple(t for _, t in toks[1:])
            if len(set(names)) != n:
                raise err("element names must be distinct", lineno, col)
            index = {s: k for k, s in enumerate(names)}
            seen.add(key)
            i += 1
        elif key == "top":
            if names is None:
                raise err("'top' must follow 'elements'", lineno, col)
            if len(toks) != 2:
                raise err("expected 'top <element>'", lineno, col)
            c, t = toks[1]
            if t not in index:
                raise err(f"unknown element {t!r}", lineno, c)
            top = index[t]
            seen.add(key)
            i += 1
        elif key in TABLE_SECTIONS:
            if names is None:
                raise err(f"'{key}' must follow 'elements'", lineno, col)
            if len(toks) != 1:
                raise err(f"section keyword '{key}' must stand on its own line", lineno, toks[1][0])
            rows = lines[i + 1:i + 1 + n]
            if len(rows) < n:
                raise err(f"section '{key}' needs {n} rows", lineno, col)
            table = np.empty((n, n), dtype=np.int64)
            for r, (rl, rtoks) in enumerate(rows):
                if len(rtoks) != n:
                    raise err(f"row {r + 1} of '{key}' has {len(rtoks)} entries, expected {n}", rl, rtoks[0][0])
                for c, (cc, t) in enumerate(rtoks):
                    if t not in index:
                        raise err(f"unknown element {t!r}", rl, cc)
                    table[r, c] = index[t]
            tables[key] = table
            seen.add(key)
            i += 1 + n
        else:
            raise err(f"unexpected token {key!r}", lineno, col)
    if names is None:
        raise err("missing 'elements' section", lines[-1][0])
    if top is None:
        raise err("missing 'top' declaration", lines[-1][0])
    if "arrow" not in tables:
        raise err("missing 'arrow' section", lines[-1][0])
    return ParsedFile(n, names, top, tables)


def read_file(path) -> ParsedFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", path=path) from None
    return parse_text(text, path)


def load_algebra(path) -> FiniteAlgebra:
    return read_file(path).algebra()


def _table_block(key, table, names) -> list[str]:
    width = max(len(s) for s in names)
    rows = [" ".join(names[v].ljust(width) for v in row).rstrip() for row in table]
    return [key, *rows]


def dumps(A: FiniteAlgebra, prod=None, comment: str | None = None) -> str:
    names = A.labels
    out = []
    if comment:
        out += [f"# {line}" for line in comment.splitlines()]
    out += [f"{FORMAT_TAG} {A.n}", "elements " + " ".join(names), f"top {names[A.top]}"]
    out += _table_block("arrow", A.arrow, names)
    if not A.is_bck:
        out += _table_block("squiggle", A.squiggle, names)
    if prod is not None:
        out += _table_block("prod", prod, names)
    return "\n".join(out) + "\n"


# -- maps and measures -----------------------------------------------------


def parse_map(text: str, A: FiniteAlgebra, path=None) -> np.ndarray:
    index = {s: k for k, s in enumerate(A.labels)}
    lines = list(_tokens(text))
    if not lines:
        raise FormatError("empty map file", path=path)

    def lookup(tok, lineno, col):
        if tok not in index:
            raise FormatError(f"unknown element {tok!r}", lineno, col, path)
        return index[tok]

    if len(lines) == 1 and all(t != "->" for _, t in lines[0][1]):
        lineno, toks = lines[0]
        if len(toks) != A.n:
            raise FormatError(f"image row has {len(toks)} entries, expected {A.n}", lineno, toks[0][0], path)
        return np.array([lookup(t, lineno, c) for c, t in toks], dtype=np.int64)
    image = np.full(A.n, -1, dtype=np.int64)
    for lineno, toks in lines:
        if len(toks) != 3 or toks[1][1] != "->":
            raise FormatError("expected 'x -> y'", lineno, toks[0][0], path)
        x = lookup(toks[0][1], lineno, toks[0][0])
        if image[x] >= 0:
            raise FormatError(f"duplicate entry for {toks[0][1]!r}", lineno, toks[0][0], path)
        image[x] = lookup(toks[2][1], lineno, toks[2][0])
    missing = [A.labels[i] for i in np.flatnonzero(image < 0)]
    if missing:
        raise FormatError(f"map is not total; missing {', '.join(missing)}", lines[-1][0], None, path)
    return image


def dumps_map(A: FiniteAlgebra, mu) -> str:
    return "".join(f"{A.labels[i]} -> {A.labels[int(v)]}\n" for i, v in enumerate(mu))


def parse_measure(text: str, A: FiniteAlgebra, path=None) -> dict[int, Fraction]:
    index = {s: k for k, s in enumerate(A.labels)}
    values: dict[int, Fraction] = {}
    for lineno, toks in _tokens(text):
        if len(toks) != 2:
            raise FormatError("expected 'element value'", lineno, toks[0][0], path)
        (c1, name), (c2, raw) = toks
        if name not in index:
            raise FormatError(f"unknown element {name!r}", lineno, c1, path)
        if index[name] in values:
            raise FormatError(f"duplicate entry for {name!r}", lineno, c1, path)
        try:
            v = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"value {raw!r} is not an integer or p/q rational", lineno, c2, path) from None
        if "." in raw or "e" in raw.lower():
            raise FormatError(f"value {raw!r} must be exact (integer or p/q)", lineno, c2, path)
        values[index[name]] = v
    missing = [A.labels[i] for i in range(A.n) if i not in values]
    if missing:
        raise FormatError(f"measure is not total; missing {', '.join(missing)}", path=path)
    return values
