"""Plain-text matrix format.

::

    # comment
    3            <- field literal
    2 3          <- k n
    1 0 2
    0 1 2

Extension-field entries are coefficient tuples ``c0:c1:...``.
"""

from __future__ import annotations

from .fields import Field, FieldError, parse_field
from .matrix import Matrix

__all__ = ["ParseError", "parse_matrix", "format_matrix", "read_matrix"]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_matrix(text: str, field: Field | None = None) -> Matrix:
    """Parse the text format; ``field`` overrides the literal when given."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matrix file")
    no, head = lines[0]
    try:
        file_field = parse_field(head)
    except (FieldError, ValueError) as exc:
        raise ParseError(f"bad field literal {head!r}: {exc}", no) from exc
    if field is not None and field != file_field:
        raise ParseError(f"file declares field {file_field} but {field} was requested", no)
    F = file_field
    if len(lines) < 2:
        raise ParseError("missing 'k n' line", no)
    no, dims = lines[1]
    try:
        k, n = (int(t) for t in dims.split())
    except ValueError as exc:
        raise ParseError(f"expected 'k n', got {dims!r}", no) from exc
    body = lines[2:]
    if len(body) != k:
        where = body[-1][0] if body else no
        raise ParseError(f"expected {k} matrix rows, found {len(body)}", where)
    rows = []
    for no, line in body:
        toks = line.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", no)
        try:
            rows.append([F.parse_element(t) for t in toks])
        except ValueError as exc:
            raise ParseError(f"bad entry: {exc}", no) from exc
    return Matrix(F, rows, ncols=n, raw=True)


def read_matrix(path, field: Field | None = None) -> Matrix:
    with open(path) as fh:
        return parse_matrix(fh.read(), field)


def format_matrix(M: Matrix) -> str:
    fmt = M.field.format_element
    lines = [M.field.literal(), f"{M.nrows} {M.ncols}"]
    lines += [" ".join(fmt(x) for x in r) for r in M.rows]
    return "\n".join(lines) + "\n"
