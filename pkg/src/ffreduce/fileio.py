"""Text formats for matrices and words.

Matrix file::

    n p m
    a00 a01 ...
    ...

Word file (ops listed in the order they are applied)::

    word n p m order=application
    S i j
    M i lambda
    A src dst lambda

Indices are 0-based; field elements use the base-p digit encoding.  Blank
lines and lines starting with ``#`` are ignored on read.
"""

from __future__ import annotations

from .elemword import Word
from .field import FieldSpec, field_new
from .matrix import Matrix
from .ops import AddMul, Scale, Swap, check_op


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line.split())
    return out


def _ints(tokens, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"non-integer token in {what}: {' '.join(tokens)}") from None


def format_matrix(A: Matrix) -> str:
    f = A.field
    lines = [f"{A.n} {f.p} {f.m}"]
    lines += [" ".join(map(str, row)) for row in A.rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    header = _ints(lines[0], "header")
    if len(header) != 3:
        raise FormatError("matrix header must be 'n p m'")
    n, p, m = header
    if n < 1:
        raise FormatError(f"bad dimension {n}")
    field = field_new(p, m)
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for k, tokens in enumerate(body):
        row = _ints(tokens, f"row {k}")
        if len(row) != n:
            raise FormatError(f"row {k} has {len(row)} entries, expected {n}")
        for x in row:
            if not 0 <= x < field.q:
                raise FormatError(f"row {k}: entry {x} outside [0, {field.q - 1}]")
        rows.append(row)
    return Matrix(rows, field)


def format_word(word: Word, n: int, field: FieldSpec) -> str:
    lines = [f"word {n} {field.p} {field.m} order=application"]
    for op in word.application_order():
        if isinstance(op, Swap):
            lines.append(f"S {op.i} {op.j}")
        elif isinstance(op, Scale):
            lines.append(f"M {op.i} {op.lam}")
        else:
            lines.append(f"A {op.src} {op.dst} {op.lam}")
    return "\n".join(lines) + "\n"


def parse_word(text: str) -> tuple[Word, int, FieldSpec]:
    """Returns the word in product order with its dimension and field."""
    lines = _lines(text)
    if not lines:
        raise FormatError("empty word file")
    head = lines[0]
    if len(head) != 5 or head[0] != "word" or head[4] != "order=application":
        raise FormatError("word header must be 'word n p m order=application'")
    n, p, m = _ints(head[1:4], "header")
    if n < 1:
        raise FormatError(f"bad dimension {n}")
    field = field_new(p, m)
    ops = []
    for k, tokens in enumerate(lines[1:], start=1):
        kind, args = tokens[0], _ints(tokens[1:], f"op line {k}")
        try:
            if kind == "S" and len(args) == 2:
                op = Swap(*args)
            elif kind == "M" and len(args) == 2:
                op = Scale(*args)
            elif kind == "A" and len(args) == 3:
                op = AddMul(*args)
            else:
                raise FormatError(f"op line {k}: cannot parse {' '.join(tokens)!r}")
            check_op(op, n, field)
        except (ValueError, IndexError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"op line {k}: {exc}") from None
        ops.append(op)
    return Word.from_application(ops), n, field


def read_matrix(path) -> Matrix:
    with open(path) as fh:
        return parse_matrix(fh.read())


def write_matrix(path, A: Matrix) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_matrix(A))


def read_word(path) -> tuple[Word, int, FieldSpec]:
    with open(path) as fh:
        return parse_word(fh.read())


def write_word(path, word: Word, n: int, field: FieldSpec) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_word(word, n, field))
