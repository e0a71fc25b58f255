"""Dense square matrices over GF(q).

:class:`Matrix` is an immutable value.  Algorithms that mutate rows work on
a :class:`RowWork` scratch copy; over GF(2) the scratch copy packs each
row into one int (bit c = column c), which behaves exactly like the generic
list-of-lists path.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .field import FieldSpec
from .ops import AddMul, ElementaryOp, Scale, Swap, check_op, inverse_op


class SingularMatrixError(ValueError):
    """Raised when elimination meets a column without a usable pivot."""

    def __init__(self, column: int):
        super().__init__(f"singular at pivot column {column}")
        self.column = column


class OpCounter:
    """Row-operation cost counter threaded through by callers."""

    __slots__ = ("count",)

    def __init__(self) -> None:
        self.count = 0

    def charge(self, k: int = 1) -> None:
        self.count += k

    def __repr__(self):
        return f"OpCounter({self.count})"


class Matrix:
    __slots__ = ("field", "n", "rows")

    def __init__(self, rows: Iterable[Sequence[int]], field: FieldSpec):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must be at least 1x1")
        for r in rows:
            if len(r) != n:
                raise ValueError(f"row of length {len(r)} in {n}x{n} matrix")
            for x in r:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} outside GF({field.q})")
        self.field = field
        self.n = n
        self.rows = rows

    @classmethod
    def _trusted(cls, rows: tuple, field: FieldSpec) -> "Matrix":
        obj = cls.__new__(cls)
        obj.field, obj.n, obj.rows = field, len(rows), rows
        return obj

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "Matrix":
        return cls._trusted(tuple(tuple(int(r == c) for c in range(n))
                                  for r in range(n)), field)

    @classmethod
    def zeros(cls, n: int, field: FieldSpec) -> "Matrix":
        return cls._trusted(tuple((0,) * n for _ in range(n)), field)

    def __getitem__(self, r: int) -> tuple:
        return self.rows[r]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]}, {self.field!r})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.n != other.n or self.field != other.field:
            raise ValueError("dimension or field mismatch")
        f = self.field
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            out_row = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                out_row.append(acc)
            out.append(tuple(out_row))
        return Matrix._trusted(tuple(out), f)

    def is_identity(self) -> bool:
        return all(x == (r == c) for r, row in enumerate(self.rows)
                   for c, x in enumerate(row))


def elementary_matrix(op: ElementaryOp, n: int, field: FieldSpec) -> Matrix:
    """The matrix E with E @ A equal to applying op to A."""
    check_op(op, n, field)
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    if isinstance(op, Swap):
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    elif isinstance(op, Scale):
        rows[op.i][op.i] = op.lam
    else:
        rows[op.dst][op.src] = op.lam
    return Matrix._trusted(tuple(map(tuple, rows)), field)


class RowWork:
    """Mutable scratch rows; every op is applied in place."""

    def __init__(self, A: Matrix, counter: OpCounter | None = None):
        self.field = A.field
        self.n = A.n
        self.rows = [list(r) for r in A.rows]
        self.counter = counter

    def swap(self, i: int, j: int) -> None:
        rows = self.rows
        rows[i], rows[j] = rows[j], rows[i]

    def scale(self, i: int, lam: int) -> None:
        self.rows[i] = self.field.row_scale(self.rows[i], lam)

    def addmul(self, src: int, dst: int, lam: int) -> None:
        self.rows[dst] = self.field.row_add_scaled(self.rows[dst], self.rows[src], lam)

    def entry(self, r: int, c: int) -> int:
        return self.rows[r][c]

    def segment(self, r: int, start: int, width: int) -> tuple:
        return tuple(self.rows[r][start:start + width])

    def apply(self, op: ElementaryOp) -> None:
        if isinstance(op, AddMul):
            self.addmul(op.src, op.dst, op.lam)
        elif isinstance(op, Swap):
            self.swap(op.i, op.j)
        else:
            self.scale(op.i, op.lam)
        if self.counter is not None:
            self.counter.count += 1

    def is_identity(self) -> bool:
        return all(x == (r == c) for r, row in enumerate(self.rows)
                   for c, x in enumerate(row))

    def to_matrix(self) -> Matrix:
        return Matrix._trusted(tuple(map(tuple, self.rows)), self.field)


class PackedRowWork(RowWork):
    """GF(2) scratch rows packed into ints."""

    def __init__(self, A: Matrix, counter: OpCounter | None = None):
        if A.field.q != 2:
            raise ValueError("packed rows need GF(2)")
        self.field = A.field
        self.n = A.n
        self.rows = pack_rows(A)
        self.counter = counter

    def scale(self, i: int, lam: int) -> None:
        raise ValueError("GF(2) has no nontrivial scales")

    def addmul(self, src: int, dst: int, lam: int) -> None:
        self.rows[dst] ^= self.rows[src]

    def entry(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def segment(self, r: int, start: int, width: int) -> tuple:
        v = self.rows[r] >> start
        return tuple((v >> k) & 1 for k in range(width))

    def is_identity(self) -> bool:
        return all(row == 1 << r for r, row in enumerate(self.rows))

    def to_matrix(self) -> Matrix:
        return unpack_rows(self.rows, self.field)


def work_rows(A: Matrix, counter: OpCounter | None = None, packed: bool | None = None) -> RowWork:
    """Scratch copy of A, packed over GF(2) unless ``packed=False``."""
    if packed is None:
        packed = A.field.q == 2
    return PackedRowWork(A, counter) if packed else RowWork(A, counter)


_BITS = {"0": 0, "1": 1}


def pack_rows(A: Matrix) -> list[int]:
    """GF(2) rows as ints, bit c holding column c."""
    return [int("".join("1" if x else "0" for x in reversed(row)), 2) for row in A.rows]


def unpack_rows(rows: Sequence[int], field: FieldSpec) -> Matrix:
    n = len(rows)
    bits = _BITS
    return Matrix._trusted(
        tuple(tuple(bits[b] for b in reversed(format(v, f"0{n}b"))) for v in rows), field)


def apply_op(A: Matrix, op: ElementaryOp, counter: OpCounter | None = None) -> Matrix:
    """Return E @ A where E is op's elementary matrix; charges one unit."""
    check_op(op, A.n, A.field)
    rows = list(A.rows)
    f = A.field
    if isinstance(op, Swap):
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    elif isinstance(op, Scale):
        rows[op.i] = tuple(f.row_scale(rows[op.i], op.lam))
    else:
        rows[op.dst] = tuple(f.row_add_scaled(rows[op.dst], rows[op.src], op.lam))
    if counter is not None:
        counter.charge()
    return Matrix._trusted(tuple(rows), f)


def rank(A: Matrix) -> int:
    f = A.field
    rows = [list(r) for r in A.rows]
    n = A.n
    r = 0
    for c in range(n):
        pivot = next((k for k in range(r, n) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = f.inv(rows[r][c])
        for k in range(r + 1, n):
            if rows[k][c]:
                rows[k] = f.row_add_scaled(rows[k], rows[r], f.neg(f.mul(rows[k][c], inv)))
        r += 1
    return r


def is_invertible(A: Matrix) -> bool:
    if A.field.q == 2:
        return _gf2_rank(pack_rows(A), A.n) == A.n
    return rank(A) == A.n


def _gf2_rank(rows: list[int], n: int) -> int:
    work = rows[:]
    r = 0
    for c in range(n):
        bit = 1 << c
        pivot = next((k for k in range(r, n) if work[k] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        pr = work[r]
        for k in range(r + 1, n):
            if work[k] & bit:
                work[k] ^= pr
        r += 1
    return r


def encode(A: Matrix) -> int:
    """Integer key sum(entries[r][c] * q**(r*n + c))."""
    q = A.field.q
    key = 0
    for row in reversed(A.rows):
        for x in reversed(row):
            key = key * q + x
    return key


def decode(key: int, n: int, field: FieldSpec) -> Matrix:
    q = field.q
    if not 0 <= key < q ** (n * n):
        raise ValueError(f"key {key} out of range for n={n}, q={q}")
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            key, x = divmod(key, q)
            row.append(x)
        rows.append(tuple(row))
    return Matrix._trusted(tuple(rows), field)


def random_matrix(n: int, field: FieldSpec, rng: random.Random) -> Matrix:
    q = field.q
    if q == 2:
        return unpack_rows([rng.getrandbits(n) for _ in range(n)], field)
    return Matrix._trusted(tuple(tuple(rng.randrange(q) for _ in range(n))
                                 for _ in range(n)), field)


def random_invertible(n: int, field: FieldSpec, seed: int | random.Random = 0) -> Matrix:
    """Uniform sample from GL(n, q) by rejection; deterministic in seed.

    Passing a :class:`random.Random` draws from (and advances) it instead.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if field.q == 2:
        while True:
            rows = [rng.getrandbits(n) for _ in range(n)]
            if _gf2_rank(rows, n) == n:
                return unpack_rows(rows, field)
    while True:
        A = random_matrix(n, field, rng)
        if is_invertible(A):
            return A


__all__ = [
    "Matrix", "OpCounter", "SingularMatrixError", "RowWork", "PackedRowWork",
    "apply_op", "elementary_matrix", "rank", "is_invertible", "encode",
    "decode", "random_invertible", "random_matrix", "work_rows",
    "pack_rows", "unpack_rows", "inverse_op",
]
