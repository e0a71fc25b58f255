"""Reduction of invertible matrices to the identity by counted row ops.

Two algorithms:

* :func:`gauss_jordan` - one pivot fix plus one AddMul per nonzero
  off-pivot entry, column by column; at most n**2 ops.
* :func:`striped_eliminate` - columns handled in stripes of width w.  For
  each stripe a w x w pivot block is brought to the identity, then every
  other row is cleared with a single AddMul from an accumulator row that
  walks through all normalized stripe patterns in Gray-code order.  With
  w near log_q(n) this costs about n**2 / w ops.
"""

from __future__ import annotations

import gc
import math
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

from .elemword import Word, eval_word
from .field import FieldSpec
from .matrix import Matrix, PackedRowWork, SingularMatrixError, work_rows
from .ops import AddMul, Scale, Swap


@dataclass(frozen=True)
class ReductionResult:
    word: Word  # product order: eval_word(word, A) == I
    op_count: int
    algorithm: str
    stripe_width: Optional[int] = None

    def application_order(self) -> tuple:
        return self.word.application_order()


@contextmanager
def _gc_paused():
    # op records are acyclic; cyclic GC passes over millions of them only cost time
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def gauss_jordan(A: Matrix, packed: bool | None = None) -> ReductionResult:
    """Reduce A to I column by column; raises SingularMatrixError."""
    with _gc_paused():
        return _gauss_jordan(A, packed)


def _gauss_jordan(A: Matrix, packed: bool | None) -> ReductionResult:
    f, n = A.field, A.n
    work = work_rows(A, packed=packed)
    ops: list = []
    fast = isinstance(work, PackedRowWork)
    for c in range(n):
        if not work.entry(c, c):
            r = next((r for r in range(c + 1, n) if work.entry(r, c)), None)
            if r is None:
                raise SingularMatrixError(c)
            work.swap(c, r)
            ops.append(Swap(c, r))
        if fast:
            rows = work.rows
            pivot, bit = rows[c], 1 << c
            for r in range(n):
                if r != c and rows[r] & bit:
                    rows[r] ^= pivot
                    ops.append(AddMul(c, r, 1))
            continue
        a = work.entry(c, c)
        if a != 1:
            lam = f.inv(a)
            work.scale(c, lam)
            ops.append(Scale(c, lam))
        for r in range(n):
            if r != c:
                a = work.entry(r, c)
                if a:
                    lam = f.neg(a)
                    work.addmul(c, r, lam)
                    ops.append(AddMul(c, r, lam))
    assert len(ops) <= n * n, "Gauss-Jordan exceeded n^2 operations"
    return ReductionResult(Word.from_application(ops), len(ops), "gj")


def default_stripe_width(n: int, q: int) -> int:
    """floor(log_q n - 2 log_q max(log_q n, q)), clamped to [1, n]."""
    if n < 2:
        return 1
    lq = math.log(n) / math.log(q)
    w = math.floor(lq - 2 * math.log(max(lq, q)) / math.log(q) + 1e-12)
    return max(1, min(w, n))


def striped_bound(n: int, q: int, w: int) -> int:
    """Worst-case op count guaranteed by :func:`striped_eliminate`."""
    return -(-n // w) * (n + 2 * q ** w + 3 * w * w + w)


def gray_code(q: int, d: int) -> list[tuple]:
    """Reflected base-q Gray code over {0..q-1}^d.

    Consecutive tuples differ in exactly one coordinate.  Starts at the
    zero tuple.
    """
    seq: list[tuple] = [()]
    for _ in range(d):
        nxt = []
        for a in range(q):
            part = seq if a % 2 == 0 else seq[::-1]
            nxt.extend(t + (a,) for t in part)
        seq = nxt
    return seq


def _gray_steps(q: int, d: int):
    """Yield (tail, changed coordinate or None, old digit, new digit)."""
    prev = None
    for t in gray_code(q, d):
        if prev is None:
            yield t, None, 0, 0
        else:
            i = next(k for k in range(d) if t[k] != prev[k])
            yield t, i, prev[i], t[i]
        prev = t


def _bucket_rows(work, start: int, width: int, f: FieldSpec) -> list[dict]:
    """Group non-pivot rows by (leading index, normalized tail).

    Returns one dict per leading index j mapping a tail key to a list of
    (row, leading coefficient).  Tail keys are tuples, or bitmasks over GF(2).
    """
    buckets: list[dict] = [{} for _ in range(width)]
    stop = start + width
    if isinstance(work, PackedRowWork):
        mask = (1 << width) - 1
        rows = work.rows
        for r, row in enumerate(rows):
            if start <= r < stop:
                continue
            v = (row >> start) & mask
            if v:
                low = v & -v
                j = low.bit_length() - 1
                buckets[j].setdefault(v >> (j + 1), []).append((r, 1))
        return buckets
    for r in range(work.n):
        if start <= r < stop:
            continue
        seg = work.segment(r, start, width)
        for j, c in enumerate(seg):
            if c:
                inv = f.inv(c)
                tail = tuple(f.mul(inv, x) for x in seg[j + 1:])
                buckets[j].setdefault(tail, []).append((r, c))
                break
    return buckets


def _tail_key(tail: tuple, packed: bool):
    if not packed:
        return tail
    return sum(bit << i for i, bit in enumerate(tail))


def striped_eliminate(A: Matrix, w: int | None = None,
                      packed: bool | None = None) -> ReductionResult:
    """Reduce A to I stripe by stripe; raises SingularMatrixError."""
    with _gc_paused():
        return _striped_eliminate(A, w, packed)


def _striped_eliminate(A: Matrix, w: int | None, packed: bool | None) -> ReductionResult:
    f, n, q = A.field, A.n, A.field.q
    if w is None:
        w = default_stripe_width(n, q)
    if not 1 <= w <= n:
        raise ValueError(f"stripe width {w} outside [1, {n}]")
    work = work_rows(A, packed=packed)
    is_packed = isinstance(work, PackedRowWork)
    ops: list = []

    def addmul(src, dst, lam):
        work.addmul(src, dst, lam)
        ops.append(AddMul(src, dst, lam))

    for start in range(0, n, w):
        width = min(w, n - start)

        # pivot block -> identity
        for j in range(width):
            c = start + j
            pivot_coeffs = [work.entry(start + k, c) for k in range(j)]
            found = None
            for r in range(c, n):
                seg = work.segment(r, start, j + 1)
                v = seg[j]
                for k in range(j):
                    if seg[k] and pivot_coeffs[k]:
                        v = f.sub(v, f.mul(seg[k], pivot_coeffs[k]))
                if v:
                    found = r
                    break
            if found is None:
                raise SingularMatrixError(c)
            if found != c:
                work.swap(c, found)
                ops.append(Swap(c, found))
            for k in range(j):
                a = work.entry(c, start + k)
                if a:
                    addmul(start + k, c, f.neg(a))
            a = work.entry(c, c)
            if a != 1:
                lam = f.inv(a)
                work.scale(c, lam)
                ops.append(Scale(c, lam))
            for k in range(j):
                a = work.entry(start + k, c)
                if a:
                    addmul(c, start + k, f.neg(a))

        # clear the stripe in every other row
        buckets = _bucket_rows(work, start, width, f)
        for j in range(width):
            pending = buckets[j]
            if not pending:
                continue
            acc = start + j
            tail = ()
            for tail, i, old, new in _gray_steps(q, width - 1 - j):
                if i is not None:
                    addmul(acc + 1 + i, acc, f.sub(new, old))
                hits = pending.pop(_tail_key(tail, is_packed), None)
                if hits:
                    for r, c in hits:
                        addmul(acc, r, f.neg(c))
                    if not pending:
                        break
            for i, x in enumerate(tail):
                if x:
                    addmul(acc + 1 + i, acc, f.neg(x))

    bound = striped_bound(n, q, w)
    if len(ops) > bound:
        raise AssertionError(f"striped elimination used {len(ops)} > {bound} ops")
    return ReductionResult(Word.from_application(ops), len(ops), "striped", w)


ALGORITHMS = {"gj": gauss_jordan, "striped": striped_eliminate}


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    first_divergence: Optional[int] = None
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_reduction(A: Matrix, result: ReductionResult) -> VerifyReport:
    """Check eval_word(result.word, A) == I.

    On failure the report names the first application-order index where
    the word departs from what the tagged algorithm emits for A.
    """
    try:
        ok = eval_word(result.word, A).is_identity()
    except (IndexError, ValueError) as exc:
        return VerifyReport(False, None, f"word does not apply to A: {exc}")
    if ok:
        return VerifyReport(True)
    divergence = None
    algo = ALGORITHMS.get(result.algorithm)
    if algo is not None:
        try:
            kwargs = {"w": result.stripe_width} if result.algorithm == "striped" else {}
            ref = algo(A, **kwargs).application_order()
        except (SingularMatrixError, ValueError):
            ref = ()
        got = result.application_order()
        divergence = next((k for k, (a, b) in enumerate(zip(got, ref)) if a != b),
                          min(len(got), len(ref)))
    msg = "word does not reduce A to the identity"
    if divergence is not None:
        msg += f"; first divergence at op {divergence}"
    return VerifyReport(False, divergence, msg)


def invert_via_word(A: Matrix, result: ReductionResult) -> Matrix:
    """Apply the reduction word to I, giving A^-1; checked by A @ A^-1 == I."""
    Ainv = eval_word(result.word, Matrix.identity(A.n, A.field))
    if not (A @ Ainv).is_identity():
        raise ValueError("reduction word does not invert A")
    return Ainv
