"""Words of elementary matrices and their canonical products.

A :class:`Word` stores ops in *product* order: ``Word((E1, E2, E3))``
is the matrix ``E1 @ E2 @ E3``, so E3 is the first row operation applied.

Canonicalization runs four rewriting passes:

1. :func:`normalize_swaps` pulls every Swap to the front, relabeling the
   ops it passes through the transposition.
2. :func:`normalize_scales` pulls every Scale to the front of the rest,
   adjusting AddMul coefficients, then merges scales per row.
3. :func:`partition_blocks` greedily cuts the AddMul suffix into blocks of
   ops with pairwise disjoint index sets.
4. :func:`compact_blocks` moves ops to earlier blocks until every op in a
   block meets some op of the block before it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import FieldSpec
from .matrix import Matrix, OpCounter, work_rows
from .ops import AddMul, ElementaryOp, Scale, Swap, check_op, inverse_op


@dataclass(frozen=True)
class Word:
    ops: tuple = ()

    def __post_init__(self):
        if not isinstance(self.ops, tuple):
            object.__setattr__(self, "ops", tuple(self.ops))

    @classmethod
    def from_application(cls, ops: Iterable[ElementaryOp]) -> "Word":
        """Build from ops listed in the order they are applied to a matrix."""
        return cls(tuple(reversed(tuple(ops))))

    def application_order(self) -> tuple:
        return tuple(reversed(self.ops))

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, k):
        return self.ops[k]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.ops + other.ops)


@dataclass(frozen=True)
class CanonicalWord:
    """Swap prefix, sorted scale segment, then AddMul blocks."""

    swaps: tuple = ()
    scales: tuple = ()
    blocks: tuple = ()

    @property
    def r(self) -> int:
        return len(self.swaps)

    @property
    def r0(self) -> int:
        return len(self.scales)

    @property
    def block_lengths(self) -> tuple:
        return tuple(len(b) for b in self.blocks)

    def offsets(self) -> list[int]:
        """Cumulative positions r + r0 + r1 + ... + ri for i = 0..s."""
        out = [self.r + self.r0]
        for b in self.blocks:
            out.append(out[-1] + len(b))
        return out

    def to_word(self) -> Word:
        ops = list(self.swaps) + list(self.scales)
        for b in self.blocks:
            ops.extend(b)
        return Word(tuple(ops))

    def __len__(self):
        return self.r + self.r0 + sum(self.block_lengths)


def _as_word(w) -> Word:
    if isinstance(w, CanonicalWord):
        return w.to_word()
    if isinstance(w, Word):
        return w
    return Word(tuple(w))


def eval_word(w, A: Matrix, counter: OpCounter | None = None) -> Matrix:
    """Return E1 @ E2 @ ... @ Ek @ A, applying Ek first.

    Charges ``len(w)`` units to counter.
    """
    w = _as_word(w)
    for op in w.ops:
        check_op(op, A.n, A.field)
    work = work_rows(A)
    for op in reversed(w.ops):
        work.apply(op)
    if counter is not None:
        counter.charge(len(w))
    return work.to_matrix()


def invert_word(w, field: FieldSpec) -> Word:
    w = _as_word(w)
    return Word(tuple(inverse_op(op, field) for op in reversed(w.ops)))


# -- rewriting rules --------------------------------------------------------------

def _transpose(k: int, i: int, j: int) -> int:
    if k == i:
        return j
    if k == j:
        return i
    return k


def swap_conjugate(op: ElementaryOp, sw: Swap) -> ElementaryOp:
    """Return op2 with ``op @ sw == sw @ op2``.

    Indices of op are relabeled by the transposition exchanging sw.i and
    sw.j.
    """
    i, j = sw.i, sw.j
    if isinstance(op, AddMul):
        return AddMul(_transpose(op.src, i, j), _transpose(op.dst, i, j), op.lam)
    if isinstance(op, Scale):
        return Scale(_transpose(op.i, i, j), op.lam)
    raise TypeError(f"cannot conjugate {op!r}; swaps commute only by reordering")


def scale_commute(op: AddMul, sc: Scale, field: FieldSpec) -> AddMul:
    """Return op2 with ``op @ sc == sc @ op2``."""
    if sc.i == op.src:
        return AddMul(op.src, op.dst, field.mul(sc.lam, op.lam))
    if sc.i == op.dst:
        return AddMul(op.src, op.dst, field.div(op.lam, sc.lam))
    return op


def normalize_swaps(w) -> Word:
    """Move every Swap to a prefix, keeping their relative order.

    Each non-swap op ends up conjugated by every swap to its right.  One
    right-to-left pass carries the accumulated relabeling, which gives the
    same result as applying :func:`swap_conjugate` swap by swap.
    """
    w = _as_word(w)
    relabel: dict[int, int] = {}
    swaps: list[Swap] = []
    rest: list[ElementaryOp] = []
    for op in reversed(w.ops):
        if isinstance(op, Swap):
            a, b = relabel.get(op.i, op.i), relabel.get(op.j, op.j)
            relabel[op.i], relabel[op.j] = b, a
            swaps.append(op)
        elif not relabel:
            rest.append(op)
        elif isinstance(op, AddMul):
            rest.append(AddMul(relabel.get(op.src, op.src), relabel.get(op.dst, op.dst), op.lam))
        else:
            rest.append(Scale(relabel.get(op.i, op.i), op.lam))
    return Word(tuple(reversed(swaps)) + tuple(reversed(rest)))


def normalize_scales(w, field: FieldSpec) -> Word:
    """Pull Scales forward past AddMuls and merge them per row.

    Requires the swaps of ``w`` to already form a prefix.  Rows whose
    merged coefficient is 1 drop out.  An AddMul passed by scales picks up
    the product of their coefficients on its source row and divides by
    those on its destination row, as repeated :func:`scale_commute` would.
    """
    w = _as_word(w)
    ops = w.ops
    r = 0
    while r < len(ops) and isinstance(ops[r], Swap):
        r += 1
    if any(isinstance(op, Swap) for op in ops[r:]):
        raise ValueError("normalize_scales needs all swaps in a prefix")

    merged: dict[int, int] = {}
    rest: list[AddMul] = []
    for op in reversed(ops[r:]):
        if isinstance(op, Scale):
            merged[op.i] = field.mul(merged.get(op.i, 1), op.lam)
            continue
        a, b = merged.get(op.src, 1), merged.get(op.dst, 1)
        if a == 1 and b == 1:
            rest.append(op)
        else:
            rest.append(AddMul(op.src, op.dst, field.div(field.mul(a, op.lam), b)))
    scales = tuple(Scale(i, lam) for i, lam in sorted(merged.items()) if lam != 1)
    return Word(ops[:r] + scales + tuple(reversed(rest)))


def partition_blocks(suffix: Sequence[AddMul]) -> list[list[AddMul]]:
    """Greedy left-to-right cut into blocks of pairwise disjoint index sets."""
    blocks: list[list[AddMul]] = []
    used: set = set()
    for op in suffix:
        if not isinstance(op, AddMul):
            raise TypeError(f"partition_blocks takes AddMul ops, got {op!r}")
        if not blocks or op.src in used or op.dst in used:
            blocks.append([])
            used = set()
        blocks[-1].append(op)
        used.add(op.src)
        used.add(op.dst)
    return blocks


def _block_rows(block) -> set:
    rows = set()
    for op in block:
        rows.add(op.src)
        rows.add(op.dst)
    return rows


def _potential(blocks) -> int:
    return sum((t + 1) * len(b) for t, b in enumerate(blocks))


def compact_blocks(blocks, trace: list | None = None) -> list[list[AddMul]]:
    """Move ops back into earlier blocks until each meets its predecessor.

    An op moves from block t to the end of block t-1 whenever its index
    set misses every index set in block t-1, and keeps cascading toward
    the front while that holds.  Empty blocks are removed.  If ``trace``
    is given, the potential sum of (block number * ops) is appended after
    every move; it strictly decreases.
    """
    blocks = [list(b) for b in blocks]
    rows = [_block_rows(b) for b in blocks]
    t = 1
    while t < len(blocks):
        k = 0
        while k < len(blocks[t]):
            op = blocks[t][k]
            if op.src in rows[t - 1] or op.dst in rows[t - 1]:
                k += 1
                continue
            del blocks[t][k]
            rows[t].discard(op.src)
            rows[t].discard(op.dst)
            dest = t - 1
            while dest > 0 and op.src not in rows[dest - 1] and op.dst not in rows[dest - 1]:
                dest -= 1
            blocks[dest].append(op)
            rows[dest].add(op.src)
            rows[dest].add(op.dst)
            if trace is not None:
                trace.append(_potential(blocks))
        if not blocks[t]:
            del blocks[t]
            del rows[t]
        else:
            t += 1
    return blocks


def canonicalize(w, field: FieldSpec) -> CanonicalWord:
    """Rewrite w into an equal canonical product of no greater length."""
    w = normalize_scales(normalize_swaps(w), field)
    ops = w.ops
    r = 0
    while r < len(ops) and isinstance(ops[r], Swap):
        r += 1
    r0 = r
    while r0 < len(ops) and isinstance(ops[r0], Scale):
        r0 += 1
    blocks = compact_blocks(partition_blocks(ops[r0:]))
    return CanonicalWord(swaps=ops[:r], scales=ops[r:r0],
                         blocks=tuple(tuple(b) for b in blocks))


def is_canonical(cw) -> bool:
    """Check the canonical-product conditions.

    Accepts a :class:`CanonicalWord` (its block structure is checked as
    given) or a plain word (the greedy partition is checked, which finds a
    valid block structure whenever one exists).
    """
    if not isinstance(cw, CanonicalWord):
        ops = _as_word(cw).ops
        r = 0
        while r < len(ops) and isinstance(ops[r], Swap):
            r += 1
        r0 = r
        while r0 < len(ops) and isinstance(ops[r0], Scale):
            r0 += 1
        if not all(isinstance(op, AddMul) for op in ops[r0:]):
            return False
        cw = CanonicalWord(ops[:r], ops[r:r0],
                           tuple(tuple(b) for b in partition_blocks(ops[r0:])))

    if not all(isinstance(op, Swap) for op in cw.swaps):
        return False
    if not all(isinstance(op, Scale) for op in cw.scales):
        return False
    if any(a.i >= b.i for a, b in zip(cw.scales, cw.scales[1:])):
        return False
    prev_rows = None
    for block in cw.blocks:
        if not block or not all(isinstance(op, AddMul) for op in block):
            return False
        seen: set = set()
        for op in block:
            if op.src in seen or op.dst in seen:
                return False
            seen.add(op.src)
            seen.add(op.dst)
            if prev_rows is not None and op.src not in prev_rows and op.dst not in prev_rows:
                return False
        prev_rows = seen
    return True
