"""Elementary row operations.

Each op stands for the elementary matrix that performs it by left
multiplication.  Degenerate forms (identity scales, zero multipliers,
repeated indices) are rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, slots=True)
class Swap:
    """Interchange rows i and j."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError(f"Swap needs distinct rows, got {self.i}")
        if self.i < 0 or self.j < 0:
            raise ValueError("negative row index")

    @property
    def rows(self) -> frozenset:
        return frozenset((self.i, self.j))

    def max_index(self) -> int:
        return max(self.i, self.j)


@dataclass(frozen=True, slots=True)
class Scale:
    """Multiply row i by lam (lam not in {0, 1})."""

    i: int
    lam: int

    def __post_init__(self):
        if self.lam in (0, 1):
            raise ValueError(f"Scale coefficient must not be 0 or 1, got {self.lam}")
        if self.i < 0:
            raise ValueError("negative row index")

    @property
    def rows(self) -> frozenset:
        return frozenset((self.i,))

    def max_index(self) -> int:
        return self.i


@dataclass(frozen=True, slots=True)
class AddMul:
    """Add lam times row src to row dst."""

    src: int
    dst: int
    lam: int

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"AddMul needs distinct rows, got {self.src}")
        if self.lam == 0:
            raise ValueError("AddMul coefficient must be nonzero")
        if self.src < 0 or self.dst < 0:
            raise ValueError("negative row index")

    @property
    def rows(self) -> frozenset:
        return frozenset((self.src, self.dst))

    index_set = rows

    def max_index(self) -> int:
        return max(self.src, self.dst)


ElementaryOp = Union[Swap, Scale, AddMul]


def inverse_op(op: ElementaryOp, field) -> ElementaryOp:
    if isinstance(op, Swap):
        return op
    if isinstance(op, Scale):
        return Scale(op.i, field.inv(op.lam))
    return AddMul(op.src, op.dst, field.neg(op.lam))


def check_op(op: ElementaryOp, n: int, field) -> None:
    """Raise if op does not fit an n x n matrix over field."""
    if op.max_index() >= n:
        raise IndexError(f"{op} out of range for n={n}")
    lam = getattr(op, "lam", None)
    if lam is not None and not 0 <= lam < field.q:
        raise ValueError(f"{op}: coefficient outside GF({field.q})")
