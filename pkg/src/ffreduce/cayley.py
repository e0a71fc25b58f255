"""Exact row-operation distances on GL(n, q) by breadth-first search.

The Cayley graph has an edge g -> E @ g for every non-identity elementary
matrix E.  The generating set is closed under inverses, so the BFS ball of
radius k is exactly the set of products of at most k elementary matrices.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .bounds import gl_order
from .field import FieldSpec, field_new
from .matrix import Matrix, encode
from .ops import AddMul, Scale, Swap

DEFAULT_STATE_CAP = 1 << 28


class StateCapExceeded(RuntimeError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"BFS needs {required} states, cap is {cap}; "
                         "raise --state-cap or FFREDUCE_STATE_CAP to proceed")
        self.required = required
        self.cap = cap


def state_cap_from_env(default: int = DEFAULT_STATE_CAP) -> int:
    raw = os.environ.get("FFREDUCE_STATE_CAP")
    return int(raw) if raw else default


def generators(n: int, field: FieldSpec) -> list:
    """All non-identity elementary matrices, each exactly once."""
    q = field.q
    gens: list = [Swap(i, j) for i in range(n) for j in range(i + 1, n)]
    gens += [Scale(i, lam) for i in range(n) for lam in range(2, q)]
    gens += [AddMul(i, j, lam) for i in range(n) for j in range(n) if i != j
             for lam in range(1, q)]
    return gens


@dataclass
class DistanceHistogram:
    n: int
    p: int
    m: int
    counts: dict  # distance -> number of group elements
    group_order: int

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def diameter(self) -> int:
        return max(self.counts)

    @property
    def mean(self) -> Fraction:
        total = sum(self.counts.values())
        return Fraction(sum(d * c for d, c in self.counts.items()), total)

    @property
    def ball_sizes(self) -> list[int]:
        out, acc = [], 0
        for d in range(self.diameter + 1):
            acc += self.counts.get(d, 0)
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n, "p": self.p, "m": self.m,
            "group_order": str(self.group_order),
            "histogram": {str(d): self.counts[d] for d in sorted(self.counts)},
            "diameter": self.diameter,
            "mean": float(self.mean),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DistanceHistogram":
        return cls(n=int(data["n"]), p=int(data["p"]), m=int(data["m"]),
                   counts={int(d): int(c) for d, c in data["histogram"].items()},
                   group_order=int(data["group_order"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


@dataclass
class CayleyTable:
    """Distance from I for every element of GL(n, q), keyed by matrix key."""

    n: int
    field: FieldSpec
    distances: dict = dc_field(repr=False)
    histogram: Optional[DistanceHistogram] = None


class _RowArith:
    """Arithmetic on rows packed as base-q integers < q**n."""

    def __init__(self, n: int, field: FieldSpec):
        q = field.q
        self.size = size = q ** n
        self.xor = q == 2
        if self.xor:
            return
        digits = [[(v // q ** c) % q for c in range(n)] for v in range(size)]
        weights = [q ** c for c in range(n)]

        def pack(row):
            return sum(x * wt for x, wt in zip(row, weights))

        self.scaled = [None, list(range(size))]
        for lam in range(2, q):
            self.scaled.append([pack(field.row_scale(d, lam)) for d in digits])
        self.add = [[pack(field.row_add_scaled(a, b, 1)) for b in digits] for a in digits]


def _step(state: tuple, op, arith: _RowArith) -> tuple:
    rows = list(state)
    if type(op) is AddMul:
        if arith.xor:
            rows[op.dst] ^= rows[op.src]
        else:
            rows[op.dst] = arith.add[rows[op.dst]][arith.scaled[op.lam][rows[op.src]]]
    elif type(op) is Swap:
        rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
    else:
        rows[op.i] = arith.scaled[op.lam][rows[op.i]]
    return tuple(rows)


def bfs_table(n: int, field: FieldSpec, state_cap: int | None = None) -> CayleyTable:
    """Single-source BFS from I over GL(n, q).

    Raises :class:`StateCapExceeded` instead of truncating.
    """
    if state_cap is None:
        state_cap = state_cap_from_env()
    q = field.q
    order = gl_order(n, q)
    if order > state_cap:
        raise StateCapExceeded(order, state_cap)
    arith = _RowArith(n, field)
    gens = generators(n, field)
    start = tuple(q ** r for r in range(n))  # identity row r has a 1 in column r
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        state = frontier.popleft()
        d = dist[state] + 1
        for op in gens:
            nxt = _step(state, op, arith)
            if nxt not in dist:
                dist[nxt] = d
                frontier.append(nxt)
    if len(dist) != order:
        raise AssertionError(f"BFS reached {len(dist)} elements, expected {order}")

    qn = q ** n
    distances = {}
    counts: dict = {}
    for state, d in dist.items():
        key = 0
        for row in reversed(state):
            key = key * qn + row
        distances[key] = d
        counts[d] = counts.get(d, 0) + 1
    hist = DistanceHistogram(n, field.p, field.m, dict(sorted(counts.items())), order)
    return CayleyTable(n, field, distances, hist)


def bfs_histogram(n: int, field: FieldSpec, state_cap: int | None = None) -> DistanceHistogram:
    return bfs_table(n, field, state_cap).histogram


def distance_of(A: Matrix, table: CayleyTable) -> int:
    """Minimal number of row operations reducing A to I."""
    if A.n != table.n or A.field != table.field:
        raise KeyError(f"no BFS table for n={A.n}, {A.field!r}")
    try:
        return table.distances[encode(A)]
    except KeyError:
        raise ValueError("matrix is not invertible") from None


def load_histogram(path) -> DistanceHistogram:
    with open(path) as fh:
        return DistanceHistogram.from_json(json.load(fh))


def histogram_field(hist: DistanceHistogram) -> FieldSpec:
    return field_new(hist.p, hist.m)
