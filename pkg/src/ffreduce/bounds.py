"""Counting bounds for row-operation complexity over GF(q).

All logarithms are to base q unless stated.  ``counting_bound_log(n, q, k)``
is the exponent of q in the upper bound on how many distinct matrices are
products of at most k elementary matrices; ``theorem1_kmax`` is the k at
which that bound falls to an alpha fraction of the lower estimate of
|GL(n, q)|.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .reduce import default_stripe_width, striped_bound

def log_q(x: float, q: int) -> float:
    return math.log(x) / math.log(q)


def gl_order(n: int, q: int) -> int:
    """|GL(n, q)| = prod_{k=0}^{n-1} (q^n - q^k), exact."""
    if n < 1:
        raise ValueError("n must be >= 1")
    qn = q ** n
    out = 1
    for k in range(n):
        out *= qn - q ** k
    return out


def gl_order_log_q(n: int, q: int) -> float:
    """log_q |GL(n, q)| = n^2 + sum_{r=1}^{n} log_q(1 - q^-r)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lnq = math.log(q)
    total = 0.0
    # terms below 1e-300 are exactly zero in double precision anyway
    for r in range(1, min(n, int(1000 / math.log10(q)) + 2) + 1):
        total += math.log1p(-q ** -float(r))
    return n * n + total / lnq


def gl_lower_estimate_log_q(n: int, q: int) -> float:
    """n^2 - log_q(e)/(q-1): the e^{-1/(q-1)} estimate of |GL(n,q)| / q^{n^2}.

    For display only.  The estimate relies on log(1-x) >= -x, which is
    false for 0 < x < 1; at q = 2 it exceeds the true order.  Use
    :func:`gl_order` for anything that matters.
    """
    return n * n - log_q(math.e, q) / (q - 1)


def counting_bound_log(n: int, q: int, k: float) -> float:
    """Exponent of q bounding the number of products of <= k elementary matrices."""
    if k < 0:
        raise ValueError("k must be >= 0")
    ln = log_q(n, q)
    return (k + 2 * n) * ln + (3 * k + n) * log_q(2, q) + n + k + k * log_q(math.e, q)


def theorem1_kmax(n: int, q: int, alpha: float) -> float:
    """Operation budget below which at most an alpha fraction of GL(n,q) is reachable.

    Negative values mean the statement is vacuous at this n.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if n < 1:
        raise ValueError("n must be >= 1")
    ln = log_q(n, q)
    numer = (n * n - 2 * n * ln - n - n * log_q(2, q)
             - log_q(math.e, q) / (q - 1) - log_q(1 / alpha, q))
    denom = ln + log_q(8 * q * math.e, q)
    return numer / denom


def ball_within_bound(ball_size: int, n: int, q: int, k: int) -> bool:
    """ball_size <= q ** counting_bound_log(n, q, k)."""
    return math.log(ball_size) <= counting_bound_log(n, q, k) * math.log(q)


@dataclass(frozen=True)
class ComponentCounts:
    """log_q counts contributed by each stage of the counting argument.

    ``permutation + scales + compositions + per_block + collision`` is
    exactly ``counting_bound_log``.  ``permutation_exact`` and
    ``scales_exact`` are the unrelaxed counts log_q(n!) and
    log_q(2^n (q-1)^n), shown for comparison.
    """

    permutation: float
    permutation_exact: float
    scales: float
    scales_exact: float
    compositions: float
    per_block: float
    collision: float

    @property
    def total(self) -> float:
        return (self.permutation + self.scales + self.compositions
                + self.per_block + self.collision)


def component_counts(n: int, q: int, k: int) -> ComponentCounts:
    ln, l2 = log_q(n, q), log_q(2, q)
    return ComponentCounts(
        permutation=n * ln,
        permutation_exact=math.lgamma(n + 1) / math.log(q),
        scales=n * l2 + n,
        scales_exact=n * l2 + n * log_q(q - 1, q),
        compositions=k * l2,
        per_block=n * ln + k * ln + 2 * k * l2 + k,
        collision=k * log_q(math.e, q),
    )


@dataclass(frozen=True)
class AsymptoteRow:
    n: int
    n_squared: int
    n2_over_log: float
    kmax: float
    gj_bound: int
    striped_width: int
    striped_bound: int
    kmax_ratio: float
    log_gl_order: float
    approx_gl_lower_log: float

    def as_dict(self) -> dict:
        return asdict(self)


ASYMPTOTE_COLUMNS = [
    "n", "n_squared", "n2_over_log", "kmax", "gj_bound", "striped_width",
    "striped_bound", "kmax_ratio", "log_gl_order", "approx_gl_lower_log",
]


def asymptote_table(n_list, q: int, alpha: float) -> list[AsymptoteRow]:
    """One row per n comparing the lower budget with both algorithms' budgets.

    ``kmax_ratio`` is kmax * log_q(n) / n^2.  ``approx_gl_lower_log`` is the
    flagged display estimate from :func:`gl_lower_estimate_log_q`.
    """
    rows = []
    for n in n_list:
        ln = log_q(n, q)
        kmax = theorem1_kmax(n, q, alpha)
        w = default_stripe_width(n, q)
        rows.append(AsymptoteRow(
            n=n,
            n_squared=n * n,
            n2_over_log=n * n / ln if ln > 0 else math.inf,
            kmax=kmax,
            gj_bound=n * n,
            striped_width=w,
            striped_bound=striped_bound(n, q, w),
            kmax_ratio=kmax * ln / (n * n),
            log_gl_order=gl_order_log_q(n, q),
            approx_gl_lower_log=gl_lower_estimate_log_q(n, q),
        ))
    return rows
