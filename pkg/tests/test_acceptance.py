"""Exit criteria, one test per criterion, at the stated tolerances.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import itertools
import math
import random
import time
from collections import Counter

import pytest

from ffreduce.bounds import counting_bound_log, gl_order, theorem1_kmax
from ffreduce.cayley import bfs_table
from ffreduce.elemword import Word, canonicalize, eval_word, is_canonical, scale_commute, swap_conjugate
from ffreduce.field import field_from_order
from ffreduce.matrix import Matrix, decode, elementary_matrix, encode, random_invertible
from ffreduce.ops import AddMul, Scale, Swap
from ffreduce.reduce import default_stripe_width, gauss_jordan, striped_bound, striped_eliminate

from conftest import product_matrix, random_word_ops

GROUPS = {(2, 2): 6, (2, 3): 48, (3, 2): 168, (2, 4): 180, (2, 5): 480, (4, 2): 20160}

_tables: dict = {}


def table(n, q):
    if (n, q) not in _tables:
        _tables[n, q] = bfs_table(n, field_from_order(q))
    return _tables[n, q]


@pytest.mark.acceptance(1, "BFS totals equal |GL(n,q)| exactly, each under 10 s")
def test_criterion_01_group_totals():
    for (n, q), expected in GROUPS.items():
        t0 = time.perf_counter()
        t = table(n, q)
        elapsed = time.perf_counter() - t0
        total = sum(t.histogram.counts.values())
        assert total == expected == gl_order(n, q), (n, q, total)
        assert elapsed < 10, (n, q, elapsed)


@pytest.mark.acceptance(2, "GL(2,2) histogram {0:1, 1:3, 2:2}, diameter 2")
def test_criterion_02_gl22_histogram():
    h = table(2, 2).histogram
    assert h.counts == {0: 1, 1: 3, 2: 2}
    assert h.diameter == 2


@pytest.mark.acceptance(3, "ball_sizes[k] <= q^counting_bound_log(n,q,k), zero violations")
def test_criterion_03_ball_domination():
    violations = []
    for n, q in GROUPS:
        h = table(n, q).histogram
        for k, ball in enumerate(h.ball_sizes):
            # q**floor(x) <= q**x, so this integer comparison is exact and sufficient
            if not ball <= q ** math.floor(counting_bound_log(n, q, k)):
                violations.append((n, q, k, ball))
    assert violations == []


@pytest.mark.acceptance(4, "counting_bound_log(kmax) identity to 1e-9; kmax(100,2,0.5) = 700.68 +- 0.01")
def test_criterion_04_theorem_consistency():
    for n in (10, 10 ** 2, 10 ** 3, 10 ** 4):
        for q in (2, 3, 4, 5, 8, 9):
            for alpha in (0.1, 0.5, 0.9):
                k = theorem1_kmax(n, q, alpha)
                target = n * n - math.log(math.e, q) / (q - 1) - math.log(1 / alpha, q)
                # the linear identity holds for negative k too; evaluate it directly
                lhs = ((k + 2 * n) * math.log(n, q) + (3 * k + n) * math.log(2, q)
                       + n + k + k * math.log(math.e, q))
                assert abs(lhs - target) <= 1e-9 * max(1.0, abs(target)), (n, q, alpha)
                if k >= 0:
                    assert abs(counting_bound_log(n, q, k) - target) <= 1e-9 * max(1.0, abs(target))
    assert abs(theorem1_kmax(100, 2, 0.5) - 700.68) <= 0.01


@pytest.mark.acceptance(5, "1000 random matrices per (n,q): both algorithms reduce to I within bounds, < 60 s")
def test_criterion_05_reduction_correctness():
    t0 = time.perf_counter()
    failures = []
    for n, q in [(8, 2), (8, 3), (16, 2), (16, 4)]:
        F = field_from_order(q)
        rng = random.Random(f"criterion5:{n}:{q}")
        for t in range(1000):
            A = random_invertible(n, F, rng)
            gj = gauss_jordan(A)
            if not (gj.op_count <= n * n and eval_word(gj.word, A).is_identity()):
                failures.append(("gj", n, q, t))
            # default width is 1 at these sizes; cycle widths so wider stripes are exercised too
            w = default_stripe_width(n, q) if t % 5 == 0 else 1 + t % 5
            st = striped_eliminate(A, w)
            if not (st.op_count <= striped_bound(n, q, w) and eval_word(st.word, A).is_identity()):
                failures.append(("striped", n, q, t, w))
    elapsed = time.perf_counter() - t0
    assert failures == []
    assert elapsed < 60, elapsed


@pytest.mark.acceptance(6, "q=2: striped mean <= 0.8x GJ at n=1024, <= 0.6x at n=2048, <= 1.5 n^2/w, < 120 s")
def test_criterion_06_performance_crossover():
    t0 = time.perf_counter()
    F = field_from_order(2)
    for n, ratio in [(1024, 0.8), (2048, 0.6)]:
        w = default_stripe_width(n, 2)
        gj_counts, st_counts = [], []
        for t in range(5):
            A = random_invertible(n, F, random.Random(f"criterion6:{n}:{t}"))
            gj_counts.append(gauss_jordan(A).op_count)
            res = striped_eliminate(A)
            assert res.stripe_width == w
            st_counts.append(res.op_count)
        gj_mean, st_mean = sum(gj_counts) / 5, sum(st_counts) / 5
        print(f"n={n} w={w} gj_mean={gj_mean:.0f} striped_mean={st_mean:.0f} "
              f"ratio={st_mean / gj_mean:.3f} vs n^2/w={n * n / w:.0f}")
        assert st_mean <= ratio * gj_mean
        assert st_mean <= 1.5 * n * n / w
    elapsed = time.perf_counter() - t0
    assert elapsed < 120, elapsed


@pytest.mark.acceptance(7, "BFS distance <= striped and <= GJ op counts over GL(2,2), GL(2,3), GL(3,2)")
def test_criterion_07_optimality_sandwich():
    violations = []
    for n, q in [(2, 2), (2, 3), (3, 2)]:
        F = field_from_order(q)
        t = table(n, q)
        assert len(t.distances) == gl_order(n, q)
        for key, d in t.distances.items():
            A = decode(key, n, F)
            if d > gauss_jordan(A).op_count:
                violations.append(("gj", n, q, key))
            for w in range(1, n + 1):
                if d > striped_eliminate(A, w).op_count:
                    violations.append(("striped", n, q, key, w))
    assert violations == []


@pytest.mark.acceptance(8, "canonicalizer: product, length, is_canonical, idempotence; zero violations, < 30 s")
def test_criterion_08_canonicalizer():
    t0 = time.perf_counter()
    F2 = field_from_order(2)
    gens = [Swap(0, 1), AddMul(0, 1, 1), AddMul(1, 0, 1)]
    words = [ops for k in range(1, 4) for ops in itertools.product(gens, repeat=k)]
    assert len(words) == 39
    bad = []
    for ops in words:
        cw = canonicalize(Word(ops), F2)
        cw_ops = cw.to_word().ops
        if product_matrix(cw_ops, 2, F2) != product_matrix(ops, 2, F2):
            bad.append(("product", ops))
        if len(cw) > len(ops) or not is_canonical(cw) or canonicalize(cw.to_word(), F2) != cw:
            bad.append(("shape", ops))

    F3 = field_from_order(3)
    rng = random.Random("criterion8")
    I = Matrix.identity(5, F3)
    for _ in range(10_000):
        w = Word(tuple(random_word_ops(rng, 5, F3, 50)))
        cw = canonicalize(w, F3)
        if eval_word(cw, I) != eval_word(w, I):
            bad.append(("product", w))
        if len(cw) > len(w) or not is_canonical(cw) or canonicalize(cw.to_word(), F3) != cw:
            bad.append(("shape", w))
    elapsed = time.perf_counter() - t0
    assert bad == []
    assert elapsed < 30, elapsed


def _raw_scale(n, F, i, lam):
    """Diagonal elementary matrix, allowing lam = 1 (needed over GF(2))."""
    return Matrix([[lam if r == c == i else int(r == c) for c in range(n)] for r in range(n)], F)


@pytest.mark.acceptance(9, "rewrite rules (1)-(4) are exact matrix identities, 10^4 draws per rule per q")
def test_criterion_09_rule_identities():
    violations = []
    for q in (2, 3, 4, 5):
        F = field_from_order(q)
        rng = random.Random(f"criterion9:{q}")
        for _ in range(10_000):
            n = rng.randint(2, 4)
            i, j = rng.sample(range(n), 2)
            lam, mu = rng.randrange(1, q), rng.randrange(1, q)
            S = _raw_scale(n, F, i, lam)
            # (1) E_ij(mu) E_i(lam) = E_i(lam) E_ij(lam mu)
            lhs = elementary_matrix(AddMul(i, j, mu), n, F) @ S
            coef = scale_commute(AddMul(i, j, mu), Scale(i, lam), F).lam if lam != 1 else mu
            if coef != F.mul(lam, mu) or lhs != S @ elementary_matrix(AddMul(i, j, coef), n, F):
                violations.append((1, q, n, i, j, lam, mu))
            # (2) E_ji(mu) E_i(lam) = E_i(lam) E_ji(mu / lam)
            lhs = elementary_matrix(AddMul(j, i, mu), n, F) @ S
            coef = scale_commute(AddMul(j, i, mu), Scale(i, lam), F).lam if lam != 1 else mu
            if coef != F.div(mu, lam) or lhs != S @ elementary_matrix(AddMul(j, i, coef), n, F):
                violations.append((2, q, n, i, j, lam, mu))
            # (3) E_kl(lam) E_ij = E_ij E_{pi(k) pi(l)}(lam)
            k, l = rng.sample(range(n), 2)
            sw = Swap(i, j)
            P = elementary_matrix(sw, n, F)
            x = AddMul(k, l, lam)
            if elementary_matrix(x, n, F) @ P != P @ elementary_matrix(swap_conjugate(x, sw), n, F):
                violations.append((3, q, n, i, j, k, l, lam))
            # (4) E_k(lam) E_ij = E_ij E_{pi(k)}(lam)
            k = rng.randrange(n)
            pk = j if k == i else i if k == j else k
            rhs_op = swap_conjugate(Scale(k, lam), sw) if lam != 1 else None
            if rhs_op is not None and rhs_op.i != pk:
                violations.append((4, q, n, i, j, k, lam))
            if _raw_scale(n, F, k, lam) @ P != P @ _raw_scale(n, F, pk, lam):
                violations.append((4, q, n, i, j, k, lam))
    assert violations == []


@pytest.mark.acceptance(10, "6000 samples from GL(2,2): every element count in [850, 1150]")
def test_criterion_10_sampling_uniformity():
    F = field_from_order(2)
    rng = random.Random(10)
    counts = Counter(encode(random_invertible(2, F, rng)) for _ in range(6000))
    assert len(counts) == 6
    assert all(850 <= c <= 1150 for c in counts.values()), counts
