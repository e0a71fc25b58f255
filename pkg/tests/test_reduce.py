import math
import random

import pytest

from ffreduce.elemword import Word, canonicalize, eval_word
from ffreduce.field import field_new
from ffreduce.matrix import Matrix, SingularMatrixError, random_invertible
from ffreduce.ops import AddMul, Scale, Swap
from ffreduce.reduce import (ReductionResult, default_stripe_width, gauss_jordan, gray_code,
                             invert_via_word, striped_bound, striped_eliminate,
                             verify_reduction)

GF2, GF3 = field_new(2), field_new(3)


def test_gj_identity():
    res = gauss_jordan(Matrix.identity(5, GF3))
    assert res.op_count == 0 and len(res.word) == 0


def test_gj_single_swap():
    A = Matrix([[0, 1], [1, 0]], GF2)
    res = gauss_jordan(A)
    assert res.op_count <= 4
    assert verify_reduction(A, res)


def test_gj_random_gl83():
    rng = random.Random(5)
    for _ in range(1000):
        A = random_invertible(8, GF3, rng)
        res = gauss_jordan(A)
        assert res.op_count <= 64
        assert eval_word(res.word, A).is_identity()


def test_gj_per_column_pattern():
    # a column needing both a swap and a scale still costs at most n ops
    A = Matrix([[0, 1, 0], [2, 0, 0], [1, 0, 1]], GF3)
    res = gauss_jordan(A)
    assert verify_reduction(A, res)
    ops = res.application_order()
    assert ops[0] == Swap(0, 1) and ops[1] == Scale(0, 2)
    assert res.op_count <= 9


def test_gj_singular_reports_column():
    A = Matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]], GF2)
    with pytest.raises(SingularMatrixError, match="pivot column 1") as exc:
        gauss_jordan(A)
    assert exc.value.column == 1
    with pytest.raises(SingularMatrixError):
        gauss_jordan(A, packed=False)


@pytest.mark.parametrize("n,q,w", [(1024, 2, 3), (4, 2, 1), (2048, 2, 4), (2, 2, 1), (1, 2, 1)])
def test_default_stripe_width(n, q, w):
    assert default_stripe_width(n, q) == w


def test_default_width_formula():
    for n in [16, 100, 1000, 5000, 10 ** 5]:
        for q in [2, 3, 4]:
            lq = math.log(n, q)
            expected = max(1, min(n, math.floor(lq - 2 * math.log(max(lq, q), q))))
            assert default_stripe_width(n, q) == expected
            assert q ** default_stripe_width(n, q) <= n


def test_gray_code():
    for q, d in [(2, 0), (2, 3), (3, 2), (4, 2), (5, 1)]:
        seq = gray_code(q, d)
        assert len(seq) == q ** d == len(set(seq))
        assert seq[0] == (0,) * d
        for a, b in zip(seq, seq[1:]):
            assert sum(x != y for x, y in zip(a, b)) == 1


@pytest.mark.parametrize("w", [1, 2, 3, 5])
def test_striped_identity(w):
    assert striped_eliminate(Matrix.identity(5, GF3), w).op_count == 0


@pytest.mark.parametrize("p,m,n", [(2, 1, 12), (3, 1, 9), (2, 2, 8), (5, 1, 7), (3, 2, 5)])
def test_striped_random(p, m, n):
    F = field_new(p, m)
    rng = random.Random(n * 31 + p)
    for w in range(1, n + 1):
        for _ in range(15):
            A = random_invertible(n, F, rng)
            res = striped_eliminate(A, w)
            assert res.stripe_width == w
            assert res.op_count <= striped_bound(n, F.q, w)
            assert eval_word(res.word, A).is_identity()


def test_striped_width_one_near_gj():
    rng = random.Random(1)
    for q in (2, 3, 4):
        F = field_new(2, 2) if q == 4 else field_new(q)
        for _ in range(50):
            A = random_invertible(10, F, rng)
            assert striped_eliminate(A, 1).op_count <= 100 + 30


def test_striped_large_gf2():
    A = random_invertible(1024, GF2, 11)
    res = striped_eliminate(A, 3)
    assert res.op_count <= -(-1024 // 3) * (1024 + 16 + 27 + 3)
    assert eval_word(res.word, A).is_identity()


def test_striped_errors():
    with pytest.raises(ValueError):
        striped_eliminate(Matrix.identity(3, GF2), 4)
    with pytest.raises(ValueError):
        striped_eliminate(Matrix.identity(3, GF2), 0)
    with pytest.raises(SingularMatrixError):
        striped_eliminate(Matrix([[1, 2], [2, 1]], GF3), 2)
    with pytest.raises(SingularMatrixError):
        striped_eliminate(Matrix([[1, 1, 0], [0, 1, 1], [1, 0, 1]], GF2), 2)


@pytest.mark.parametrize("algo", [gauss_jordan, striped_eliminate])
def test_packed_and_generic_paths_emit_same_word(algo):
    rng = random.Random(8)
    for _ in range(100):
        n = rng.randint(2, 12)
        A = random_invertible(n, GF2, rng)
        assert algo(A, packed=True).word == algo(A, packed=False).word


def test_verify_and_invert():
    I = Matrix.identity(3, GF3)
    assert verify_reduction(I, ReductionResult(Word(), 0, "gj"))
    rng = random.Random(2)
    for _ in range(1000):
        A = random_invertible(4, GF3, rng)
        res = gauss_jordan(A)
        assert verify_reduction(A, res)
        Ainv = invert_via_word(A, res)
        assert (A @ Ainv).is_identity() and (Ainv @ A).is_identity()


def test_corrupted_word_is_diagnosed():
    A = random_invertible(5, GF3, 4)
    res = gauss_jordan(A)
    ops = list(res.application_order())
    k = next(i for i, op in enumerate(ops) if isinstance(op, AddMul))
    ops[k] = AddMul(ops[k].src, ops[k].dst, 3 - ops[k].lam)  # flip 1 <-> 2
    bad = ReductionResult(Word.from_application(ops), len(ops), "gj")
    report = verify_reduction(A, bad)
    assert not report
    assert report.first_divergence == k
    assert f"op {k}" in report.message
    with pytest.raises(ValueError):
        invert_via_word(A, bad)


def test_canonicalizing_reduction_words():
    rng = random.Random(3)
    F = field_new(5)
    for _ in range(100):
        A = random_invertible(5, F, rng)
        for res in (gauss_jordan(A), striped_eliminate(A, 2)):
            cw = canonicalize(res.word, F)
            assert len(cw) <= res.op_count
            assert eval_word(cw, A).is_identity()
