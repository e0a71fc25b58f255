import random

import pytest

from ffreduce.field import field_new
from ffreduce.matrix import Matrix, elementary_matrix
from ffreduce.ops import AddMul, Scale, Swap

SMALL_ORDERS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1), (2, 4)]


@pytest.fixture
def rng():
    return random.Random(20261016)


def random_op(rng, n, field):
    """A uniformly chosen kind of non-degenerate op."""
    q = field.q
    kinds = ["swap", "add"] + (["scale"] if q > 2 else [])
    kind = rng.choice(kinds)
    i, j = rng.sample(range(n), 2)
    if kind == "swap":
        return Swap(i, j)
    if kind == "scale":
        return Scale(i, rng.randrange(2, q))
    return AddMul(i, j, rng.randrange(1, q))


def random_word_ops(rng, n, field, length):
    return [random_op(rng, n, field) for _ in range(length)]


def product_matrix(ops, n, field):
    """Oracle: explicit product of elementary matrices, left to right."""
    M = Matrix.identity(n, field)
    for op in ops:
        M = M @ elementary_matrix(op, n, field)
    return M


def random_full_matrix(rng, n, field):
    return Matrix([[rng.randrange(field.q) for _ in range(n)] for _ in range(n)], field)


@pytest.fixture
def gf():
    return field_new


# -- acceptance reporting: one line per criterion in the terminal summary ----------

_CRITERIA: list = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA.append((marker.args[0], marker.args[1], rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, duration in sorted(_CRITERIA):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  ({duration:6.2f}s)  {title}")
