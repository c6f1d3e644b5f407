from fractions import Fraction as F

import pytest

from ifsmeasure import IFSConfig, Moebius, make_context
from ifsmeasure.system import affine_system, sine_system

_criteria = []


def cantor(digits=64, weights=(F(1, 3), F(2, 3))):
    return affine_system([(F(1, 3), 0), (F(1, 3), F(2, 3))], weights, epsilon=F(1, 4),
                         precision=make_context(digits))


def moebius(digits=64):
    return IFSConfig((Moebius(0, 1, 1, 2), Moebius(0, 1, 1, 4)), (F(1, 2), F(1, 2)),
                     epsilon=F(1, 4), precision=make_context(digits))


def affine_pair(digits=64):
    return affine_system([(F(1, 3), 0), (F(1, 2), F(1, 2))], (F(1, 3), F(2, 3)),
                         q=(F(3, 4), F(1, 4)), epsilon=F(1, 4), precision=make_context(digits))


def sine(digits=64, p=(F(1, 3), F(2, 3)), q=None):
    return sine_system([(F(1, 6), F(1, 4)), (F(1, 3), F(2, 3))], p, q=q, epsilon=F(1, 10),
                       precision=make_context(digits))


@pytest.fixture
def cantor_ifs():
    return cantor()


@pytest.fixture
def moebius_ifs():
    return moebius()


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, ok, detail)``."""

    def record(number, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        _criteria.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_criteria, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
