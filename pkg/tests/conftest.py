import random
from fractions import Fraction

import mpmath as mp
import pytest

from starklab.numerics import PrecisionCtx
from starklab.quadfield import FieldCtx, QuadElem, QuadIdeal
from starklab.pseudolattice import Pseudolattice

SQUAREFREE_50 = [d for d in range(2, 51)
                 if all(d % (p * p) for p in range(2, 8))]


@pytest.fixture(scope="session")
def ctx128():
    return PrecisionCtx(work_bits=128, target_abs_err=1e-30)


@pytest.fixture(scope="session")
def ctx192():
    return PrecisionCtx(work_bits=192, target_abs_err=1e-40)


@pytest.fixture(scope="session")
def F5():
    return FieldCtx(5)


@pytest.fixture(scope="session")
def p11(F5):
    return QuadIdeal.from_generators(F5, [11, F5.omega + 3])


def random_elem(rng: random.Random, D: int, span: int = 6) -> QuadElem:
    return QuadElem(
        D,
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
        Fraction(rng.randint(-span, span), rng.randint(1, 4)),
    )


def random_pseudolattice(rng: random.Random, D: int | None = None) -> Pseudolattice:
    D = D or rng.choice(SQUAREFREE_50)
    F = FieldCtx(D)
    while True:
        l1 = random_elem(rng, D)
        l2 = random_elem(rng, D)
        try:
            return Pseudolattice(F, l1, l2)
        except (ValueError, ZeroDivisionError):
            continue


def assert_close(a, b, tol, label=""):
    gap = abs(mp.mpf(abs(a - b)))
    assert gap < tol, "%s: |%s - %s| = %s >= %s" % (label, a, b, gap, tol)


# Collected verdict lines from the end-to-end criteria; echoed in the final
# terminal summary so they are visible even under output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
