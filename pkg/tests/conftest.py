"""Shared oracles and generators for the test suites."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from paramequiv.circuit import AffineForm, Rotation, arity_out, builtin, on_wire, rotation, seq
from paramequiv.cycmat import CycMatrix
from paramequiv.exactnum import Cyclotomic, zeta
from paramequiv.semantics import eval_float

SMALL_ORDERS = (1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 20, 24)


def random_rational(rng: random.Random, bound: int = 5, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_cyclotomic(rng: random.Random, orders=SMALL_ORDERS, terms: int = 3) -> Cyclotomic:
    """Random sum of a few rational multiples of roots of unity."""
    n = rng.choice(orders)
    out = Cyclotomic(0)
    for _ in range(rng.randint(1, terms)):
        out = out + zeta(n) ** rng.randrange(n) * random_rational(rng)
    return out


def random_nonzero(rng: random.Random, orders=SMALL_ORDERS) -> Cyclotomic:
    while True:
        a = random_cyclotomic(rng, orders)
        if a:
            return a


def float_equivalent(c1, c2, k: int, points: int = 1000, seed: int = 0, tol: float = 1e-9) -> bool:
    """Dense floating-point sampling oracle: True when no sampled point differs by more than ``tol``."""
    rng = np.random.default_rng(seed)
    for _ in range(points):
        theta = rng.uniform(-4 * np.pi, 4 * np.pi, size=k)
        if np.max(np.abs(eval_float(c1, theta) - eval_float(c2, theta))) > tol:
            return False
    return True


def float_gap(c1, c2, point) -> float:
    """Largest entrywise difference at ``theta_j = point[j]*pi``."""
    theta = [float(q) * np.pi for q in point]
    return float(np.max(np.abs(eval_float(c1, theta) - eval_float(c2, theta))))


def equal_rewrite(c, rng: random.Random, k: int = 2):
    """A syntactically different circuit with the same semantics."""
    n = arity_out(c)
    pick = rng.randrange(4)
    if pick == 0:
        x = on_wire(builtin("X"), rng.randrange(n), n)
        return seq(c, x, x)
    if pick == 1:
        h = on_wire(builtin("H"), rng.randrange(n), n)
        return seq(h, h, c)
    if pick == 2:
        zero = Rotation(CycMatrix.identity(2**n), AffineForm((0,) * k), axis_name="I" * n)
        return seq(c, zero)
    coeffs = [Fraction(rng.randint(-2, 2), rng.choice((1, 2))) for _ in range(k)]
    wire = rng.randrange(n)
    there = on_wire(rotation("Y", coeffs), wire, n)
    back = on_wire(rotation("Y", [-a for a in coeffs]), wire, n)
    return seq(there, back, c)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance summary")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
