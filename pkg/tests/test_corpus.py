import random
from fractions import Fraction

import numpy as np
import pytest

from conftest import float_equivalent
from paramequiv.bounds import bound_report
from paramequiv.checker import check, check_exact
from paramequiv.circuit import arity_in, arity_out, is_integral, validate
from paramequiv.corpus import fixtures, mutate, random_axis, random_circuit, real_amplitude, conjugated_z
from paramequiv.cycmat import is_hermitian, is_unitary
from paramequiv.semantics import eval_exact, eval_float
from paramequiv.transform import integralize

FIXTURES = fixtures()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_verdicts_and_numbers(name):
    fx = FIXTURES[name]
    v = check(fx.left, fx.right, k=len(fx.params))
    assert v.kind == fx.expected
    report = v.bounds
    if "lambda" in fx.numbers:
        assert report.lambdas == fx.numbers["lambda"]
    if "d" in fx.numbers:
        assert report.total_degree == fx.numbers["d"]
    if "kappa_sum" in fx.numbers:
        assert report.kappa_sum_max == fx.numbers["kappa_sum"]
    if "evaluations" in fx.numbers:
        assert v.evaluations == fx.numbers["evaluations"]
    if "scaling" in fx.numbers:
        assert v.scaling == fx.numbers["scaling"]


@pytest.mark.parametrize("n", range(1, 7))
def test_relation_family_is_always_z(n):
    assert check_exact(conjugated_z(n), FIXTURES["conjugated_z3"].right).kind == "Equivalent"


def test_real_amplitude_flip_found_by_float_sampling():
    a, b = real_amplitude(3, 2), real_amplitude(3, 2, flip=4)
    assert (arity_in(a), arity_out(a)) == (3, 3)
    assert not float_equivalent(a, b, 6, points=50)
    assert float_equivalent(a, real_amplitude(3, 2), 6, points=50)


def test_random_axes_are_hermitian_unitary():
    rng = random.Random(0)
    for _ in range(200):
        m = random_axis(rng)
        assert is_hermitian(m) and is_unitary(m)


def test_random_circuits_validate_for_many_seeds():
    for seed in range(10_000):
        rng = random.Random(seed)
        qubits, depth, k = rng.randint(1, 3), rng.randint(1, 8), rng.randint(0, 3)
        c = random_circuit(seed, qubits, depth, k, rng.randint(0, 3), fractional=seed % 2 == 0)
        assert validate(c) == [], seed


def test_random_circuits_are_reproducible():
    assert random_circuit(42, 2, 6, 2, 3) == random_circuit(42, 2, 6, 2, 3)
    assert random_circuit(42, 2, 6, 2, 3) != random_circuit(43, 2, 6, 2, 3)


@pytest.mark.parametrize("seed", range(100))
def test_integralized_and_float_agreement(seed):
    c = random_circuit(seed, qubits=1 + seed % 3, depth=4, k=2, coeff_bound=3, fractional=True)
    i1, _, _ = integralize(c, c)
    assert is_integral(i1)
    rng = random.Random(seed)
    for _ in range(5):
        point = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(2))
        exact = eval_exact(c, point).to_complex()
        approx = eval_float(c, [float(q) * np.pi for q in point])
        assert np.max(np.abs(exact - approx)) < 1e-9


def test_mutation_changes_one_gate():
    c = random_circuit(3, 2, 6, 1, 2)
    m = mutate(c, 0)
    assert m != c
    assert (arity_in(m), arity_out(m)) == (arity_in(c), arity_out(c))
    assert validate(m) == []
    assert bound_report(c, m).lambdas
