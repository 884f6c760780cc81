import random
from fractions import Fraction

import pytest

from conftest import equal_rewrite, float_equivalent, float_gap
from paramequiv.checker import (
    AUTO_PROBABILITY,
    MAX_EVALS_ENV,
    Equivalent,
    NotEquivalent,
    ProbablyEquivalent,
    check,
    check_exact,
    check_phase,
    check_probabilistic,
    check_symbolic,
)
from paramequiv.circuit import (
    AffineForm,
    Constant,
    Rotation,
    builtin,
    rotation,
    scaled,
    seq,
)
from paramequiv.corpus import controlled_rz, cnot_decomposition, mutate, random_circuit, conjugated_z
from paramequiv.cycmat import CycMatrix
from paramequiv.errors import ArityMismatchError, CircuitValidationError, ResourceLimitError
from paramequiv.exactnum import ONE
from paramequiv.semantics import eval_exact

HALF = Fraction(1, 2)


def global_rotation(width, coeffs):
    return Rotation(CycMatrix.identity(2**width), AffineForm(tuple(coeffs)), axis_name="I" * width)


def assert_genuine_witness(verdict, c1, c2):
    assert isinstance(verdict, NotEquivalent)
    m1, m2 = eval_exact(c1, verdict.witness), eval_exact(c2, verdict.witness)
    assert m1 != m2
    assert m1[verdict.entry] == verdict.lhs and m2[verdict.entry] == verdict.rhs
    assert verdict.lhs != verdict.rhs
    assert float_gap(c1, c2, verdict.witness) > 1e-9


def test_motivating_identity():
    v = check_exact(controlled_rz(), cnot_decomposition())
    assert isinstance(v, Equivalent)
    assert v.evaluations == 5 and v.mode == "exact"


def test_mutated_decomposition_has_grid_witness():
    c1, c2 = controlled_rz(), cnot_decomposition(first_sign=-1)
    v = check_exact(c1, c2)
    assert_genuine_witness(v, c1, c2)
    assert v.witness[0] in {Fraction(4 * t, 5) for t in range(5)}


def test_relation_family_grid_size():
    v = check_exact(conjugated_z(3), builtin("Z"))
    assert isinstance(v, Equivalent) and v.evaluations == 13
    assert v.bounds.lambdas == (6,)


def test_fractional_pair_reports_original_coordinates():
    c1, c2 = controlled_rz((1,)), cnot_decomposition((HALF,), first_sign=-1)
    v = check_exact(c1, c2)
    assert v.scaling == (2,)
    assert_genuine_witness(v, c1, c2)
    assert isinstance(check_exact(controlled_rz((1,)), cnot_decomposition((HALF,))), Equivalent)


def test_parallel_scan_reports_the_same_witness():
    c1, c2 = controlled_rz(), cnot_decomposition(first_sign=-1)
    serial = check_exact(c1, c2, jobs=1)
    parallel = check_exact(c1, c2, jobs=3)
    assert serial.witness == parallel.witness and serial.evaluations == parallel.evaluations
    big1 = random_circuit(5, qubits=2, depth=6, k=2, coeff_bound=3)
    big2 = mutate(big1, 1)
    a, b = check_exact(big1, big2, jobs=1), check_exact(big1, big2, jobs=4)
    assert a.kind == b.kind
    if isinstance(a, NotEquivalent):
        assert a.witness == b.witness


def test_budget_and_environment_ceiling(monkeypatch):
    with pytest.raises(ResourceLimitError):
        check_exact(controlled_rz(), cnot_decomposition(), budget=4)
    monkeypatch.setenv(MAX_EVALS_ENV, "3")
    with pytest.raises(ResourceLimitError):
        check_exact(controlled_rz(), cnot_decomposition())
    monkeypatch.setenv(MAX_EVALS_ENV, "lots")
    with pytest.raises(ValueError):
        check_exact(controlled_rz(), cnot_decomposition())


def test_shape_and_validation_errors():
    with pytest.raises(ArityMismatchError):
        check_exact(builtin("CNOT"), builtin("X"))
    with pytest.raises(ArityMismatchError):
        check_probabilistic(builtin("CNOT"), builtin("X"))
    with pytest.raises(CircuitValidationError):
        check_exact(seq(builtin("CNOT"), builtin("X")), builtin("X"))


def test_probabilistic_equal_circuits_never_fail():
    for seed in range(200):
        v = check_probabilistic(controlled_rz(), cnot_decomposition(), Fraction(1, 10), seed)
        assert isinstance(v, ProbablyEquivalent)
        assert v.failure_bound <= Fraction(1, 10)


def test_probabilistic_false_positive_rate():
    c1, c2 = controlled_rz(), cnot_decomposition(first_sign=-1)
    misses = 0
    for seed in range(1000):
        v = check_probabilistic(c1, c2, Fraction(1, 10), seed)
        if isinstance(v, NotEquivalent):
            assert v.witness != ()
        else:
            misses += 1
    assert misses / 1000 <= Fraction(1, 10)


def test_probabilistic_samples_come_from_the_sample_set():
    c1, c2 = rotation("Z", [2]), rotation("Z", [-2])
    grid = {Fraction(t, 2) for t in range(8)}
    for seed in range(20):
        v = check_probabilistic(c1, c2, HALF, seed)
        assert v.bounds.total_degree == 4
        if isinstance(v, NotEquivalent):
            assert v.witness[0] in grid
        else:
            assert v.samples == 8


def test_probabilistic_trials_amplify():
    v = check_probabilistic(controlled_rz(), cnot_decomposition(), HALF, 0, trials=3)
    d = v.bounds.total_degree
    assert v.failure_bound == Fraction(d, v.samples) ** 3 and v.evaluations == 3
    with pytest.raises(ValueError):
        check_probabilistic(controlled_rz(), cnot_decomposition(), Fraction(3, 2), 0)
    with pytest.raises(ValueError):
        check_probabilistic(controlled_rz(), cnot_decomposition(), HALF, 0, trials=0)


def test_probabilistic_seed_is_reproducible():
    c1, c2 = random_circuit(3, 2, 5, 2, 2), random_circuit(4, 2, 5, 2, 2)
    a = check_probabilistic(c1, c2, Fraction(1, 100), 17)
    b = check_probabilistic(c1, c2, Fraction(1, 100), 17)
    assert a == b


def test_phase_examples():
    c1 = rotation("Z", [1])
    c2 = seq(rotation("Z", [1]), global_rotation(1, [2]))
    v = check_phase(c1, c2)
    assert isinstance(v, Equivalent) and v.modulo_phase
    assert v.phase.form.coeffs == (-2,) and v.phase.scalar == ONE
    assert isinstance(check_exact(c1, c2), NotEquivalent)

    v = check_phase(builtin("X"), scaled(-1, builtin("X")))
    assert isinstance(v, Equivalent) and v.phase.scalar == -ONE

    v = check_phase(builtin("X"), builtin("Z"))
    assert isinstance(v, NotEquivalent) and v.phase.is_trivial


def test_phase_witness_is_checked_against_the_augmented_circuit():
    c1 = seq(rotation("Z", [1]), global_rotation(1, [1]))
    c2 = rotation("X", [1])
    v = check_phase(c1, c2)
    assert isinstance(v, NotEquivalent)


def test_phase_probabilistic_mode():
    c1 = rotation("Z", [1])
    c2 = scaled(-1, seq(rotation("Z", [1]), global_rotation(1, [-2])))
    v = check_phase(c1, c2, mode="prob", p=Fraction(1, 10), seed=3)
    assert isinstance(v, ProbablyEquivalent) and v.phase.scalar == -ONE


def test_phase_warns_on_non_injective_constants():
    bra = Constant(CycMatrix.from_rows([[1, 0]]))
    proj = seq(bra, builtin("KET0"))
    v = check_phase(proj, proj)
    assert isinstance(v, Equivalent) and v.warnings
    assert not check_phase(controlled_rz(), cnot_decomposition()).warnings


def test_symbolic_mode():
    assert isinstance(check_symbolic(controlled_rz(), cnot_decomposition()), Equivalent)
    c1, c2 = controlled_rz(), cnot_decomposition(first_sign=-1)
    v = check_symbolic(c1, c2)
    assert v.mode == "symbolic"
    assert_genuine_witness(v, c1, c2)
    assert v.witness == check_exact(c1, c2).witness


def test_auto_mode_selection():
    assert check(controlled_rz(), cnot_decomposition()).mode == "exact"
    wide = seq(rotation("Z", [20, 20, 20]), rotation("X", [1, -1, 2]))
    v = check(wide, wide)
    assert v.bounds.grid_product > 10**4
    assert isinstance(v, ProbablyEquivalent)
    assert v.mode == "prob"
    assert v.failure_bound <= AUTO_PROBABILITY
    with pytest.raises(ValueError):
        check(controlled_rz(), cnot_decomposition(), mode="guess")


def agreement_pairs():
    rng = random.Random(2024)
    pairs = []
    for seed in range(24):
        qubits = 1 + seed % 2
        c = random_circuit(seed, qubits=qubits, depth=4, k=2, coeff_bound=1 + seed % 3)
        kind = seed % 3
        if kind == 0:
            pairs.append((c, equal_rewrite(c, rng)))
        elif kind == 1:
            pairs.append((c, mutate(c, seed)))
        else:
            pairs.append((c, random_circuit(seed + 300, qubits=qubits, depth=4, k=2, coeff_bound=2)))
    return pairs


@pytest.mark.parametrize("idx", range(24))
def test_modes_agree_with_float_oracle(idx):
    c1, c2 = agreement_pairs()[idx]
    exact = check_exact(c1, c2, k=2)
    symbolic = check_symbolic(c1, c2, k=2)
    oracle = float_equivalent(c1, c2, 2, points=1000, seed=idx)
    assert isinstance(exact, Equivalent) == isinstance(symbolic, Equivalent) == oracle
    if isinstance(exact, NotEquivalent):
        assert_genuine_witness(exact, c1, c2)
        assert exact.witness == symbolic.witness
        prob = check_probabilistic(c1, c2, Fraction(1, 100), idx, k=2)
        assert prob.kind in ("NotEquivalent", "ProbablyEquivalent")
    else:
        for seed in range(20):
            assert isinstance(check_probabilistic(c1, c2, Fraction(1, 100), seed, k=2), ProbablyEquivalent)
