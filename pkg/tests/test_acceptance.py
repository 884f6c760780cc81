"""End-to-end acceptance suite: one PASS/FAIL line per criterion.

Lines are printed as each check finishes and repeated in the pytest terminal
summary, so ``pytest tests/test_acceptance.py`` shows them without ``-s``.
"""

import json
import math
import random
import time
from fractions import Fraction

from scipy.stats import binom

from conftest import ACCEPTANCE_LINES, equal_rewrite, float_equivalent, float_gap, random_cyclotomic, random_nonzero
from paramequiv.bounds import kappa, sample_set, sample_size
from paramequiv.checker import Equivalent, NotEquivalent, ProbablyEquivalent, check, check_exact, check_phase
from paramequiv.checker import check_probabilistic
from paramequiv.circuit import (
    AffineForm,
    Rotation,
    builtin,
    coeff_seq,
    is_integral,
    on_wire,
    rotation,
    scaled,
    seq,
)
from paramequiv.cli import main
from paramequiv.corpus import controlled_rz, cnot_decomposition, fixture_path, mutate, random_circuit, conjugated_z, parallel_rx
from paramequiv.cycmat import CycMatrix
from paramequiv.exactnum import I, ONE, ZERO, cos_pi, exp_i_pi, sin_pi, zeta
from paramequiv.polyabs import degrees, poly_semantics, substitution_point
from paramequiv.semantics import eval_exact
from paramequiv.transform import integralize

TOTAL = 10


def report(number, title, ok, detail):
    line = f"acceptance {number:>2}/{TOTAL} {title}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def global_rotation(width, coeffs):
    return Rotation(CycMatrix.identity(2**width), AffineForm(tuple(coeffs)), axis_name="I" * width)


def test_motivating_identity():
    start = time.perf_counter()
    v = check(controlled_rz(), cnot_decomposition())
    elapsed = time.perf_counter() - start
    ok = isinstance(v, Equivalent) and v.mode == "exact" and v.evaluations == 5 and elapsed < 1.0
    report(1, "motivating identity", ok, f"{v.kind}, {v.evaluations} evaluations, {elapsed:.3f} s")


def decomposition_pair(rng):
    k = rng.randint(1, 2)
    while True:
        a = tuple(rng.randint(-2, 2) for _ in range(k))
        if any(a):
            break
    return controlled_rz(tuple(2 * x for x in a)), cnot_decomposition(a), k


def test_cutoff_soundness_by_mutation():
    rng = random.Random(7)
    start = time.perf_counter()
    found, false_equivalent, benign, attempts = 0, 0, 0, 0
    while found < 50 and attempts < 500:
        attempts += 1
        lhs, rhs, k = decomposition_pair(rng)
        if rng.random() < 0.5:
            lhs = mutate(lhs, rng.randrange(10**6))
        else:
            rhs = mutate(rhs, rng.randrange(10**6))
        v = check_exact(lhs, rhs, k=k)
        if isinstance(v, NotEquivalent):
            m1, m2 = eval_exact(lhs, v.witness), eval_exact(rhs, v.witness)
            assert m1 != m2 and m1[v.entry] == v.lhs and m2[v.entry] == v.rhs
            assert float_gap(lhs, rhs, v.witness) > 1e-9
            found += 1
        elif float_equivalent(lhs, rhs, k, points=1000, seed=attempts):
            benign += 1
        else:
            false_equivalent += 1
    elapsed = time.perf_counter() - start
    ok = found == 50 and false_equivalent == 0 and elapsed < 30
    report(
        2,
        "cutoff soundness by mutation",
        ok,
        f"{found} witnesses verified, {false_equivalent} false Equivalent, "
        f"{benign} semantics-preserving mutations skipped, {elapsed:.1f} s",
    )


def test_bound_numbers(capsys):
    code = main(["info", str(fixture_path("crz_two_param.qc")), str(fixture_path("crz_cnot_two_param.qc")), "--json"])
    data = json.loads(capsys.readouterr().out)
    bnd = data["bounds"]
    p1 = poly_semantics(controlled_rz((2, -4)))
    diagonal = [degrees(p1[i, i]) for i in range(4)]
    pos = tuple(max(d.pos_by_var[j] for d in diagonal) for j in range(2))
    ok = code == 0 and bnd["lambda"] == [2, 4] and bnd["kappa_sum_max"] == 4 and pos == (2, 4)
    report(3, "bound numbers", ok, f"lambda={bnd['lambda']}, kappa sum={bnd['kappa_sum_max']}, diagonal deg+={pos}")


def bound_violations(c, k):
    seq_ = coeff_seq(c)
    abs_sums = [sum(abs(a[j]) for a in seq_) for j in range(k)]
    total = sum(kappa(a) for a in seq_)
    count = 0
    for entry in poly_semantics(c, k).entries:
        d = degrees(entry)
        if d.is_minus_infinity:
            continue
        count += sum(d.pos_by_var[j] > abs_sums[j] for j in range(k))
        count += sum(d.neg_by_var[j] > abs_sums[j] for j in range(k))
        count += d.total_pos > total
    return count


def test_degree_bound_property_suite():
    start = time.perf_counter()
    violations = 0
    for seed in range(500):
        k = 1 + seed % 2
        c = random_circuit(seed, qubits=1 + (seed // 2) % 2, depth=1 + seed % 6, k=k, coeff_bound=3)
        violations += bound_violations(c, k)
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 120
    report(4, "degree-bound property suite", ok, f"500 circuits, {violations} violations, {elapsed:.1f} s")


def test_abstraction_soundness():
    rng = random.Random(5)
    mismatches = 0
    for seed in range(200):
        k = 1 + seed % 2
        c = random_circuit(seed, qubits=1 + seed % 2, depth=1 + seed % 5, k=k, coeff_bound=3)
        p = poly_semantics(c, k)
        for _ in range(5):
            point = tuple(Fraction(rng.randint(-24, 24), rng.randint(1, 8)) for _ in range(k))
            mismatches += p.evaluate(substitution_point(point)) != eval_exact(c, point)
    report(5, "abstraction soundness", mismatches == 0, f"1000 points, {mismatches} mismatches")


def unequal_pairs():
    half = Fraction(1, 2)
    return [
        (rotation("Z", [1]), rotation("Z", [-1]), half),
        (rotation("Z", [2]), rotation("Z", [-2]), half),
        (controlled_rz(), cnot_decomposition(first_sign=-1), Fraction(1, 3)),
        (rotation("X", [1, 1]), rotation("X", [1, -1]), half),
        (rotation("Y", [3]), rotation("Y", [1]), Fraction(1, 4)),
        (conjugated_z(2), seq(builtin("Z"), rotation("Z", [1])), Fraction(1, 2)),
        (parallel_rx([(1, 2), (0, -1)]), parallel_rx([(1, 2), (0, 1)]), Fraction(1, 5)),
        (seq(rotation("Z", [1]), rotation("X", [1])), seq(rotation("X", [1]), rotation("Z", [1])), half),
        (rotation("Z", [1], Fraction(1, 2)), rotation("Z", [1]), Fraction(1, 3)),
        (controlled_rz((2, -4)), cnot_decomposition((1, 2)), Fraction(1, 10)),
    ]


def test_probabilistic_bound():
    runs = 2000
    rates = []
    all_ok = True
    for idx, (c1, c2, p) in enumerate(unequal_pairs()):
        assert isinstance(check_exact(c1, c2), NotEquivalent)
        misses = 0
        bound = None
        for seed in range(runs):
            v = check_probabilistic(c1, c2, p, seed)
            if isinstance(v, ProbablyEquivalent):
                misses += 1
            bound = Fraction(v.bounds.total_degree, len(sample_set(v.bounds.total_degree, p)))
        assert bound <= p
        # one-sided test of "miss rate <= bound" at the 99% level
        p_value = binom.sf(misses - 1, runs, float(bound)) if misses else 1.0
        all_ok &= p_value >= 0.01
        rates.append(f"{misses}/{runs} vs bound {bound}")
    negatives = 0
    equal = [(controlled_rz(), cnot_decomposition()), (conjugated_z(3), builtin("Z")), (controlled_rz((2, -4)), cnot_decomposition((1, -2)))]
    for seed in range(10_000):
        c1, c2 = equal[seed % len(equal)]
        negatives += not isinstance(check_probabilistic(c1, c2, Fraction(1, 100), seed), ProbablyEquivalent)
    ok = all_ok and negatives == 0
    report(6, "probabilistic bound", ok, f"misses {', '.join(rates)}; {negatives} false negatives in 10000")


def test_integralization():
    rng = random.Random(11)
    start = time.perf_counter()
    disagreements, non_integral, equal_count = 0, 0, 0
    for idx in range(300):
        k = 1 + idx % 2
        qubits = 1 + (idx // 2) % 2
        c1 = random_circuit(idx, qubits=qubits, depth=3, k=k, coeff_bound=1, fractional=True)
        kind = idx % 3
        if kind == 0:
            c2 = equal_rewrite(c1, rng, k)
        elif kind == 1:
            c2 = mutate(c1, idx)
        else:
            c2 = random_circuit(idx + 5000, qubits=qubits, depth=3, k=k, coeff_bound=1, fractional=True)
        i1, i2, _ = integralize(c1, c2, k)
        non_integral += not (is_integral(i1) and is_integral(i2))
        v = check_exact(c1, c2, k=k)
        exact_equal = isinstance(v, Equivalent)
        equal_count += exact_equal
        disagreements += exact_equal != float_equivalent(c1, c2, k, points=1000, seed=idx)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and non_integral == 0
    report(
        7,
        "integralization",
        ok,
        f"300 pairs ({equal_count} equivalent), {non_integral} non-integral, "
        f"{disagreements} disagreements with float sampling, {elapsed:.1f} s",
    )


def test_global_phase():
    rng = random.Random(3)
    recovered, failures, separated = 0, 0, 0
    for seed in range(100):
        k = 1 + seed % 2
        n = 1 + (seed // 2) % 2
        c = random_circuit(seed, qubits=n, depth=3, k=k, coeff_bound=1)
        lam = [int(sum(abs(a[j]) for a in coeff_seq(c))) for j in range(k)]
        g = [rng.randint(-2 * x, 2 * x) for x in lam]
        z = zeta(8) ** rng.randrange(8)
        c2 = scaled(z, seq(c, global_rotation(n, g)))
        v = check_phase(c, c2, k=k)
        if (
            isinstance(v, Equivalent)
            and v.modulo_phase
            and v.phase.scalar == z.inverse()
            and v.phase.form.coeffs == tuple(-x for x in g)
        ):
            recovered += 1
        else:
            failures += 1
        flipped = seq(c, on_wire(builtin("X"), rng.randrange(n), n))
        separated += isinstance(check_phase(c, flipped, k=k), NotEquivalent)
    ok = recovered == 100 and separated == 100
    report(8, "global phase", ok, f"{recovered}/100 phases recovered, {separated}/100 unrelated pairs separated")


def test_sample_set_construction():
    exact_example = sample_set(4, Fraction(1, 2)) == [Fraction(t, 2) for t in range(8)]
    rng = random.Random(9)
    bad = 0
    for _ in range(5000):
        d = rng.randint(0, 10**4)
        p = Fraction(rng.randint(1, 1000), rng.randint(1000, 10**5))
        n, m = sample_size(d, p)
        bad += not (n == max(1, math.ceil(d / p)) and m % 4 == 0 and 0 <= m - n < 4)
        bad += not (Fraction(d, m) <= p)
    for _ in range(300):
        d = rng.randint(0, 300)
        p = Fraction(rng.randint(1, 20), 20)
        s = sample_set(d, p)
        bad += not (len(s) == sample_size(d, p)[1] and len(set(s)) == len(s))
    ok = exact_example and bad == 0
    report(9, "sample-set construction", ok, f"8-point example {'ok' if exact_example else 'wrong'}, {bad} bad draws")


def test_exact_kernel():
    rng = random.Random(2)
    cases, failures = 0, 0
    orders = (1, 2, 3, 4, 5, 6, 8, 12)
    while cases < 60_000:
        a, b, c = (random_cyclotomic(rng, orders) for _ in range(3))
        failures += (a + b) + c != a + (b + c)
        failures += (a * b) * c != a * (b * c)
        failures += a + b != b + a or a * b != b * a
        failures += a * (b + c) != a * b + a * c
        failures += a + (-a) != ZERO
        cases += 1
    while cases < 70_000:
        a = random_nonzero(rng, orders)
        failures += a * a.inverse() != ONE
        cases += 1
    while cases < 85_000:
        a = random_cyclotomic(rng, orders + (9, 10, 15, 16, 20, 24, 240))
        b = random_cyclotomic(rng, orders + (7, 9, 30))
        failures += abs((a * b).to_complex() - a.to_complex() * b.to_complex()) > 1e-9
        failures += abs((a * a.conjugate()).to_complex() - abs(a.to_complex()) ** 2) > 1e-9
        cases += 1
    while cases < 100_000:
        q = Fraction(rng.randint(-256, 256), rng.randint(1, 64))
        failures += cos_pi(q) + I * sin_pi(q) != exp_i_pi(q)
        cases += 1
    specials = zeta(6) == -(zeta(3) ** 2)
    w = (3 + 4 * I) / 5
    specials &= w * w.conjugate() == ONE
    ok = failures == 0 and specials
    report(10, "exact kernel", ok, f"{cases} randomized cases, {failures} failures, identities {'ok' if specials else 'broken'}")

