"""Named fixture pairs and seeded random circuit generators for the test suites."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .circuit import (
    AffineForm,
    Circuit,
    Constant,
    Control,
    Empty,
    Par,
    Rotation,
    Seq,
    builtin,
    builtin_matrix,
    iter_gates,
    on_wire,
    par,
    pauli_string,
    rotation,
    seq,
)
from .cycmat import CycMatrix, matmul

ONE_QUBIT_BUILTINS = ("I", "X", "Y", "Z", "H", "S", "T")
CONJUGATORS = ("H", "S", "T", "X")


@dataclass(frozen=True)
class Fixture:
    name: str
    left: Circuit
    right: Circuit
    params: tuple[str, ...]
    expected: str
    numbers: dict = field(default_factory=dict, compare=False)


def _rz(coeffs, offset=0) -> Rotation:
    return rotation("Z", coeffs, offset)


def controlled_rz(coeffs: Sequence = (2,)) -> Circuit:
    """Controlled ``R_Z`` with the given coefficient vector."""
    return Control(_rz(coeffs))


def cnot_decomposition(coeffs: Sequence = (1,), first_sign: int = 1) -> Circuit:
    """Two-CNOT decomposition of a controlled ``R_Z(2f)``; ``first_sign=-1`` gives the mutated form."""
    pos = tuple(Fraction(a) for a in coeffs)
    neg = tuple(-a for a in pos)
    first = pos if first_sign > 0 else neg
    return seq(
        Par(Empty(), _rz(first)),
        builtin("CNOT"),
        Par(Empty(), _rz(neg)),
        builtin("CNOT"),
    )


def conjugated_z(n: int) -> Circuit:
    """``R_X(n t) ∘ Z ∘ R_X(n t)``: semantically ``Z`` for every ``n``."""
    return seq(rotation("X", [n]), builtin("Z"), rotation("X", [n]))


def parallel_rx(alpha: Sequence[Sequence[int]]) -> Circuit:
    """Parallel ``R_X`` rotations, one per coefficient vector; attains the degree bounds."""
    return par(*[rotation("X", a) for a in alpha])


def real_amplitude(qubits: int = 3, layers: int = 2, flip: int | None = None) -> Circuit:
    """Layers of ``R_Z`` (one fresh parameter each) followed by a CNOT ladder.

    ``flip`` negates the coefficient of that rotation index.
    """
    k = qubits * layers
    parts = []
    idx = 0
    for _ in range(layers):
        rots = []
        for _q in range(qubits):
            coeffs = [0] * k
            coeffs[idx] = -1 if flip == idx else 1
            rots.append(_rz(coeffs))
            idx += 1
        parts.append(par(*rots))
        for w in range(qubits - 1):
            parts.append(on_wire(builtin("CNOT"), w, qubits))
    return seq(*parts)


def fixtures() -> dict[str, Fixture]:
    """Named example pairs with their expected verdicts and bound numbers."""
    half = Fraction(1, 2)
    out = [
        Fixture("crz", controlled_rz(), cnot_decomposition(), ("theta",), "Equivalent", {"lambda": (2,), "evaluations": 5}),
        Fixture(
            "crz_fractional",
            controlled_rz((1,)),
            cnot_decomposition((half,)),
            ("theta",),
            "Equivalent",
            {"scaling": (2,), "evaluations": 5},
        ),
        Fixture("crz_mutated", controlled_rz(), cnot_decomposition(first_sign=-1), ("theta",), "NotEquivalent", {"lambda": (2,)}),
        Fixture(
            "crz_two_param",
            controlled_rz((2, -4)),
            cnot_decomposition((1, -2)),
            ("rho1", "rho2"),
            "Equivalent",
            {"lambda": (2, 4), "kappa_sum": 4, "d": 10},
        ),
        Fixture("conjugated_z3", conjugated_z(3), builtin("Z"), ("theta",), "Equivalent", {"lambda": (6,), "evaluations": 13}),
        Fixture(
            "parallel_rx",
            parallel_rx([(1, 2), (0, -1)]),
            parallel_rx([(1, 2), (0, -1)]),
            ("t1", "t2"),
            "Equivalent",
            {"lambda": (1, 3)},
        ),
        Fixture(
            "real_amplitude",
            real_amplitude(3, 2),
            real_amplitude(3, 2, flip=4),
            tuple(f"w{i}" for i in range(6)),
            "NotEquivalent",
            {"lambda": (1,) * 6},
        ),
    ]
    return {f.name: f for f in out}


FIXTURE_FILES = {
    "crz.qc": ("crz", "left"),
    "crz_cnot.qc": ("crz", "right"),
    "crz_cnot_mutated.qc": ("crz_mutated", "right"),
    "crz_frac.qc": ("crz_fractional", "left"),
    "crz_cnot_frac.qc": ("crz_fractional", "right"),
    "crz_two_param.qc": ("crz_two_param", "left"),
    "crz_cnot_two_param.qc": ("crz_two_param", "right"),
    "conjugated_z3.qc": ("conjugated_z3", "left"),
    "z.qc": ("conjugated_z3", "right"),
    "real_amplitude.qc": ("real_amplitude", "left"),
    "real_amplitude_flipped.qc": ("real_amplitude", "right"),
}


def fixture_path(name: str):
    """Path of a shipped fixture file (see :data:`FIXTURE_FILES`)."""
    return resources.files("paramequiv").joinpath("fixtures", name)


def fixture_text(name: str) -> str:
    """Serialized form of a fixture file, generated from :func:`fixtures`."""
    from .fileformat import serialize

    pair, side = FIXTURE_FILES[name]
    fx = fixtures()[pair]
    return serialize(getattr(fx, side), fx.params)


# ---------------------------------------------------------------------------
# Random generation


def random_word_unitary(rng: random.Random, length: int) -> CycMatrix:
    m = CycMatrix.identity(2)
    for _ in range(length):
        m = matmul(builtin_matrix(rng.choice(CONJUGATORS)), m)
    return m


def random_axis(rng: random.Random) -> CycMatrix:
    """``U Z U^dagger`` for a random word ``U``: an exact Hermitian unitary."""
    u = random_word_unitary(rng, rng.randint(1, 4))
    return matmul(matmul(u, pauli_string("Z")), u.adjoint())


def random_form(
    rng: random.Random, k: int, coeff_bound: int, fractional: bool = False, offsets: bool = True
) -> AffineForm:
    coeffs = []
    for _ in range(k):
        if rng.random() < 0.3:
            coeffs.append(Fraction(0))
            continue
        num = rng.randint(-coeff_bound, coeff_bound)
        den = rng.choice((1, 2, 3)) if fractional else 1
        coeffs.append(Fraction(num, den))
    offset = Fraction(rng.choice((0, 0, 0, 1, -1, 2)), rng.choice((1, 2, 4))) if offsets else Fraction(0)
    return AffineForm(tuple(coeffs), offset)


def _random_rotation(rng, k, coeff_bound, fractional, offsets, width: int = 1) -> Rotation:
    form = random_form(rng, k, coeff_bound, fractional, offsets)
    if width == 2:
        name = rng.choice(("ZZ", "XX", "XZ", "YY"))
        return Rotation(pauli_string(name), form, axis_name=name)
    if rng.random() < 0.2:
        return Rotation(random_axis(rng), form)
    name = rng.choice(("X", "Y", "Z"))
    return Rotation(pauli_string(name), form, axis_name=name)


def random_circuit(
    seed: int,
    qubits: int = 2,
    depth: int = 4,
    k: int = 1,
    coeff_bound: int = 2,
    *,
    fractional: bool = False,
    offsets: bool = True,
    rotation_rate: float = 0.5,
) -> Circuit:
    """A well-typed unitary circuit on ``qubits`` wires built from ``depth`` random gates."""
    if not (1 <= qubits <= 3 and 1 <= depth <= 8 and 0 <= k <= 3 and 0 <= coeff_bound <= 3):
        raise ValueError("random_circuit supports qubits<=3, depth<=8, k<=3, coeff_bound<=3")
    rng = random.Random(seed)
    layers = []
    for _ in range(depth):
        two = qubits >= 2 and rng.random() < 0.35
        if two:
            wire = rng.randrange(qubits - 1)
            r = rng.random()
            if k and r < rotation_rate * 0.6:
                gate = Control(_random_rotation(rng, k, coeff_bound, fractional, offsets))
            elif k and r < rotation_rate:
                gate = _random_rotation(rng, k, coeff_bound, fractional, offsets, width=2)
            else:
                gate = builtin(rng.choice(("CNOT", "CZ")))
        else:
            wire = rng.randrange(qubits)
            if k and rng.random() < rotation_rate:
                gate = _random_rotation(rng, k, coeff_bound, fractional, offsets)
            else:
                gate = builtin(rng.choice(ONE_QUBIT_BUILTINS))
        layers.append(on_wire(gate, wire, qubits))
    return seq(*layers)


def _mutate_gate(gate, rng: random.Random):
    if isinstance(gate, Rotation):
        choice = rng.randrange(3)
        if choice == 0 and any(gate.form.coeffs):
            return Rotation(gate.axis, AffineForm(tuple(-a for a in gate.form.coeffs), gate.form.offset), gate.axis_name)
        if choice == 1:
            names = [n for n in ("X", "Y", "Z") if n != gate.axis_name] if gate.axis.rows == 2 else ["ZZ", "XX"]
            name = rng.choice(names)
            return Rotation(pauli_string(name), gate.form, axis_name=name)
        j = rng.randrange(len(gate.form.coeffs)) if gate.form.coeffs else None
        coeffs = list(gate.form.coeffs)
        if j is None:
            return Rotation(gate.axis, AffineForm((), gate.form.offset + 1), gate.axis_name)
        coeffs[j] += rng.choice((-1, 1))
        return Rotation(gate.axis, AffineForm(tuple(coeffs), gate.form.offset), gate.axis_name)
    if isinstance(gate, Control):
        return Control(_mutate_gate(gate.inner, rng))
    if gate.matrix.shape == (2, 2):
        names = [n for n in ONE_QUBIT_BUILTINS if builtin_matrix(n) != gate.matrix]
        return builtin(rng.choice(names))
    if gate.matrix.shape == (4, 4):
        return Par(builtin(rng.choice(("X", "Z", "H"))), Empty())
    return gate


def mutate(c: Circuit, seed: int) -> Circuit:
    """Replace one randomly chosen gate by a different gate of the same arity."""
    rng = random.Random(seed)
    total = sum(1 for _ in iter_gates(c))
    if total == 0:
        return c
    target = rng.randrange(total)
    counter = [0]

    def go(node: Circuit) -> Circuit:
        if isinstance(node, Empty):
            return node
        if isinstance(node, (Constant, Rotation, Control)):
            idx = counter[0]
            counter[0] += 1
            return _mutate_gate(node, rng) if idx == target else node
        if isinstance(node, Seq):
            after = go(node.after)
            return Seq(after, go(node.before))
        top = go(node.top)
        return Par(top, go(node.bottom))

    return go(c)
