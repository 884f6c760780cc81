"""Circuit syntax: gates, composition, arities, validation and coefficient sequences.

A circuit is an immutable tree.  Gates (:class:`Constant`, :class:`Rotation`,
:class:`Control`) are themselves circuits; :class:`Empty` is the bare wire,
:class:`Seq` composes in time (``before`` runs first) and :class:`Par` stacks
circuits on disjoint wires (``top`` occupies the most significant qubits).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .cycmat import CycMatrix, is_hermitian, is_unitary
from .exactnum import I as IMAG_UNIT
from .exactnum import Cyclotomic, Scalar, zeta

CoeffSeq = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class AffineForm:
    """Angle expression ``a_1*theta_1 + ... + a_k*theta_k + offset*pi``."""

    coeffs: tuple[Fraction, ...]
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(a) for a in self.coeffs))
        object.__setattr__(self, "offset", Fraction(self.offset))

    @classmethod
    def zero(cls, k: int) -> AffineForm:
        return cls((Fraction(0),) * k)

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def padded(self, k: int) -> AffineForm:
        if k < self.k:
            raise ValueError(f"cannot shrink a {self.k}-parameter form to {k} parameters")
        return AffineForm(self.coeffs + (Fraction(0),) * (k - self.k), self.offset)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Value at ``theta_j = point[j]*pi``, itself as a multiple of pi."""
        if len(point) != self.k:
            raise ValueError(f"form expects {self.k} parameters, got {len(point)}")
        return sum((a * Fraction(v) for a, v in zip(self.coeffs, point)), self.offset)

    def evaluate_float(self, theta: Sequence[float]) -> float:
        """Value in radians at real parameters ``theta``."""
        import math

        return sum(float(a) * t for a, t in zip(self.coeffs, theta)) + float(self.offset) * math.pi

    def scaled(self, v: Sequence[Fraction]) -> AffineForm:
        return AffineForm(tuple(a * Fraction(x) for a, x in zip(self.coeffs, v)), self.offset)

    def __neg__(self) -> AffineForm:
        return AffineForm(tuple(-a for a in self.coeffs), -self.offset)

    def __str__(self) -> str:
        parts = [f"{a}*t{j + 1}" for j, a in enumerate(self.coeffs) if a]
        if self.offset:
            parts.append(f"{self.offset}*pi")
        return " + ".join(parts) or "0"


class Circuit:
    """Base class of the circuit syntax tree."""

    __slots__ = ()

    @property
    def arity_in(self) -> int:
        return arity_in(self)

    @property
    def arity_out(self) -> int:
        return arity_out(self)


@dataclass(frozen=True)
class Empty(Circuit):
    """The bare wire; one input, one output, identity semantics."""


@dataclass(frozen=True)
class Constant(Circuit):
    """A fixed ``2**out x 2**in`` matrix (need not be square)."""

    matrix: CycMatrix
    name: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Rotation(Circuit):
    """``exp(-i*M*f(theta)/2)`` for a Hermitian unitary axis ``M``."""

    axis: CycMatrix
    form: AffineForm
    axis_name: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Control(Circuit):
    """Controlled gate ``I ⊕ G`` with the control on the new top wire."""

    inner: Gate


@dataclass(frozen=True)
class Seq(Circuit):
    """Sequential composition: ``before`` first, then ``after``."""

    after: Circuit
    before: Circuit


@dataclass(frozen=True)
class Par(Circuit):
    """Parallel composition ``top ⊗ bottom``."""

    top: Circuit
    bottom: Circuit


Gate = Union[Constant, Rotation, Control]
GATE_TYPES = (Constant, Rotation, Control)


def _log2(n: int) -> int:
    return n.bit_length() - 1


def arity_in(c: Circuit) -> int:
    if isinstance(c, Empty):
        return 1
    if isinstance(c, Constant):
        return _log2(c.matrix.cols)
    if isinstance(c, Rotation):
        return _log2(c.axis.rows)
    if isinstance(c, Control):
        return arity_in(c.inner) + 1
    if isinstance(c, Seq):
        return arity_in(c.before)
    if isinstance(c, Par):
        return arity_in(c.top) + arity_in(c.bottom)
    raise TypeError(f"not a circuit: {c!r}")


def arity_out(c: Circuit) -> int:
    if isinstance(c, Empty):
        return 1
    if isinstance(c, Constant):
        return _log2(c.matrix.rows)
    if isinstance(c, Rotation):
        return _log2(c.axis.rows)
    if isinstance(c, Control):
        return arity_out(c.inner) + 1
    if isinstance(c, Seq):
        return arity_out(c.after)
    if isinstance(c, Par):
        return arity_out(c.top) + arity_out(c.bottom)
    raise TypeError(f"not a circuit: {c!r}")


# ---------------------------------------------------------------------------
# Builders


def seq(*circuits: Circuit) -> Circuit:
    """Compose in time order: ``seq(a, b, c)`` runs ``a`` first."""
    if not circuits:
        raise ValueError("seq needs at least one circuit")
    out = circuits[0]
    for c in circuits[1:]:
        out = Seq(c, out)
    return out


def par(*circuits: Circuit) -> Circuit:
    """Stack top to bottom, left-associatively."""
    if not circuits:
        raise ValueError("par needs at least one circuit")
    out = circuits[0]
    for c in circuits[1:]:
        out = Par(out, c)
    return out


def wires(n: int) -> Circuit:
    """Identity on ``n >= 1`` wires."""
    return par(*[Empty()] * n)


def on_wire(gate: Circuit, wire: int, n: int) -> Circuit:
    """Place ``gate`` (acting on ``arity_in(gate)`` wires) starting at ``wire`` of ``n``."""
    width = arity_in(gate)
    if wire < 0 or wire + width > n:
        raise ValueError(f"gate of width {width} does not fit at wire {wire} of {n}")
    parts = [Empty()] * wire + [gate] + [Empty()] * (n - wire - width)
    return par(*parts)


def scalar_gate(z: Scalar) -> Constant:
    """A ``1x1`` constant: zero wires in, zero wires out."""
    return Constant(CycMatrix.scalar(z))


def scaled(z: Scalar, c: Circuit) -> Circuit:
    """``z * c`` built as ``scalar // c``."""
    return Par(scalar_gate(z), c)


@lru_cache(maxsize=None)
def _builtin_matrices() -> dict[str, CycMatrix]:
    i = IMAG_UNIT
    w = zeta(8)
    inv_sqrt2 = (w - w**3) * Fraction(1, 2)
    return {
        "I": CycMatrix.identity(2),
        "X": CycMatrix.from_rows([[0, 1], [1, 0]]),
        "Y": CycMatrix.from_rows([[0, -i], [i, 0]]),
        "Z": CycMatrix.from_rows([[1, 0], [0, -1]]),
        "H": CycMatrix.from_rows([[inv_sqrt2, inv_sqrt2], [inv_sqrt2, -inv_sqrt2]]),
        "S": CycMatrix.from_rows([[1, 0], [0, i]]),
        "T": CycMatrix.from_rows([[1, 0], [0, w]]),
        "KET0": CycMatrix.column([1, 0]),
        "KET1": CycMatrix.column([0, 1]),
    }


BUILTIN_NAMES = ("I", "X", "Y", "Z", "H", "S", "T", "KET0", "KET1", "CNOT", "CZ")
PAULI_AXES = ("I", "X", "Y", "Z")


def builtin_matrix(name: str) -> CycMatrix:
    if name == "CNOT":
        from .cycmat import direct_sum

        return direct_sum(CycMatrix.identity(2), _builtin_matrices()["X"])
    if name == "CZ":
        from .cycmat import direct_sum

        return direct_sum(CycMatrix.identity(2), _builtin_matrices()["Z"])
    try:
        return _builtin_matrices()[name]
    except KeyError:
        raise ValueError(f"unknown builtin gate {name!r}") from None


def builtin(name: str) -> Gate:
    """Catalog gate by name; ``CNOT`` and ``CZ`` are controls of ``X`` and ``Z``."""
    if name == "CNOT":
        return Control(builtin("X"))
    if name == "CZ":
        return Control(builtin("Z"))
    return Constant(builtin_matrix(name), name=name)


def rotation(axis: str | CycMatrix, coeffs: Sequence, offset=0) -> Rotation:
    """Rotation about a named Pauli axis (``"X"``, ``"ZZ"``, ...) or an explicit matrix."""
    if isinstance(axis, str):
        return Rotation(pauli_string(axis), AffineForm(tuple(coeffs), offset), axis_name=axis)
    return Rotation(axis, AffineForm(tuple(coeffs), offset))


def pauli_string(name: str) -> CycMatrix:
    from .cycmat import kron

    if not name or any(ch not in PAULI_AXES for ch in name):
        raise ValueError(f"not a Pauli string: {name!r}")
    m = builtin_matrix(name[0])
    for ch in name[1:]:
        m = kron(m, builtin_matrix(ch))
    return m


# ---------------------------------------------------------------------------
# Traversals


def iter_gates(c: Circuit) -> Iterator[Gate]:
    """Top-level gates in the same order the coefficient sequence uses."""
    if isinstance(c, Empty):
        return
    if isinstance(c, GATE_TYPES):
        yield c
    elif isinstance(c, Seq):
        yield from iter_gates(c.after)
        yield from iter_gates(c.before)
    elif isinstance(c, Par):
        yield from iter_gates(c.top)
        yield from iter_gates(c.bottom)
    else:
        raise TypeError(f"not a circuit: {c!r}")


def iter_rotations(c: Circuit) -> Iterator[Rotation]:
    for g in iter_gates(c):
        while isinstance(g, Control):
            g = g.inner
        if isinstance(g, Rotation):
            yield g


def coeff_seq(c: Circuit) -> CoeffSeq:
    """The coefficient sequence: one coefficient vector per rotation.

    ``A(after ∘ before) = A(after) · A(before)`` and ``A(top // bottom) = A(top) · A(bottom)``.
    """
    return tuple(r.form.coeffs for r in iter_rotations(c))


def param_count(c: Circuit) -> int | None:
    """Parameter count shared by the circuit's rotations, ``None`` if rotation-free."""
    ks = {r.form.k for r in iter_rotations(c)}
    if not ks:
        return None
    if len(ks) > 1:
        raise ValueError(f"rotations disagree on the parameter count: {sorted(ks)}")
    return ks.pop()


def is_integral(c: Circuit) -> bool:
    return all(r.form.is_integral() for r in iter_rotations(c))


def map_forms(c: Circuit, fn) -> Circuit:
    """Rebuild ``c`` with every rotation form replaced by ``fn(form)``."""
    if isinstance(c, (Empty, Constant)):
        return c
    if isinstance(c, Rotation):
        return Rotation(c.axis, fn(c.form), axis_name=c.axis_name)
    if isinstance(c, Control):
        return Control(map_forms(c.inner, fn))
    if isinstance(c, Seq):
        return Seq(map_forms(c.after, fn), map_forms(c.before, fn))
    if isinstance(c, Par):
        return Par(map_forms(c.top, fn), map_forms(c.bottom, fn))
    raise TypeError(f"not a circuit: {c!r}")


def pad_params(c: Circuit, k: int) -> Circuit:
    return map_forms(c, lambda f: f.padded(k))


def gate_count(c: Circuit) -> int:
    return sum(1 for _ in iter_gates(c))


# ---------------------------------------------------------------------------
# Validation


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


@lru_cache(maxsize=1024)
def _hermitian_unitary(m: CycMatrix) -> bool:
    return is_hermitian(m) and is_unitary(m)


@lru_cache(maxsize=1024)
def _unitary(m: CycMatrix) -> bool:
    return is_unitary(m)


def gate_is_unitary(g: Gate) -> bool:
    if isinstance(g, Rotation):
        return True
    if isinstance(g, Control):
        return gate_is_unitary(g.inner)
    return g.matrix.is_square() and _unitary(g.matrix)


def validate(c: Circuit, k: int | None = None) -> list[str]:
    """Return every well-formedness violation of ``c`` (empty list when valid).

    Checks matrix dimensions, sequential arity matching, unitarity under
    control, Hermitian-unitary rotation axes and a uniform parameter count
    (equal to ``k`` when given).
    """
    problems: list[str] = []
    ks: set[int] = set()

    def visit(node: Circuit, path: str) -> None:
        if isinstance(node, Empty):
            return
        if isinstance(node, Constant):
            m = node.matrix
            if not (_is_pow2(m.rows) and _is_pow2(m.cols)):
                problems.append(f"{path}: constant of shape {m.rows}x{m.cols} is not 2^m x 2^n")
            return
        if isinstance(node, Rotation):
            m = node.axis
            ks.add(node.form.k)
            if not (m.is_square() and _is_pow2(m.rows)):
                problems.append(f"{path}: rotation axis of shape {m.rows}x{m.cols} is not 2^n x 2^n")
            elif not _hermitian_unitary(m):
                problems.append(f"{path}: rotation axis is not Hermitian and unitary")
            return
        if isinstance(node, Control):
            visit(node.inner, path + ".ctrl")
            if not isinstance(node.inner, GATE_TYPES):
                problems.append(f"{path}: control of a non-gate")
            elif not gate_is_unitary(node.inner):
                problems.append(f"{path}: control of a non-unitary gate")
            return
        if isinstance(node, Seq):
            visit(node.before, path + ".before")
            visit(node.after, path + ".after")
            ai, bo = arity_in(node.after), arity_out(node.before)
            if ai != bo:
                problems.append(f"{path}: sequential arity mismatch {ai} != {bo}")
            return
        if isinstance(node, Par):
            visit(node.top, path + ".top")
            visit(node.bottom, path + ".bottom")
            return
        problems.append(f"{path}: not a circuit node: {node!r}")

    visit(c, "root")
    if k is not None:
        bad = sorted(x for x in ks if x != k)
        if bad:
            problems.append(f"rotation forms have {bad} parameters, expected {k}")
    elif len(ks) > 1:
        problems.append(f"rotations disagree on the parameter count: {sorted(ks)}")
    return problems


def require_valid(c: Circuit, k: int | None = None) -> None:
    from .errors import CircuitValidationError

    problems = validate(c, k)
    if problems:
        raise CircuitValidationError(problems)


def constants_injective(c: Circuit) -> bool:
    """True when every constant gate of ``c`` has full column rank."""
    from .cycmat import is_injective

    seen: dict[CycMatrix, bool] = {}
    for g in iter_gates(c):
        while isinstance(g, Control):
            g = g.inner
        if isinstance(g, Constant):
            if g.matrix not in seen:
                seen[g.matrix] = is_injective(g.matrix)
            if not seen[g.matrix]:
                return False
    return True


__all__ = [
    "AffineForm",
    "Circuit",
    "Constant",
    "Control",
    "Cyclotomic",
    "Empty",
    "Gate",
    "Par",
    "Rotation",
    "Seq",
    "arity_in",
    "arity_out",
    "builtin",
    "coeff_seq",
    "is_integral",
    "on_wire",
    "par",
    "rotation",
    "scaled",
    "seq",
    "validate",
]
