"""Circuit reparameterizations and affine global-phase inference."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import bound_report, common_k
from .circuit import (
    AffineForm,
    Circuit,
    Par,
    Rotation,
    Seq,
    arity_in,
    arity_out,
    coeff_seq,
    is_integral,
    map_forms,
    scalar_gate,
)
from .cycmat import CycMatrix
from .exactnum import ONE, Cyclotomic, _coerce, zeta
from .semantics import eval_exact


def rescale(c: Circuit, v: Sequence) -> Circuit:
    """Multiply the ``j``-th coefficient of every rotation by ``v[j]``; offsets are kept.

    The result satisfies ``[[rescale(c, v)]](theta) = [[c]](v * theta)``.
    """
    v = tuple(Fraction(x) for x in v)
    if any(x == 0 for x in v):
        raise ValueError("rescaling vector has a zero component")

    def fn(f: AffineForm) -> AffineForm:
        if f.k != len(v):
            raise ValueError(f"rescaling vector has {len(v)} entries, form has {f.k}")
        return f.scaled(v)

    return map_forms(c, fn)


def circ_lcm(c1: Circuit, c2: Circuit, k: int | None = None) -> tuple[int, ...]:
    """Componentwise lcm of coefficient denominators over both circuits."""
    if k is None:
        k = common_k(c1, c2)
    out = [1] * k
    for a in coeff_seq(c1) + coeff_seq(c2):
        for j, x in enumerate(a):
            out[j] = math.lcm(out[j], Fraction(x).denominator)
    return tuple(out)


def integralize(c1: Circuit, c2: Circuit, k: int | None = None) -> tuple[Circuit, Circuit, tuple[int, ...]]:
    """Rescale both circuits by :func:`circ_lcm` so that every coefficient is an integer."""
    v = circ_lcm(c1, c2, k)
    if all(x == 1 for x in v):
        return c1, c2, v
    return rescale(c1, v), rescale(c2, v), v


def to_original(point: Sequence[Fraction], v: Sequence[int]) -> tuple[Fraction, ...]:
    """Map a point of the integralized parameterization back to the original one."""
    return tuple(Fraction(x) * s for x, s in zip(point, v))


@dataclass(frozen=True)
class PhaseResult:
    """Candidate global phase ``scalar * exp(-i*form/2)`` with a unit-modulus scalar."""

    scalar: Cyclotomic
    form: AffineForm

    @classmethod
    def trivial(cls, k: int) -> PhaseResult:
        return cls(ONE, AffineForm.zero(k))

    @property
    def is_trivial(self) -> bool:
        return self.scalar == ONE and not any(self.form.coeffs)


def _first_shared_nonzero(m1: CycMatrix, m2: CycMatrix) -> int | None:
    for idx, (a, b) in enumerate(zip(m1.entries, m2.entries)):
        if a and b:
            return idx
    return None


def find_phase(c1: Circuit, c2: Circuit, k: int | None = None) -> PhaseResult:
    """Infer ``(z, f)`` such that ``[[c1]] = z * exp(-i f/2) * [[c2]]`` when such a phase exists.

    Any failed step returns the trivial result; callers validate the candidate.
    Both circuits must have integer coefficients.
    """
    if not (is_integral(c1) and is_integral(c2)):
        raise ValueError("find_phase requires integral circuits; integralize first")
    if k is None:
        k = common_k(c1, c2)
    default = PhaseResult.trivial(k)
    if (arity_in(c1), arity_out(c1)) != (arity_in(c2), arity_out(c2)):
        return default

    origin = (Fraction(0),) * k
    m1, m2 = eval_exact(c1, origin), eval_exact(c2, origin)
    idx = _first_shared_nonzero(m1, m2)
    if idx is None:
        return default
    z0 = m2.entries[idx] / m1.entries[idx]
    if z0 * z0.conjugate() != ONE:
        return default

    lambdas = bound_report(c1, c2, k).lambdas
    alphas = []
    for j, lam in enumerate(lambdas):
        if lam == 0:
            alphas.append(0)
            continue
        point = tuple(Fraction(1, 2 * lam) if i == j else Fraction(0) for i in range(k))
        m1j, m2j = eval_exact(c1, point), eval_exact(c2, point)
        idx = _first_shared_nonzero(m1j, m2j)
        if idx is None:
            return default
        zj = m2j.entries[idx] / (z0 * m1j.entries[idx])
        root = zeta(8 * lam)
        found = None
        for ell in range(-2 * lam, 2 * lam + 1):
            if root**ell == zj:
                found = ell
                break
        if found is None:
            return default
        alphas.append(found)
    return PhaseResult(z0.inverse(), AffineForm(tuple(alphas)))


def phase_augment(c2: Circuit, pr: PhaseResult) -> Circuit:
    """The circuit ``z I ∘ R_I(f) ∘ c2``; the scalar is a ``1x1`` constant tensored on top."""
    width = arity_out(c2)
    global_rot = Rotation(CycMatrix.identity(2**width), pr.form, axis_name="I" * width or None)
    return Par(scalar_gate(_coerce(pr.scalar)), Seq(global_rot, c2))
