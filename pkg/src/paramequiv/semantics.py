"""Matrix semantics of circuits, exact at rational-multiple-of-pi points and in floating point."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .circuit import Circuit, Constant, Control, Empty, Par, Rotation, Seq, arity_in
from .cycmat import CycMatrix, direct_sum, kron, matmul
from .exactnum import ZERO, exp_i_pi

AnglePoint = tuple[Fraction, ...]

_I2 = CycMatrix.identity(2)


def angle_point(values: Sequence) -> AnglePoint:
    """Normalize ``values`` (each meaning ``value * pi``) to a tuple of Fractions."""
    return tuple(Fraction(v) for v in values)


def rotation_matrix(axis: CycMatrix, angle: Fraction) -> CycMatrix:
    """``cos(-angle*pi/2) I + i sin(-angle*pi/2) axis`` for ``angle`` a multiple of pi."""
    e = exp_i_pi(-Fraction(angle) / 2)
    ebar = e.conjugate()
    cos = (e + ebar) * Fraction(1, 2)
    isin = (e - ebar) * Fraction(1, 2)
    n = axis.rows
    out = []
    for idx, m in enumerate(axis.entries):
        i, j = divmod(idx, n)
        diag = cos if i == j else ZERO
        out.append(diag + isin * m if m else diag)
    return CycMatrix(n, n, out)


def eval_exact(c: Circuit, point: Sequence) -> CycMatrix:
    """Exact matrix of ``c`` at ``theta_j = point[j] * pi``."""
    point = angle_point(point)
    return _eval(c, point)


def _eval(c: Circuit, point: AnglePoint) -> CycMatrix:
    if isinstance(c, Seq):
        return matmul(_eval(c.after, point), _eval(c.before, point))
    if isinstance(c, Par):
        return kron(_eval(c.top, point), _eval(c.bottom, point))
    if isinstance(c, Rotation):
        return rotation_matrix(c.axis, c.form.evaluate(point))
    if isinstance(c, Constant):
        return c.matrix
    if isinstance(c, Control):
        return direct_sum(CycMatrix.identity(2 ** arity_in(c.inner)), _eval(c.inner, point))
    if isinstance(c, Empty):
        return _I2
    raise TypeError(f"not a circuit: {c!r}")


def eval_float(c: Circuit, theta: Sequence[float]) -> np.ndarray:
    """Floating-point matrix of ``c`` at real parameters ``theta`` (radians)."""
    theta = [float(t) for t in theta]
    return _eval_float(c, theta)


def _eval_float(c: Circuit, theta: list[float]) -> np.ndarray:
    if isinstance(c, Seq):
        return _eval_float(c.after, theta) @ _eval_float(c.before, theta)
    if isinstance(c, Par):
        return np.kron(_eval_float(c.top, theta), _eval_float(c.bottom, theta))
    if isinstance(c, Rotation):
        half = -c.form.evaluate_float(theta) / 2
        m = c.axis.to_complex()
        return np.cos(half) * np.eye(m.shape[0]) + 1j * np.sin(half) * m
    if isinstance(c, Constant):
        return c.matrix.to_complex()
    if isinstance(c, Control):
        inner = _eval_float(c.inner, theta)
        n = 2 ** arity_in(c.inner)
        out = np.zeros((n + inner.shape[0], n + inner.shape[1]), dtype=complex)
        out[:n, :n] = np.eye(n)
        out[n:, n:] = inner
        return out
    if isinstance(c, Empty):
        return np.eye(2, dtype=complex)
    raise TypeError(f"not a circuit: {c!r}")
