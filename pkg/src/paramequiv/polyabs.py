"""Polynomial abstraction: circuit semantics over Laurent polynomials in ``z_j = exp(-i*theta_j/2)``.

Used as a symbolic equivalence oracle for small integral circuits and as the
test bed for the degree bounds in :mod:`paramequiv.bounds`.  Polynomials are
sparse maps from integer exponent vectors to nonzero cyclotomic coefficients;
multiplication is naive convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .circuit import AffineForm, Circuit, Constant, Control, Empty, Par, Rotation, Seq, arity_in, arity_out
from .errors import ArityMismatchError, ResourceLimitError
from .exactnum import I as IMAG_UNIT
from .exactnum import ONE, ZERO, Cyclotomic, Scalar, _coerce, exp_i_pi, format_scalar

DEFAULT_TERM_BUDGET = 10**6

Exponent = tuple[int, ...]


class LaurentPoly:
    """Multivariate Laurent polynomial in ``nvars`` variables with cyclotomic coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Cyclotomic] = {}
        for exps, coef in items:
            exps = tuple(int(t) for t in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has wrong length for {nvars} variables")
            coef = _coerce(coef)
            if exps in clean:
                coef = clean[exps] + coef
            if coef:
                clean[exps] = coef
            else:
                clean.pop(exps, None)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Cyclotomic]) -> LaurentPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> LaurentPoly:
        value = _coerce(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: Scalar = 1) -> LaurentPoly:
        return cls(len(exps), {tuple(exps): coef})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _check(self, other: LaurentPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._raw(self.nvars, out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, Cyclotomic] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if e in out:
                    prod = out[e] + prod
                if prod:
                    out[e] = prod
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    def scale(self, z: Scalar) -> LaurentPoly:
        z = _coerce(z)
        if not z:
            return LaurentPoly._raw(self.nvars, {})
        return LaurentPoly._raw(self.nvars, {e: c * z for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, values: Sequence[Scalar]) -> Cyclotomic:
        """Exact value at ``z_j = values[j]`` (each nonzero when negative powers occur)."""
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        values = [_coerce(v) for v in values]
        powers: list[dict[int, Cyclotomic]] = [{0: ONE} for _ in values]

        def power(j: int, t: int) -> Cyclotomic:
            cache = powers[j]
            if t not in cache:
                base = values[j] if t > 0 else values[j].inverse()
                cache[t] = power(j, t - 1 if t > 0 else t + 1) * base
            return cache[t]

        acc = ZERO
        for exps, coef in self.terms.items():
            term = coef
            for j, t in enumerate(exps):
                if t:
                    term = term * power(j, t)
            acc = acc + term
        return acc

    def evaluate_complex(self, values: Sequence[complex]) -> complex:
        acc = 0j
        for exps, coef in self.terms.items():
            term = coef.to_complex()
            for v, t in zip(values, exps):
                term *= complex(v) ** t
            acc += term
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, reverse=True):
            coef = self.terms[exps]
            mono = "*".join(
                f"z{j + 1}" if t == 1 else f"z{j + 1}^{t}" for j, t in enumerate(exps) if t
            )
            c = format_scalar(coef)
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


@dataclass(frozen=True)
class Degrees:
    """Degree data of a nonzero Laurent polynomial; ``None`` fields mark the zero polynomial."""

    pos_by_var: tuple[int, ...] | None
    neg_by_var: tuple[int, ...] | None
    total_pos: int | None

    @property
    def is_minus_infinity(self) -> bool:
        return self.total_pos is None


MINUS_INFINITY = Degrees(None, None, None)


def degrees(p: LaurentPoly) -> Degrees:
    """Per-variable positive/negative degrees and the total positive degree."""
    if not p.terms:
        return MINUS_INFINITY
    k = p.nvars
    pos = [0] * k
    neg = [0] * k
    total = 0
    for exps in p.terms:
        total = max(total, sum(t for t in exps if t > 0))
        for j, t in enumerate(exps):
            if t > pos[j]:
                pos[j] = t
            if -t > neg[j]:
                neg[j] = -t
    return Degrees(tuple(pos), tuple(neg), total)


def _require_integral(f: AffineForm) -> list[int]:
    if not f.is_integral():
        raise ValueError(f"polynomial semantics needs integer coefficients, got {f}")
    return [int(a) for a in f.coeffs]


def _half_angle_terms(f: AffineForm) -> tuple[list[int], Cyclotomic]:
    a = _require_integral(f)
    return a, exp_i_pi(-f.offset / 2)


def cpoly(f: AffineForm) -> LaurentPoly:
    """``(c/2) z^a + (1/(2c)) z^-a`` with ``c = exp(-i*offset*pi/2)``."""
    a, c = _half_angle_terms(f)
    half = Fraction(1, 2)
    return LaurentPoly(len(a), [(a, c * half), ([-t for t in a], c.inverse() * half)])


def spoly(f: AffineForm) -> LaurentPoly:
    """``(-i c/2) z^a + (i/(2c)) z^-a`` with ``c = exp(-i*offset*pi/2)``."""
    a, c = _half_angle_terms(f)
    ih = IMAG_UNIT * Fraction(1, 2)
    return LaurentPoly(len(a), [(a, -ih * c), ([-t for t in a], ih * c.inverse())])


class PolyMatrix:
    """Dense matrix of :class:`LaurentPoly` entries (row-major)."""

    __slots__ = ("rows", "cols", "entries", "nvars")

    def __init__(self, rows: int, cols: int, entries: Sequence[LaurentPoly], nvars: int):
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match shape")
        self.rows, self.cols, self.entries, self.nvars = rows, cols, tuple(entries), nvars

    @classmethod
    def identity(cls, n: int, nvars: int) -> PolyMatrix:
        one, zero = LaurentPoly.constant(1, nvars), LaurentPoly.constant(0, nvars)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], nvars)

    @classmethod
    def from_constant(cls, m, nvars: int) -> PolyMatrix:
        return cls(m.rows, m.cols, [LaurentPoly.constant(e, nvars) for e in m.entries], nvars)

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def term_count(self) -> int:
        return sum(len(e) for e in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def evaluate(self, values: Sequence[Scalar]):
        from .cycmat import CycMatrix

        return CycMatrix(self.rows, self.cols, [e.evaluate(values) for e in self.entries])

    def __str__(self) -> str:
        return "\n".join(
            "[" + ", ".join(str(self[i, j]) for j in range(self.cols)) + "]" for i in range(self.rows)
        )


def _pmatmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    zero = LaurentPoly.constant(0, a.nvars)
    out = []
    for i in range(a.rows):
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                x, y = a.entries[i * a.cols + k], b.entries[k * b.cols + j]
                if x and y:
                    acc = acc + x * y
            out.append(acc)
    return PolyMatrix(a.rows, b.cols, out, a.nvars)


def _pkron(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    zero = LaurentPoly.constant(0, a.nvars)
    out = []
    for i in range(a.rows):
        for r in range(b.rows):
            for j in range(a.cols):
                x = a.entries[i * a.cols + j]
                for s in range(b.cols):
                    y = b.entries[r * b.cols + s]
                    out.append(x * y if x and y else zero)
    return PolyMatrix(a.rows * b.rows, a.cols * b.cols, out, a.nvars)


def _pdirect_sum(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    zero = LaurentPoly.constant(0, a.nvars)
    out = []
    for i in range(a.rows):
        out.extend(a.entries[i * a.cols : (i + 1) * a.cols])
        out.extend([zero] * b.cols)
    for i in range(b.rows):
        out.extend([zero] * a.cols)
        out.extend(b.entries[i * b.cols : (i + 1) * b.cols])
    return PolyMatrix(a.rows + b.rows, a.cols + b.cols, out, a.nvars)


def rotation_poly(axis, f: AffineForm) -> PolyMatrix:
    """``CPoly(f) I + i SPoly(f) axis``."""
    k = f.k
    cp = cpoly(f)
    isp = spoly(f).scale(IMAG_UNIT)
    n = axis.rows
    out = []
    for idx, m in enumerate(axis.entries):
        i, j = divmod(idx, n)
        entry = cp if i == j else LaurentPoly.constant(0, k)
        if m:
            entry = entry + isp.scale(m)
        out.append(entry)
    return PolyMatrix(n, n, out, k)


def poly_semantics(c: Circuit, nvars: int | None = None, term_budget: int = DEFAULT_TERM_BUDGET) -> PolyMatrix:
    """Matrix of Laurent polynomials abstracting ``c``; requires integer rotation coefficients."""
    if nvars is None:
        from .circuit import param_count

        nvars = param_count(c) or 0

    def check(m: PolyMatrix) -> PolyMatrix:
        if m.term_count() > term_budget:
            raise ResourceLimitError(f"polynomial semantics exceeded the budget of {term_budget} terms")
        return m

    def go(node: Circuit) -> PolyMatrix:
        if isinstance(node, Seq):
            return check(_pmatmul(go(node.after), go(node.before)))
        if isinstance(node, Par):
            return check(_pkron(go(node.top), go(node.bottom)))
        if isinstance(node, Rotation):
            return rotation_poly(node.axis, node.form.padded(nvars))
        if isinstance(node, Constant):
            return PolyMatrix.from_constant(node.matrix, nvars)
        if isinstance(node, Control):
            return _pdirect_sum(PolyMatrix.identity(2 ** arity_in(node.inner), nvars), go(node.inner))
        if isinstance(node, Empty):
            return PolyMatrix.identity(2, nvars)
        raise TypeError(f"not a circuit: {node!r}")

    return go(c)


def substitution_point(point: Sequence) -> list[Cyclotomic]:
    """``z_j = exp(-i*theta_j/2)`` for ``theta_j = point[j]*pi``."""
    return [exp_i_pi(-Fraction(v) / 2) for v in point]


def symbolic_equal(c1: Circuit, c2: Circuit, term_budget: int = DEFAULT_TERM_BUDGET) -> bool:
    """Entrywise equality of the two polynomial semantics."""
    if (arity_in(c1), arity_out(c1)) != (arity_in(c2), arity_out(c2)):
        raise ArityMismatchError(
            f"arities differ: {arity_in(c1)}->{arity_out(c1)} vs {arity_in(c2)}->{arity_out(c2)}"
        )
    from .circuit import param_count

    k = max(param_count(c1) or 0, param_count(c2) or 0)
    return poly_semantics(c1, k, term_budget) == poly_semantics(c2, k, term_budget)
