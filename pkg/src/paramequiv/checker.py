"""Equivalence decision procedures over parameterized circuits.

Three modes share one pipeline: validate, integralize, compute bounds, then
either scan the full cutoff grid (``exact``), draw random points from the
probabilistic sample set (``prob``) or compare polynomial semantics
(``symbolic``).  Any of them can run modulo an affine global phase.  Every
counterexample is re-evaluated on the original circuits before it is
returned.
"""

from __future__ import annotations

import itertools
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .bounds import BoundReport, bound_report, common_k, cutoff_grid, sample_set
from .circuit import Circuit, arity_in, arity_out, constants_injective, validate
from .errors import ArityMismatchError, CircuitValidationError, ResourceLimitError
from .exactnum import Cyclotomic
from .polyabs import DEFAULT_TERM_BUDGET, symbolic_equal
from .semantics import AnglePoint, eval_exact
from .transform import PhaseResult, find_phase, integralize, phase_augment, rescale, to_original

DEFAULT_MAX_EVALS = 10**6
MAX_EVALS_ENV = "PARAMEQUIV_MAX_EVALS"
AUTO_EXACT_LIMIT = 10**4
AUTO_PROBABILITY = Fraction(1, 1000)


def get_max_evals() -> int:
    raw = os.environ.get(MAX_EVALS_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{MAX_EVALS_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_EVALS


@dataclass(frozen=True)
class _VerdictBase:
    mode: str
    evaluations: int
    bounds: BoundReport | None = None
    scaling: tuple[int, ...] = ()
    phase: PhaseResult | None = None
    warnings: tuple[str, ...] = ()

    @property
    def kind(self) -> str:
        return type(self).__name__

    @property
    def modulo_phase(self) -> bool:
        return self.phase is not None


@dataclass(frozen=True)
class Equivalent(_VerdictBase):
    """Equal for every parameter value (optionally up to the recorded phase)."""


@dataclass(frozen=True)
class ProbablyEquivalent(_VerdictBase):
    """Equal at every sampled point; ``failure_bound`` caps the false-positive probability."""

    failure_bound: Fraction = Fraction(1)
    samples: int = 0
    trials: int = 1


@dataclass(frozen=True)
class NotEquivalent(_VerdictBase):
    """``witness`` (multiples of pi, original parameterization) separates the circuits at ``entry``."""

    witness: AnglePoint = ()
    entry: tuple[int, int] = (0, 0)
    lhs: Cyclotomic | None = None
    rhs: Cyclotomic | None = None


Verdict = Union[Equivalent, ProbablyEquivalent, NotEquivalent]


@dataclass
class _Prepared:
    c1: Circuit
    c2: Circuit
    k: int
    int1: Circuit
    int2: Circuit
    scaling: tuple[int, ...]
    phase: PhaseResult | None = None
    warnings: list[str] = field(default_factory=list)

    def original_rhs(self) -> Circuit:
        """Right-hand circuit actually compared, in the original parameterization."""
        if self.phase is None:
            return self.c2
        if all(s == 1 for s in self.scaling):
            return self.int2
        return rescale(self.int2, [Fraction(1, s) for s in self.scaling])


def _prepare(c1: Circuit, c2: Circuit, k: int | None, phase: bool) -> _Prepared:
    problems = [f"left: {p}" for p in validate(c1, k)] + [f"right: {p}" for p in validate(c2, k)]
    if problems:
        raise CircuitValidationError(problems)
    shape1, shape2 = (arity_in(c1), arity_out(c1)), (arity_in(c2), arity_out(c2))
    if shape1 != shape2:
        raise ArityMismatchError(f"arities differ: {shape1[0]}->{shape1[1]} vs {shape2[0]}->{shape2[1]}")
    if k is None:
        k = common_k(c1, c2)
    int1, int2, v = integralize(c1, c2, k)
    prep = _Prepared(c1, c2, k, int1, int2, v)
    if phase:
        if not (constants_injective(c1) and constants_injective(c2)):
            prep.warnings.append("phase inference assumes injective constant gates; the inferred phase may be wrong")
        pr = find_phase(int1, int2, k)
        prep.phase = pr
        prep.int2 = phase_augment(int2, pr)
    return prep


def _witness(prep: _Prepared, point: AnglePoint, mode: str, evaluations: int, bounds) -> NotEquivalent:
    original = to_original(point, prep.scaling)
    m1 = eval_exact(prep.c1, original)
    m2 = eval_exact(prep.original_rhs(), original)
    entry = m1.first_difference(m2)
    if entry is None:
        raise AssertionError(f"counterexample {original} does not re-evaluate to a difference")
    return NotEquivalent(
        mode=mode,
        evaluations=evaluations,
        bounds=bounds,
        scaling=prep.scaling,
        phase=prep.phase,
        warnings=tuple(prep.warnings),
        witness=original,
        entry=entry,
        lhs=m1[entry],
        rhs=m2[entry],
    )


def _differs(c1: Circuit, c2: Circuit, point: AnglePoint) -> bool:
    return eval_exact(c1, point) != eval_exact(c2, point)


def _scan_chunk(c1: Circuit, c2: Circuit, grids: list[list[Fraction]], start: int, stop: int) -> int | None:
    """Index of the first differing grid point in ``[start, stop)``, lexicographic order."""
    for idx, point in enumerate(itertools.islice(itertools.product(*grids), start, stop), start):
        if _differs(c1, c2, point):
            return idx
    return None


def _point_at(grids: list[list[Fraction]], idx: int) -> AnglePoint:
    out = []
    for g in reversed(grids):
        idx, r = divmod(idx, len(g))
        out.append(g[r])
    return tuple(reversed(out))


def _default_jobs() -> int:
    return os.cpu_count() or 1


def check_exact(
    c1: Circuit,
    c2: Circuit,
    budget: int | None = None,
    *,
    k: int | None = None,
    jobs: int | None = 1,
    phase: bool = False,
) -> Verdict:
    """Decide equivalence by exhaustive evaluation on the cutoff grid.

    Raises:
        ResourceLimitError: the grid has more than ``budget`` points.
        ArityMismatchError: the circuits have different input/output arities.
        CircuitValidationError: either circuit is ill-formed.
    """
    prep = _prepare(c1, c2, k, phase)
    bounds = bound_report(prep.int1, prep.int2, prep.k)
    budget = get_max_evals() if budget is None else budget
    total = bounds.grid_product
    if total > budget:
        raise ResourceLimitError(
            f"cutoff grid has {total} points, above the ceiling of {budget}; use probabilistic mode"
        )
    grids = [cutoff_grid(lam) for lam in bounds.lambdas]
    jobs = _default_jobs() if jobs is None else max(1, jobs)

    if jobs == 1 or total < 2 * jobs:
        hit = _scan_chunk(prep.int1, prep.int2, grids, 0, total)
    else:
        step = -(-total // (jobs * 4))
        bounds_list = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_scan_chunk, prep.int1, prep.int2, grids, s, e) for s, e in bounds_list]
            hits = [f.result() for f in futures]
        found = [h for h in hits if h is not None]
        hit = min(found) if found else None

    mode = "exact"
    if hit is not None:
        return _witness(prep, _point_at(grids, hit), mode, hit + 1, bounds)
    return Equivalent(
        mode=mode,
        evaluations=total,
        bounds=bounds,
        scaling=prep.scaling,
        phase=prep.phase,
        warnings=tuple(prep.warnings),
    )


def check_probabilistic(
    c1: Circuit,
    c2: Circuit,
    p=Fraction(1, 1000),
    seed: int = 0,
    *,
    trials: int = 1,
    k: int | None = None,
    phase: bool = False,
) -> Verdict:
    """Compare at ``trials`` independent uniform points of the sample set.

    Never reports a false NotEquivalent.  A ProbablyEquivalent result carries
    the bound ``(d/|S|) ** trials`` on the chance that the circuits differ.
    """
    p = Fraction(p)
    if not (0 < p <= 1):
        raise ValueError(f"failure probability must lie in (0, 1], got {p}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    prep = _prepare(c1, c2, k, phase)
    bounds = bound_report(prep.int1, prep.int2, prep.k)
    samples = sample_set(bounds.total_degree, p)
    rng = random.Random(seed)
    for t in range(trials):
        point = tuple(rng.choice(samples) for _ in range(prep.k))
        if _differs(prep.int1, prep.int2, point):
            return _witness(prep, point, "prob", t + 1, bounds)
    return ProbablyEquivalent(
        mode="prob",
        evaluations=trials,
        bounds=bounds,
        scaling=prep.scaling,
        phase=prep.phase,
        warnings=tuple(prep.warnings),
        failure_bound=Fraction(bounds.total_degree, len(samples)) ** trials,
        samples=len(samples),
        trials=trials,
    )


def check_symbolic(
    c1: Circuit,
    c2: Circuit,
    term_budget: int = DEFAULT_TERM_BUDGET,
    *,
    k: int | None = None,
    phase: bool = False,
    budget: int | None = None,
) -> Verdict:
    """Compare polynomial semantics; a witness for inequality comes from the cutoff grid."""
    prep = _prepare(c1, c2, k, phase)
    bounds = bound_report(prep.int1, prep.int2, prep.k)
    if symbolic_equal(prep.int1, prep.int2, term_budget):
        return Equivalent(
            mode="symbolic",
            evaluations=0,
            bounds=bounds,
            scaling=prep.scaling,
            phase=prep.phase,
            warnings=tuple(prep.warnings),
        )
    budget = get_max_evals() if budget is None else budget
    if bounds.grid_product > budget:
        raise ResourceLimitError(
            f"polynomials differ but the witness grid has {bounds.grid_product} points, above {budget}"
        )
    grids = [cutoff_grid(lam) for lam in bounds.lambdas]
    hit = _scan_chunk(prep.int1, prep.int2, grids, 0, bounds.grid_product)
    if hit is None:
        raise AssertionError("polynomial semantics differ but no grid point separates the circuits")
    return _witness(prep, _point_at(grids, hit), "symbolic", hit + 1, bounds)


def check_phase(c1: Circuit, c2: Circuit, mode: str = "exact", **kwargs) -> Verdict:
    """Equivalence modulo an affine global phase; the verdict carries the inferred phase."""
    return check(c1, c2, mode=mode, phase=True, **kwargs)


def recommend_mode(report: BoundReport) -> str:
    return "exact" if report.grid_product <= AUTO_EXACT_LIMIT else "prob"


def check(
    c1: Circuit,
    c2: Circuit,
    mode: str = "auto",
    *,
    p=None,
    seed: int = 0,
    trials: int = 1,
    budget: int | None = None,
    jobs: int | None = 1,
    phase: bool = False,
    k: int | None = None,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> Verdict:
    """Dispatch on ``mode`` (``auto``, ``exact``, ``prob`` or ``symbolic``).

    ``auto`` picks exact when the cutoff grid has at most 10^4 points and
    probabilistic with ``p = 1/1000`` otherwise.
    """
    if mode == "auto":
        prep = _prepare(c1, c2, k, False)
        mode = recommend_mode(bound_report(prep.int1, prep.int2, prep.k))
        if mode == "prob" and p is None:
            p = AUTO_PROBABILITY
    if mode == "exact":
        return check_exact(c1, c2, budget, k=k, jobs=jobs, phase=phase)
    if mode == "prob":
        return check_probabilistic(
            c1, c2, AUTO_PROBABILITY if p is None else p, seed, trials=trials, k=k, phase=phase
        )
    if mode == "symbolic":
        return check_symbolic(c1, c2, term_budget, k=k, phase=phase, budget=budget)
    raise ValueError(f"unknown mode {mode!r}")


__all__ = [
    "Equivalent",
    "NotEquivalent",
    "ProbablyEquivalent",
    "Verdict",
    "check",
    "check_exact",
    "check_phase",
    "check_probabilistic",
    "check_symbolic",
]
