"""Degree bounds, cutoff grids and probabilistic sample sets.

All angle values returned here are rational multiples of pi in ``[0, 4)``,
the period of ``exp(-i*theta/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .circuit import Circuit, coeff_seq, is_integral, param_count


def kappa(a: Sequence) -> int:
    """``max(sum of positive parts, sum of negated negative parts)`` of an integer vector."""
    pos = sum(x for x in a if x > 0)
    neg = -sum(x for x in a if x < 0)
    return int(max(pos, neg))


def abs_sums(c: Circuit, k: int) -> tuple[int, ...]:
    """Per-parameter sum of ``|a_j|`` over the circuit's coefficient sequence."""
    sums = [0] * k
    for a in coeff_seq(c):
        for j, x in enumerate(a):
            sums[j] += abs(x)
    return tuple(int(s) for s in sums)


def kappa_sum(c: Circuit) -> int:
    return sum(kappa(a) for a in coeff_seq(c))


@dataclass(frozen=True)
class BoundReport:
    lambdas: tuple[int, ...]
    kappa_sums: tuple[int, int]
    kappa_sum_max: int
    total_degree: int
    grid_sizes: tuple[int, ...]
    grid_product: int

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lambdas),
            "kappa_sums": list(self.kappa_sums),
            "kappa_sum_max": self.kappa_sum_max,
            "total_degree_d": self.total_degree,
            "grid_sizes": list(self.grid_sizes),
            "grid_product": self.grid_product,
        }


def common_k(c1: Circuit, c2: Circuit) -> int:
    k1, k2 = param_count(c1), param_count(c2)
    if k1 is not None and k2 is not None and k1 != k2:
        raise ValueError(f"circuits use different parameter counts: {k1} vs {k2}")
    return k1 if k1 is not None else (k2 or 0)


def bound_report(c1: Circuit, c2: Circuit, k: int | None = None) -> BoundReport:
    """Per-parameter lambdas, kappa sums, total degree and grid sizes for an integral pair."""
    if not (is_integral(c1) and is_integral(c2)):
        raise ValueError("bound_report requires integral circuits; integralize first")
    if k is None:
        k = common_k(c1, c2)
    s1, s2 = abs_sums(c1, k), abs_sums(c2, k)
    lambdas = tuple(max(a, b) for a, b in zip(s1, s2))
    ks = (kappa_sum(c1), kappa_sum(c2))
    kmax = max(ks)
    sizes = tuple(2 * lam + 1 for lam in lambdas)
    return BoundReport(
        lambdas=lambdas,
        kappa_sums=ks,
        kappa_sum_max=kmax,
        total_degree=kmax + sum(lambdas),
        grid_sizes=sizes,
        grid_product=math.prod(sizes),
    )


def cutoff_grid(lambda_j: int) -> list[Fraction]:
    """``2*lambda_j + 1`` equally spaced points of ``[0, 4)``; just ``[0]`` when ``lambda_j == 0``."""
    if lambda_j < 0:
        raise ValueError("lambda must be non-negative")
    n = 2 * lambda_j + 1
    return [Fraction(4 * t, n) for t in range(n)]


def sample_size(d: int, p: Fraction) -> tuple[int, int]:
    """``(N, M)``: ``N = ceil(d/p)`` (at least 1) and ``M`` the least multiple of 4 with ``M >= N``."""
    p = Fraction(p)
    if not (0 < p <= 1):
        raise ValueError(f"failure probability must lie in (0, 1], got {p}")
    if d < 0:
        raise ValueError("degree must be non-negative")
    n = max(1, math.ceil(Fraction(d) / p))
    m = -(-n // 4) * 4
    return n, m


def sample_set(d: int, p) -> list[Fraction]:
    """``{4t/M : t < M}`` so that ``d/|S| <= p``."""
    _, m = sample_size(d, p)
    return [Fraction(4 * t, m) for t in range(m)]


def failure_bound(d: int, size: int) -> Fraction:
    """Schwartz-Zippel style bound ``d/|S|`` on a false positive."""
    return Fraction(d, size)


def denominator_lcm(values: Sequence[Fraction]) -> int:
    """lcm of the denominators of ``values``; governs the cyclotomic order of evaluations."""
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def min_denominator_lower_bound(size: int, period: int = 4) -> int:
    """Any ``size`` distinct rationals in ``[0, period)`` have denominator lcm ``>= ceil(size/period)``."""
    return -(-size // period)
