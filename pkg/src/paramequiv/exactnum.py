"""Exact arithmetic in the universal cyclotomic field.

Every value is an element of some ``Q(zeta_n)`` stored in the power basis
``1, zeta_n, ..., zeta_n**(phi(n)-1)`` after reduction modulo the cyclotomic
polynomial ``Phi_n``.  Coefficients are kept as an integer vector over a single
positive common denominator, which makes the representation canonical within a
fixed order: two elements of the same order are equal exactly when their
vectors and denominators agree.  Elements of different orders are compared by
lifting both to the lcm order.

Integer vectors are numpy ``int64`` arrays while every intermediate result is
provably below ``2**62``; otherwise the same code runs on ``object`` arrays of
Python integers, so precision is never lost.

Rationals are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
import os
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import ParseError, ResourceLimitError

Rational = Fraction
Scalar = Union["Cyclotomic", Fraction, int]

DEFAULT_MAX_ORDER = 2**20

_LIMIT = 1 << 62
# Orders whose reduction table would exceed this many entries fall back to
# schoolbook long division.
_TABLE_ENTRIES = 2_000_000
_FLOAT_EXACT = 1 << 52

_max_order = int(os.environ.get("PARAMEQUIV_MAX_ORDER", DEFAULT_MAX_ORDER))


class OrderLimitError(ResourceLimitError):
    """The lcm order of an operation exceeded the configured cap."""


def get_max_order() -> int:
    return _max_order


def set_max_order(n: int) -> None:
    """Change the largest cyclotomic order any operation may produce."""
    global _max_order
    if n < 1:
        raise ValueError("maximum order must be positive")
    _max_order = int(n)


# ---------------------------------------------------------------------------
# Number theory helpers


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``n`` as ``((p, e), ...)`` by trial division."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def mobius(n: int) -> int:
    fs = factorize(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of ``Phi_n``, lowest degree first.

    Uses ``Phi_n(x) = Phi_r(x**(n/r))`` with ``r = rad(n)`` and the Mobius
    product ``Phi_r = prod_{d | r} (x**d - 1)**mu(r/d)`` for squarefree ``r``.
    """
    if n < 1:
        raise ValueError("cyclotomic_polynomial expects n >= 1")
    rad = 1
    for p, _ in factorize(n):
        rad *= p
    poly = [1]
    divs = _divisors(rad)
    # multiply the numerator factors first so every division is exact
    for d in divs:
        if mobius(rad // d) == 1:
            new = [0] * (len(poly) + d)
            for i, c in enumerate(poly):
                new[i + d] += c
                new[i] -= c
            poly = new
    for d in divs:
        if mobius(rad // d) == -1:
            q = [0] * (len(poly) - d)
            for i in range(len(q)):
                q[i] = (q[i - d] if i >= d else 0) - poly[i]
            poly = q
    if poly[-1] < 0:
        poly = [-c for c in poly]
    step = n // rad
    if step == 1:
        return tuple(poly)
    out = [0] * ((len(poly) - 1) * step + 1)
    for i, c in enumerate(poly):
        out[i * step] = c
    return tuple(out)


class _Field:
    """Per-order cached data for reduction modulo ``Phi_n``.

    ``Phi_n(x) = Phi_r(x**s)`` where ``r`` is the radical of ``n`` and
    ``s = n / r``.  Exponents therefore split into ``s`` residue classes that
    are reduced independently with the small ``r x phi(r)`` table of the
    squarefree order.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = totient(n)
        self.poly = cyclotomic_polynomial(n)
        self.poly_terms = [(j, c) for j, c in enumerate(self.poly[: self.phi]) if c]
        self.rad = math.prod(p for p, _ in factorize(n)) if n > 1 else 1
        self.stride = n // self.rad
        self.red: np.ndarray | None = None
        self.red_bound = 0
        self._red_obj: np.ndarray | None = None
        self._red_float: np.ndarray | None = None
        self._division: tuple | None = None
        if self.rad * totient(self.rad) <= _TABLE_ENTRIES:
            self._build_table()
        else:
            self._build_division()

    def _build_division(self) -> None:
        # quotient by Phi_r through the power-series inverse of its reversal (Phi_r(0) = 1)
        r = self.rad
        base = cyclotomic_polynomial(r)
        phi = len(base) - 1
        h = r - phi
        rev = base[::-1]
        inv = [0] * h
        inv[0] = 1
        for i in range(1, h):
            inv[i] = -sum(rev[j] * inv[i - j] for j in range(1, min(i, phi) + 1) if rev[j])
        inv_l1 = sum(abs(x) for x in inv)
        base_l1 = sum(abs(x) for x in base)
        if inv_l1 * base_l1 < _FLOAT_EXACT:
            self._division = (phi, np.array(inv, dtype=np.float64), np.array(base, dtype=np.float64), inv_l1, base_l1)

    def _build_table(self) -> None:
        r = self.rad
        phi = totient(r)
        base = cyclotomic_polynomial(r)
        rows = np.zeros((r, phi), dtype=object)
        for e in range(min(r, phi)):
            rows[e, e] = 1
        low = np.array(base[:phi], dtype=object)
        for e in range(phi, r):
            prev = rows[e - 1]
            top = prev[phi - 1]
            row = np.empty(phi, dtype=object)
            row[0] = 0
            row[1:] = prev[:-1]
            if top:
                row = row - top * low
            rows[e] = row
        colsum = max(sum(abs(x) for x in rows[:, j]) for j in range(phi))
        self.red_bound = int(colsum)
        # only exponents >= phi need reducing; lower rows of the table are the identity
        self._red_obj = np.ascontiguousarray(rows[phi:].T)
        if colsum < _LIMIT:
            self.red = self._red_obj.astype(np.int64)
            self._red_float = self.red.astype(np.float64)

    @property
    def has_table(self) -> bool:
        return self._red_obj is not None

    def reduce(self, v: np.ndarray, mag: int) -> np.ndarray:
        """Reduce a vector of exponents ``0..len(v)-1`` (``len(v) <= n``)."""
        if self._red_obj is None:
            out = self._fft_division(v, mag)
            return self._long_division(v) if out is None else out
        n = self.n
        if len(v) < n:
            v = np.concatenate([v, np.zeros(n - len(v), dtype=v.dtype)])
        grid = v.reshape(self.rad, self.stride)
        phi = self.rad - self._red_obj.shape[1]
        low, high = grid[:phi], grid[phi:]
        rows = np.flatnonzero(high.any(axis=1))
        if len(rows) == 0:
            return low.reshape(-1).copy()
        high = high[rows]
        if self.red is not None and v.dtype != object and mag * self.red_bound < _LIMIT:
            if mag * self.red_bound < _FLOAT_EXACT:
                part = np.rint(self._red_float[:, rows] @ high.astype(np.float64)).astype(np.int64)
            else:
                part = self.red[:, rows] @ high
            return (low + part).reshape(-1)
        return (low.astype(object) + self._red_obj[:, rows] @ high.astype(object)).reshape(-1)

    def _fft_division(self, v: np.ndarray, mag: int) -> np.ndarray | None:
        if self._division is None or v.dtype == object:
            return None
        phi, inv, base, inv_l1, base_l1 = self._division
        if mag * inv_l1 * base_l1 >= _FLOAT_EXACT:
            return None
        n, r = self.n, self.rad
        if len(v) < n:
            v = np.concatenate([v, np.zeros(n - len(v), dtype=v.dtype)])
        grid = v.reshape(r, self.stride)
        h = r - phi
        top = grid[phi:][::-1].astype(np.float64)
        size = 2 * h - 1
        qrev = np.fft.irfft(np.fft.rfft(top, size, axis=0) * np.fft.rfft(inv, size)[:, None], size, axis=0)[:h]
        quot = np.rint(qrev[::-1])
        size = h + phi
        prod = np.fft.irfft(np.fft.rfft(quot, size, axis=0) * np.fft.rfft(base, size)[:, None], size, axis=0)[:phi]
        return (grid[:phi] - np.rint(prod).astype(np.int64)).reshape(-1)

    def _long_division(self, v: np.ndarray) -> np.ndarray:
        work = [int(x) for x in v]
        phi = self.phi
        for i in range(len(work) - 1, phi - 1, -1):
            c = work[i]
            if c:
                base = i - phi
                for j, p in self.poly_terms:
                    work[base + j] -= c * p
        work = work[:phi] + [0] * max(0, phi - len(work))
        return np.array(work, dtype=object)

    def power_row(self, e: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[e % self.n] = 1
        return self.reduce(v, 1)


_field_lock = threading.Lock()
_fields: dict[int, _Field] = {}


def _field(n: int) -> _Field:
    f = _fields.get(n)
    if f is None:
        with _field_lock:
            f = _fields.get(n)
            if f is None:
                f = _Field(n)
                _fields[n] = f
    return f


def _mag(arr: np.ndarray) -> int:
    if arr.dtype == object:
        return max((abs(x) for x in arr), default=0)
    if len(arr) == 0:
        return 0
    return int(np.abs(arr).max())


def _check_order(m: int) -> None:
    if m > _max_order:
        raise OrderLimitError(f"cyclotomic order {m} exceeds the configured cap {_max_order}")


# ---------------------------------------------------------------------------
# Polynomial helpers over Q used by inversion


def _pdeg(p: list[Fraction]) -> int:
    d = len(p) - 1
    while d >= 0 and p[d] == 0:
        d -= 1
    return d


def _pdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = _pdeg(b)
    lead = b[db]
    da = _pdeg(a)
    if da < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = a[i + db] / lead
        q[i] = c
        if c:
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    return q, a[:db] if db > 0 else [Fraction(0)]


def _pmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _psub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


# ---------------------------------------------------------------------------


class Cyclotomic:
    """An immutable element of ``Q(zeta_n)``.

    Build values with :func:`zeta`, :func:`exp_i_pi`, :meth:`from_rational` or
    arithmetic on existing values; ints and Fractions mix freely.
    """

    __slots__ = ("_n", "_num", "_den", "_m")

    def __init__(self, value: Scalar = 0):
        if isinstance(value, Cyclotomic):
            self._n, self._num, self._den, self._m = value._n, value._num, value._den, value._m
            return
        q = Fraction(value)
        num = np.array([q.numerator], dtype=np.int64 if abs(q.numerator) < _LIMIT else object)
        self._set(1, num, q.denominator)

    @classmethod
    def _make(cls, n: int, num: np.ndarray, den: int) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj._set(n, num, den)
        return obj

    def _set(self, n: int, num: np.ndarray, den: int) -> None:
        if num.dtype == object:
            g = math.gcd(den, *[int(x) for x in num])
        else:
            g = math.gcd(den, int(np.gcd.reduce(num)))
        if g > 1:
            num = num // g
            den //= g
        mag = _mag(num)
        if mag == 0:
            den = 1
        if num.dtype == object and mag < _LIMIT:
            num = num.astype(np.int64)
        num.flags.writeable = False
        self._n = n
        self._num = num
        self._den = int(den)
        self._m = mag

    def __reduce__(self):
        return (_rebuild, (self._n, [int(x) for x in self._num], self._den))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> Cyclotomic:
        return cls(q)

    @classmethod
    def root_of_unity(cls, n: int, e: int = 1) -> Cyclotomic:
        """``zeta_n ** e``."""
        if n < 1:
            raise ValueError("root of unity order must be >= 1")
        _check_order(n)
        f = _field(n)
        return cls._make(n, f.power_row(e).copy(), 1)

    # -- inspection ---------------------------------------------------------

    @property
    def order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> dict[int, Fraction]:
        """Nonzero power-basis coefficients ``{exponent: Fraction}``."""
        return {
            e: Fraction(int(c), self._den) for e, c in enumerate(self._num) if c
        }

    def is_zero(self) -> bool:
        return self._m == 0

    def __bool__(self) -> bool:
        return self._m != 0

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(int(self._num[0]), self._den)

    def to_complex(self) -> complex:
        n = self._n
        nz = np.nonzero(self._num)[0]
        if len(nz) == 0:
            return 0j
        angles = np.exp(2j * np.pi * nz / n)
        vals = np.array([float(Fraction(int(self._num[e]), self._den)) for e in nz])
        return complex(np.sum(vals * angles))

    def __complex__(self) -> complex:
        return self.to_complex()

    # -- order handling -----------------------------------------------------

    def _lift(self, m: int) -> np.ndarray:
        if m == self._n:
            return self._num
        step = m // self._n
        f = _field(m)
        v = np.zeros(m, dtype=self._num.dtype)
        v[np.arange(len(self._num)) * step] = self._num
        return f.reduce(v, self._m)

    def lift(self, m: int) -> Cyclotomic:
        """The same value represented at order ``m`` (a multiple of the order)."""
        if m % self._n:
            raise ValueError(f"order {m} is not a multiple of {self._n}")
        _check_order(m)
        if m == self._n:
            return self
        return Cyclotomic._make(m, self._lift(m).copy(), self._den)

    @staticmethod
    def _common(a: Cyclotomic, b: Cyclotomic) -> int:
        if a._n == b._n:
            return a._n
        if a._n == 1:
            return b._n
        if b._n == 1:
            return a._n
        m = a._n * b._n // math.gcd(a._n, b._n)
        _check_order(m)
        return m

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: Scalar) -> Cyclotomic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._m:
            return self
        if not self._m:
            return other
        m = Cyclotomic._common(self, other)
        x, y = self._lift(m), other._lift(m)
        return Cyclotomic._make(m, *_lincomb(x, self._den, y, other._den))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._make(self._n, -self._num, self._den)

    def __pos__(self) -> Cyclotomic:
        return self

    def __sub__(self, other: Scalar) -> Cyclotomic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Scalar) -> Cyclotomic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._m or not other._m:
            return ZERO
        if other._n == 1:
            return self._scale(int(other._num[0]), other._den)
        if self._n == 1:
            return other._scale(int(self._num[0]), self._den)
        m = Cyclotomic._common(self, other)
        x, y = self._lift(m), other._lift(m)
        f = _field(m)
        mx, my = _mag(x), _mag(y)
        bound = mx * my * min(len(x), len(y)) * 2
        if x.dtype == object or y.dtype == object or bound * max(f.red_bound, 1) >= _LIMIT:
            x, y = x.astype(object), y.astype(object)
        c = _convolve(x, y, bound)
        if len(c) > m:
            extra = len(c) - m
            c[:extra] += c[m:]
            c = c[:m]
        r = f.reduce(c, bound)
        return Cyclotomic._make(m, r, self._den * other._den)

    __rmul__ = __mul__

    def _scale(self, p: int, q: int) -> Cyclotomic:
        if p == 1 and q == 1:
            return self
        num = self._num
        if num.dtype == object or self._m * abs(p) >= _LIMIT:
            num = num.astype(object)
        return Cyclotomic._make(self._n, num * p, self._den * q)

    def __truediv__(self, other: Scalar) -> Cyclotomic:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> Cyclotomic:
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> Cyclotomic:
        """Complex conjugate: ``zeta_n -> zeta_n**(n-1)``."""
        n = self._n
        if n <= 2:
            return self
        f = _field(n)
        v = np.zeros(n, dtype=self._num.dtype)
        idx = (-np.arange(len(self._num))) % n
        v[idx] = self._num
        return Cyclotomic._make(n, f.reduce(v, self._m), self._den)

    conj = conjugate

    def inverse(self) -> Cyclotomic:
        if not self._m:
            raise ZeroDivisionError("inverse of zero in the cyclotomic field")
        nz = np.nonzero(self._num)[0]
        if len(nz) == 1:
            e = int(nz[0])
            c = Fraction(int(self._num[e]), self._den)
            root = Cyclotomic.root_of_unity(self._n, -e) if e else ONE
            return root._scale((1 / c).numerator, (1 / c).denominator)
        phi_n = [Fraction(c) for c in cyclotomic_polynomial(self._n)]
        a = [Fraction(int(c), self._den) for c in self._num]
        r0, r1 = phi_n, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while _pdeg(r1) > 0:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        s = [x / c for x in s1]
        s = s + [Fraction(0)] * (len(self._num) - len(s))
        s = s[: len(self._num)]
        den = 1
        for x in s:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in s]
        arr = np.array(ints, dtype=object)
        return Cyclotomic._make(self._n, arr, den)

    def norm_squared(self) -> Cyclotomic:
        """``a * conj(a)``, i.e. ``|a|**2`` as a field element."""
        return self * self.conjugate()

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den != other._den or self._m != other._m:
            if self._n == other._n:
                return False
        if self._n == other._n:
            return np.array_equal(self._num, other._num)
        m = Cyclotomic._common(self, other)
        return self._den == other._den and np.array_equal(self._lift(m), other._lift(m))

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        # normalised trace (1/phi) Tr(a) does not depend on the order used
        n = self._n
        total = Fraction(0)
        for e, c in enumerate(self._num):
            if c:
                g = math.gcd(e, n)
                total += Fraction(int(c) * mobius(n // g), totient(n // g))
        return hash(total / self._den)

    # -- text ---------------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({format_scalar(self)!r})"


def _rebuild(n: int, num: list[int], den: int) -> Cyclotomic:
    return Cyclotomic._make(n, np.array(num, dtype=object), den)


_FFT_MIN_LEN = 96
_FFT_EXACT = 1 << 40
_SPARSE_TERMS = 12


def _convolve(x: np.ndarray, y: np.ndarray, bound: int) -> np.ndarray:
    """Exact integer convolution; float FFT only where rounding is provably exact."""
    if x.dtype != object:
        nx, ny = np.flatnonzero(x), np.flatnonzero(y)
        if len(ny) < len(nx):
            x, y, nx, ny = y, x, ny, nx
        if len(nx) <= _SPARSE_TERMS:
            out = np.zeros(len(x) + len(y) - 1, dtype=np.int64)
            for i in nx:
                out[i : i + len(y)] += x[i] * y
            return out
        if min(len(x), len(y)) >= _FFT_MIN_LEN and bound < _FFT_EXACT:
            size = len(x) + len(y) - 1
            spec = np.fft.rfft(x.astype(np.float64), size) * np.fft.rfft(y.astype(np.float64), size)
            return np.rint(np.fft.irfft(spec, size)).astype(np.int64)
    return np.convolve(x, y)


def _lincomb(x: np.ndarray, dx: int, y: np.ndarray, dy: int) -> tuple[np.ndarray, int]:
    """``x/dx + y/dy`` as ``(vector, denominator)``."""
    if dx == dy:
        if x.dtype != object and y.dtype != object and _mag(x) + _mag(y) < _LIMIT:
            return x + y, dx
        return x.astype(object) + y.astype(object), dx
    if (
        x.dtype != object
        and y.dtype != object
        and _mag(x) * dy + _mag(y) * dx < _LIMIT
    ):
        return x * dy + y * dx, dx * dy
    return x.astype(object) * dy + y.astype(object) * dx, dx * dy


def _coerce(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic(value)
    return NotImplemented


ZERO = Cyclotomic(0)
ONE = Cyclotomic(1)


# ---------------------------------------------------------------------------
# Functional interface


def zeta(n: int) -> Cyclotomic:
    """The primitive root of unity ``exp(2*pi*i/n)``."""
    if n < 1:
        raise ValueError("zeta(n) requires n >= 1")
    return Cyclotomic.root_of_unity(n, 1)


def add(a: Scalar, b: Scalar) -> Cyclotomic:
    return _coerce(a) + b


def mul(a: Scalar, b: Scalar) -> Cyclotomic:
    return _coerce(a) * b


def neg(a: Scalar) -> Cyclotomic:
    return -_coerce(a)


def inv(a: Scalar) -> Cyclotomic:
    return _coerce(a).inverse()


def conj(a: Scalar) -> Cyclotomic:
    return _coerce(a).conjugate()


def eq(a: Scalar, b: Scalar) -> bool:
    return _coerce(a) == _coerce(b)


def exp_i_pi(q) -> Cyclotomic:
    """``exp(i*q*pi)`` for rational ``q``: ``zeta_{2r} ** (s mod 2r)`` with ``q = s/r``."""
    q = Fraction(q)
    r = q.denominator
    return Cyclotomic.root_of_unity(2 * r, q.numerator % (2 * r))


I = Cyclotomic.root_of_unity(4, 1)


def cos_pi(q) -> Cyclotomic:
    """``cos(q*pi)`` exactly."""
    e = exp_i_pi(q)
    return (e + e.conjugate())._scale(1, 2)


def sin_pi(q) -> Cyclotomic:
    """``sin(q*pi)`` exactly."""
    e = exp_i_pi(q)
    return ((e - e.conjugate()) * I)._scale(-1, 2)


def to_complex_float(a: Scalar) -> complex:
    return _coerce(a).to_complex()


# ---------------------------------------------------------------------------
# Scalar text syntax: integers, a/b, i, zeta(n), ^, + - * /, parentheses.


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: Scalar) -> str:
    a = _coerce(a)
    if a.is_rational():
        return _fmt_rational(a.to_rational())
    parts = []
    for e, c in a.coeffs.items():
        if e == 0:
            body, coef = "", c
        elif a.order == 4:
            body, coef = "i", c
        else:
            body = f"zeta({a.order})" + (f"^{e}" if e != 1 else "")
            coef = c
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if body and mag == 1:
            term = body
        elif body:
            term = f"{_fmt_rational(mag)}*{body}"
        else:
            term = _fmt_rational(mag)
        parts.append((sign, term))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, term in parts[1:]:
        text += f" {sign} {term}"
    return text


class _ScalarParser:
    def __init__(self, text: str, line: int = 1, col: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.col = col

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col + self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse(self) -> Cyclotomic:
        value = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self) -> Cyclotomic:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Cyclotomic:
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise self.error("division by zero")
                value = value / rhs
        return value

    def unary(self) -> Cyclotomic:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.unary()
        if ch == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Cyclotomic:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                self.pos += 1
                sign = -1
            k = sign * self.integer()
            if k < 0 and base.is_zero():
                raise self.error("negative power of zero")
            return base**k
        return base

    def atom(self) -> Cyclotomic:
        ch = self.peek()
        if ch.isdigit():
            return Cyclotomic(self.integer())
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.take(")")
            return value
        if self.text.startswith("zeta", self.pos):
            self.pos += 4
            self.take("(")
            n = self.integer()
            self.take(")")
            if n < 1:
                raise self.error("zeta(n) requires n >= 1")
            return zeta(n)
        if ch == "i" and not self.text[self.pos + 1 : self.pos + 2].isalnum():
            self.pos += 1
            return I
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_scalar(text: str, line: int = 1, col: int = 1) -> Cyclotomic:
    """Parse the textual scalar syntax, e.g. ``"1/2 - 3*zeta(8)^3 + i"``."""
    return _ScalarParser(text, line, col).parse()
