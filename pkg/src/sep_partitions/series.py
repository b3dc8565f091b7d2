"""Truncated formal power series in q with up to two tracking variables.

Coefficients are exact Python integers, held to the signed 128-bit range so
that runaway growth surfaces as :class:`CoefficientOverflowError` instead of
silently ballooning.  A series of order ``N`` keeps q-degrees ``0..N``.

Keys of the sparse coefficient map are tuples ``(d, e0, ..., e_{arity-1})``
where ``d`` is the q-degree and ``e*`` are the exponents of the tracking
variables (``mu``/``nu`` for residue counts, ``x``/``z`` for overline and part
counts).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .errors import (
    CoefficientOverflowError,
    IllegalShiftError,
    OutOfRangeError,
    ShapeMismatchError,
)

__all__ = [
    "INT_MAX",
    "Monomial",
    "QBinomial",
    "TruncatedSeries",
    "coeff",
    "collapse_aux",
    "gaussian",
    "poch_finite",
    "poch_infinite",
    "series_add",
    "series_inv_factor",
    "series_inv_poch",
    "series_mul",
    "series_new",
    "series_one",
]

MAX_ARITY = 2
INT_MAX = (1 << 127) - 1
INT_MIN = -(1 << 127)


def _checked(value: int) -> int:
    if value > INT_MAX or value < INT_MIN:
        raise CoefficientOverflowError(f"coefficient {value} exceeds 128-bit capacity")
    return value


@dataclass(frozen=True)
class Monomial:
    """Signed aux monomial ``coef * e0-var**aux[0] * e1-var**aux[1]``.

    ``Monomial(-1, (1, 1))`` stands for ``-x*z``; the arity of any series it
    meets is ``len(aux)``.
    """

    coef: int = 1
    aux: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.aux) > MAX_ARITY:
            raise ValueError(f"at most {MAX_ARITY} tracking variables")
        if any(e < 0 for e in self.aux):
            raise ValueError("aux exponents must be nonnegative")

    @property
    def arity(self) -> int:
        return len(self.aux)


class TruncatedSeries:
    """Immutable sparse series, canonical (no zero coefficients stored)."""

    __slots__ = ("_order", "_arity", "_coeffs", "_hash")

    def __init__(self, order: int, arity: int = 0, coeffs: Mapping[tuple, int] | None = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        if not 0 <= arity <= MAX_ARITY:
            raise ValueError(f"arity must lie in 0..{MAX_ARITY}")
        self._order = order
        self._arity = arity
        self._hash = None
        clean: dict[tuple, int] = {}
        if coeffs:
            for key, c in coeffs.items():
                key = tuple(key)
                if len(key) != arity + 1:
                    raise ValueError(f"key {key} does not match arity {arity}")
                if key[0] < 0 or any(e < 0 for e in key[1:]):
                    raise ValueError(f"negative exponent in key {key}")
                if key[0] > order or c == 0:
                    continue
                clean[key] = _checked(int(c))
        self._coeffs = clean

    @classmethod
    def _trusted(cls, order: int, arity: int, coeffs: dict) -> TruncatedSeries:
        # coeffs must already be canonical and in range
        s = cls.__new__(cls)
        s._order = order
        s._arity = arity
        s._coeffs = coeffs
        s._hash = None
        return s

    @property
    def order(self) -> int:
        return self._order

    @property
    def arity(self) -> int:
        return self._arity

    def items(self) -> Iterator[tuple[tuple, int]]:
        """Coefficients in sorted key order."""
        for key in sorted(self._coeffs):
            yield key, self._coeffs[key]

    def to_dict(self) -> dict[tuple, int]:
        return dict(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, d: int, aux: Iterable[int] = ()) -> int:
        if d < 0 or d > self._order:
            raise OutOfRangeError(f"q-degree {d} outside 0..{self._order}")
        aux = tuple(aux)
        if len(aux) != self._arity:
            raise ValueError(f"expected {self._arity} aux exponents, got {len(aux)}")
        return self._coeffs.get((d,) + aux, 0)

    def q_coefficients(self) -> list[int]:
        """Dense list of q-coefficients with every tracking variable set to 1."""
        out = [0] * (self._order + 1)
        for key, c in self._coeffs.items():
            out[key[0]] += c
        return [_checked(c) for c in out]

    def _check_shape(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other._order != self._order or other._arity != self._arity:
            raise ShapeMismatchError(
                f"order/arity mismatch: ({self._order}, {self._arity}) vs "
                f"({other._order}, {other._arity})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self._order == other._order
            and self._arity == other._arity
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._arity, frozenset(self._coeffs.items())))
        return self._hash

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries._trusted(
            self._order, self._arity, {k: _checked(-c) for k, c in self._coeffs.items()}
        )

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check_shape(other)
        out = dict(self._coeffs)
        for key, c in other._coeffs.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = _checked(v)
            else:
                out.pop(key, None)
        return TruncatedSeries._trusted(self._order, self._arity, out)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_shape(other)
        n = self._order
        out: dict[tuple, int] = {}
        right = sorted(other._coeffs.items())
        for k1, c1 in self._coeffs.items():
            d1 = k1[0]
            for k2, c2 in right:
                d = d1 + k2[0]
                if d > n:
                    break
                key = (d,) + tuple(a + b for a, b in zip(k1[1:], k2[1:]))
                out[key] = out.get(key, 0) + c1 * c2
        return TruncatedSeries._trusted(
            n, self._arity, {k: _checked(v) for k, v in out.items() if v}
        )

    __rmul__ = __mul__

    def scale(self, c: int) -> TruncatedSeries:
        if c == 0:
            return TruncatedSeries._trusted(self._order, self._arity, {})
        return TruncatedSeries._trusted(
            self._order, self._arity, {k: _checked(v * c) for k, v in self._coeffs.items()}
        )

    def shift(self, d: int, mono: Monomial = Monomial()) -> TruncatedSeries:
        """Multiply by ``mono * q**d``; terms pushed above the order are dropped."""
        if d < 0:
            raise ValueError("negative q-shift")
        if mono.arity != self._arity:
            raise ShapeMismatchError(f"monomial arity {mono.arity} vs series arity {self._arity}")
        if mono.coef == 0:
            return TruncatedSeries._trusted(self._order, self._arity, {})
        out = {}
        for key, c in self._coeffs.items():
            nd = key[0] + d
            if nd <= self._order:
                nkey = (nd,) + tuple(a + b for a, b in zip(key[1:], mono.aux))
                out[nkey] = _checked(c * mono.coef)
        return TruncatedSeries._trusted(self._order, self._arity, out)

    def mul_factor(self, c: Monomial, d: int) -> TruncatedSeries:
        """Multiply by the binomial factor ``1 - c q**d``."""
        return self - self.shift(d, c)

    def inv_factor(self, c: Monomial, d: int) -> TruncatedSeries:
        """Multiply by ``1/(1 - c q**d)``, expanded as a geometric series."""
        if d < 1:
            raise IllegalShiftError("geometric expansion needs q-shift >= 1")
        if c.arity != self._arity:
            raise ShapeMismatchError(f"monomial arity {c.arity} vs series arity {self._arity}")
        n = self._order
        buckets: list[dict[tuple, int]] = [{} for _ in range(n + 1)]
        for key, v in self._coeffs.items():
            buckets[key[0]][key[1:]] = v
        out = {}
        # t = s + c q^d t, solved degree by degree
        for deg in range(n + 1):
            row = buckets[deg]
            tgt = deg + d
            for aux, v in row.items():
                if not v:
                    continue
                out[(deg,) + aux] = _checked(v)
                if tgt <= n and c.coef:
                    naux = tuple(a + b for a, b in zip(aux, c.aux))
                    nrow = buckets[tgt]
                    nrow[naux] = nrow.get(naux, 0) + c.coef * v
        return TruncatedSeries._trusted(n, self._arity, out)

    def collapse_aux(self) -> TruncatedSeries:
        out: dict[tuple, int] = {}
        for key, c in self._coeffs.items():
            out[(key[0],)] = out.get((key[0],), 0) + c
        return TruncatedSeries._trusted(
            self._order, 0, {k: _checked(v) for k, v in out.items() if v}
        )

    def truncate(self, order: int) -> TruncatedSeries:
        """Same series at a smaller (or equal) order."""
        if order > self._order:
            raise ValueError("cannot raise the order of a truncated series")
        return TruncatedSeries._trusted(
            order, self._arity, {k: c for k, c in self._coeffs.items() if k[0] <= order}
        )

    def first_difference(self, other: TruncatedSeries) -> tuple[tuple, int, int] | None:
        """Smallest key where the two series differ, with both coefficients."""
        self._check_shape(other)
        keys = sorted(set(self._coeffs) | set(other._coeffs))
        for key in keys:
            a = self._coeffs.get(key, 0)
            b = other._coeffs.get(key, 0)
            if a != b:
                return key, a, b
        return None

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self._order}, arity={self._arity}, {self.format()})"

    def format(self, names: tuple[str, ...] = ("x", "z")) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for key, c in self.items():
            factors = []
            for name, e in zip(names, key[1:]):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            if key[0]:
                factors.append("q" if key[0] == 1 else f"q^{key[0]}")
            mono = "*".join(factors)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def series_new(order: int, arity: int = 0) -> TruncatedSeries:
    """Zero series."""
    return TruncatedSeries(order, arity)


def series_one(order: int, arity: int = 0) -> TruncatedSeries:
    return TruncatedSeries._trusted(order, arity, {(0,) * (arity + 1): 1})


def series_from_q(coeffs: Iterable[int], order: int, arity: int = 0,
                  mono: Monomial | None = None, shift: int = 0) -> TruncatedSeries:
    """Embed a dense q-polynomial, optionally times ``mono * q**shift``."""
    aux = mono.aux if mono is not None else (0,) * arity
    sign = mono.coef if mono is not None else 1
    if len(aux) != arity:
        raise ShapeMismatchError(f"monomial arity {len(aux)} vs {arity}")
    out = {}
    for i, c in enumerate(coeffs):
        d = i + shift
        if d > order:
            break
        if c:
            out[(d,) + aux] = _checked(c * sign)
    return TruncatedSeries._trusted(order, arity, out)


def series_add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s + t


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s * t


def coeff(s: TruncatedSeries, d: int, aux: Iterable[int] = ()) -> int:
    return s.coeff(d, aux)


def collapse_aux(s: TruncatedSeries) -> TruncatedSeries:
    """Set every tracking variable to 1."""
    return s.collapse_aux()


def poch_finite(c: Monomial, d: int, k: int, n: int, order: int) -> TruncatedSeries:
    """``(c q^d; q^k)_n``: product of ``1 - c q^(d+k*i)`` for ``i < n``."""
    if d < 0 or k < 1 or n < 0:
        raise ValueError("need d >= 0, k >= 1, n >= 0")
    out = series_one(order, c.arity)
    for i in range(n):
        e = d + k * i
        if e > order:
            break
        out = out.mul_factor(c, e)
    return out


def poch_infinite(c: Monomial, d: int, k: int, order: int) -> TruncatedSeries:
    """``(c q^d; q^k)_inf`` keeping the factors with exponent at most ``order``."""
    if d == 0 and c.coef != 0:
        raise IllegalShiftError("(c; q^k)_inf with shift 0 does not truncate")
    if d > order:
        return series_one(order, c.arity)
    return poch_finite(c, d, k, (order - d) // k + 1, order)


def series_inv_factor(s: TruncatedSeries, c: Monomial, d: int) -> TruncatedSeries:
    """``s / (1 - c q^d)``."""
    return s.inv_factor(c, d)


def series_inv_poch(s: TruncatedSeries, c: Monomial, d: int, k: int,
                    n: int | None = None) -> TruncatedSeries:
    """``s / (c q^d; q^k)_n``; ``n=None`` means the infinite product."""
    if d < 1:
        raise IllegalShiftError("Pochhammer inverse needs q-shift >= 1")
    order = s.order
    count = (order - d) // k + 1 if d <= order else 0
    if n is not None:
        count = min(count, n)
    for i in range(count):
        s = s.inv_factor(c, d + k * i)
    return s


@dataclass(frozen=True)
class QBinomial:
    """Gaussian polynomial ``[A, B]`` in base ``q**k`` as a dense coefficient tuple."""

    A: int
    B: int
    k: int
    poly: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.poly) - 1 if self.poly else -1

    def at_one(self) -> int:
        return sum(self.poly)

    def is_zero(self) -> bool:
        return not self.poly

    def as_series(self, order: int, arity: int = 0, mono: Monomial | None = None,
                  shift: int = 0) -> TruncatedSeries:
        return series_from_q(self.poly, order, arity, mono, shift)


@lru_cache(maxsize=None)
def _gauss_poly(A: int, B: int, k: int) -> tuple[int, ...]:
    if B < 0 or A < B:
        return ()
    if B == 0 or A == B:
        return (1,)
    # [A,B] = [A-1,B-1] + q^{kB} [A-1,B]
    left = _gauss_poly(A - 1, B - 1, k)
    right = _gauss_poly(A - 1, B, k)
    s = k * B
    out = [0] * max(len(left), len(right) + s)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + s] += c
    return tuple(out)


def gaussian(A: int, B: int, k: int = 1) -> QBinomial:
    """q-binomial coefficient via the Pascal-type recurrence.

    Any arguments outside ``A >= B >= 0`` give the zero polynomial.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if B < 0 or A < B:
        return QBinomial(A, B, k, ())
    if A > 400:
        # fill bottom-up so deep rows stay clear of the recursion limit
        for a in range(B, A):
            for b in range(max(0, B - (A - a)), B + 1):
                _gauss_poly(a, b, k)
    return QBinomial(A, B, k, _gauss_poly(A, B, k))
