"""Bases of the (a,b,k)-partitions and (k,r)-modulo overpartitions.

Every class member with m parts splits uniquely as ``lambda + mu`` where
``lambda`` is a basis element with m parts and ``mu`` is a non-increasing
sequence of nonnegative multiples of k added partwise.  This module builds
the bases, performs that split, and evaluates the closed-form generating
functions of the basis elements (optionally restricted by largest part).

ABK series use tracking variables (mu, nu) = (l_a, l_b).  KR largest-part
functions are pure q-series; the full KR basis sum tracks l_o in one
variable.  Class-level series track (l_a, l_b) or (l_o, l).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import (
    CapacityError,
    DecompositionError,
    DomainError,
    IncompleteTruncationError,
    NotAMemberError,
)
from .partitions import ABK, MKR, ClassSpec, OverPart, Overpartition, default_capacity, validate
from .series import Monomial, TruncatedSeries, gaussian, series_inv_poch, series_new, series_one

DEFAULT_MAX_BASIS_LENGTH = 20


# --- basis generation ----------------------------------------------------

def gen_basis_abk(m: int, a: int, b: int, k: int,
                  max_length: int = DEFAULT_MAX_BASIS_LENGTH,
                  capacity: int | None = None) -> list[tuple[int, ...]]:
    """All 2**m basis elements with m parts, built upward from the smallest part.

    Above ``kh+a`` comes ``kh+a`` or ``kh+b``; above ``kh+b`` comes ``kh+b``
    or ``k(h+1)+a``.  The "stay" choice is tried first.
    """
    ABK(a, b, k)
    if m < 1:
        raise ValueError("m must be positive")
    if m > max_length:
        raise CapacityError(f"basis length {m} exceeds limit {max_length}")
    cap = default_capacity() if capacity is None else capacity
    out = []

    def grow(stack):
        if len(stack) == m:
            if len(out) >= cap:
                raise CapacityError(f"more than {cap} basis elements")
            out.append(tuple(reversed(stack)))
            return
        top = stack[-1]
        if (top - a) % k == 0:
            nxt = (top, top - a + b)
        else:
            nxt = (top, top - b + k + a)
        for v in nxt:
            stack.append(v)
            grow(stack)
            stack.pop()

    for start in (a, b):
        grow([start])
    return out


def is_basis_abk(parts, a: int, b: int, k: int) -> bool:
    """The two defining conditions, checked directly."""
    parts = tuple(parts)
    if not parts or parts[-1] not in (a, b):
        return False
    if any(v % k not in (a % k, b % k) for v in parts):
        return False
    return all(parts[i + 1] <= parts[i] < parts[i + 1] + k for i in range(len(parts) - 1))


def _kr_window_top(token: int, k: int, r: int) -> int:
    """Largest token allowed directly above ``token`` in a KR basis element."""
    # windows are [2(k(j-1)+r)+1, 2(kj+r)] in token order; the cap is overline(kj+r)
    j = max(0, -((2 * r - token) // (2 * k)))
    return 2 * (k * j + r) + 1


def gen_basis_kr(m: int, k: int, r: int,
                 max_length: int = DEFAULT_MAX_BASIS_LENGTH,
                 capacity: int | None = None) -> list[Overpartition]:
    """All overpartitions with m parts in the basis of the (k,r)-modulo class."""
    MKR(k, r)
    if m < 1:
        raise ValueError("m must be positive")
    if m > max_length:
        raise CapacityError(f"basis length {m} exceeds limit {max_length}")
    cap = default_capacity() if capacity is None else capacity
    over_ok = r % k
    out = []

    def allowed(t):
        v, o = divmod(t, 2)
        return not o or v % k == over_ok

    def grow(stack):
        if len(stack) == m:
            if len(out) >= cap:
                raise CapacityError(f"more than {cap} basis elements")
            out.append(Overpartition(tuple(OverPart(t // 2, bool(t % 2)) for t in reversed(stack))))
            return
        low = stack[-1]
        # an overlined token may not repeat
        start = low + 1 if low % 2 else low
        for t in range(start, _kr_window_top(low, k, r) + 1):
            if allowed(t):
                stack.append(t)
                grow(stack)
                stack.pop()

    for t in range(2, 2 * r + 2):
        if allowed(t):
            grow([t])
    return out


def _kr_pair_ok(lo: int, hi: int, k: int, r: int) -> bool:
    """Tokens ``hi`` directly above ``lo`` in a KR basis element."""
    if hi < lo or (hi == lo and hi % 2):
        return False
    # find j with overline(k(j-1)+r) <= lo <= kj+r
    j = 0
    while not (2 * (k * (j - 1) + r) + 1 <= lo <= 2 * (k * j + r)):
        j += 1
    return hi <= 2 * (k * j + r) + 1


def is_basis_kr(p: Overpartition, k: int, r: int) -> bool:
    """Direct check of the three conditions defining the KR basis."""
    tokens = [x.token for x in p.parts]
    if not tokens or any(x.value < 1 for x in p.parts):
        return False
    if any(x.overlined and x.value % k != r % k for x in p.parts):
        return False
    if tokens[-1] > 2 * r + 1:
        return False
    return all(_kr_pair_ok(tokens[i + 1], tokens[i], k, r) for i in range(len(tokens) - 1))


# --- decomposition -------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """A class member written as basis element plus k-divisible increments."""

    basis: Overpartition
    mu: tuple[int, ...]

    def recompose(self) -> Overpartition:
        return Overpartition(
            tuple(OverPart(x.value + d, x.overlined) for x, d in zip(self.basis.parts, self.mu))
        )


def _smallest_at_least(low_value: int, residue: int, k: int) -> int:
    return low_value + (residue - low_value) % k


def decompose(p: Overpartition, spec: ClassSpec) -> Decomposition:
    """Unique (basis, mu) split, reconstructed from the smallest part upward.

    Each basis part is the smallest admissible part at or above the one below
    it with the same residue (and overline flag) as the member's part.
    """
    if not isinstance(spec, (ABK, MKR)):
        raise TypeError("decomposition is defined for ABK and MKR classes")
    if not validate(p, spec):
        raise NotAMemberError(f"{p} is not in {spec}")
    parts = p.parts
    if not parts:
        return Decomposition(Overpartition(), ())
    k = spec.k
    lam: list[OverPart] = [None] * len(parts)
    if isinstance(spec, ABK):
        a, b = spec.a, spec.b
        last = parts[-1].value
        lam[-1] = OverPart(a if last % k == a % k else b)
        for i in range(len(parts) - 2, -1, -1):
            lam[i] = OverPart(_smallest_at_least(lam[i + 1].value, parts[i].value % k, k))
        basis = Overpartition(tuple(lam))
        ok = is_basis_abk(basis.values, a, b, k)
    else:
        r = spec.r
        last = parts[-1]
        if last.overlined:
            lam[-1] = OverPart(r, True)
        else:
            lam[-1] = OverPart(r - (r - last.value) % k)
        for i in range(len(parts) - 2, -1, -1):
            below = lam[i + 1]
            res = parts[i].value % k
            v = _smallest_at_least(below.value, res, k)
            if parts[i].overlined:
                if below.overlined and v == below.value:
                    v += k
            elif v == below.value and below.overlined:
                v += k
            lam[i] = OverPart(v, parts[i].overlined)
        basis = Overpartition(tuple(lam))
        ok = is_basis_kr(basis, k, r)
    mu = tuple(x.value - y.value for x, y in zip(parts, basis.parts))
    ok = ok and all(d >= 0 and d % k == 0 for d in mu)
    ok = ok and all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1))
    if not ok:
        raise DecompositionError(f"no valid decomposition found for {p} in {spec}")
    return Decomposition(basis, mu)


def decompose_search(p: Overpartition, spec: ClassSpec) -> list[Decomposition]:
    """Every (basis element, mu) pair recomposing to ``p``, by exhaustive search.

    Tries every part below ``p_i`` with the same residue and overline flag at
    each position, pruning only on the defining pairwise conditions.  Kept as
    an oracle for :func:`decompose`.
    """
    parts = p.parts
    m = len(parts)
    if m == 0:
        return [Decomposition(Overpartition(), ())]
    if not isinstance(spec, (ABK, MKR)):
        raise TypeError("decomposition is defined for ABK and MKR classes")
    k = spec.k
    if isinstance(spec, ABK):
        a, b = spec.a, spec.b

        def bottom_ok(x):
            return not x.overlined and x.value in (a, b)

        def pair_ok(lo, hi):
            return lo.value <= hi.value < lo.value + k
    else:
        r = spec.r

        def bottom_ok(x):
            return x.token <= 2 * r + 1

        def pair_ok(lo, hi):
            return _kr_pair_ok(lo.token, hi.token, k, r)

    found = []
    lam: list[OverPart] = [None] * m

    def rec(i):
        target = parts[i]
        for v in range(target.value, 0, -k):
            cand = OverPart(v, target.overlined)
            d = target.value - v
            if i == m - 1:
                if not bottom_ok(cand):
                    continue
            else:
                if not pair_ok(lam[i + 1], cand):
                    continue
                if d < parts[i + 1].value - lam[i + 1].value:
                    continue
            lam[i] = cand
            if i == 0:
                basis = Overpartition(tuple(lam))
                found.append(Decomposition(
                    basis, tuple(x.value - y.value for x, y in zip(parts, lam))))
            else:
                rec(i - 1)

    rec(m - 1)
    return found


# --- ABK closed forms ----------------------------------------------------

def _abk_term(out: dict, order: int, mu_exp: int, nu_exp: int, shift: int, g1, g2) -> None:
    """Accumulate ``mu^a nu^b q^shift g1 g2`` into the dense-per-aux dict."""
    if mu_exp < 0 or nu_exp < 0 or shift > order or not g1.poly or not g2.poly:
        return
    row = out.setdefault((mu_exp, nu_exp), [0] * (order + 1))
    p1, p2 = g1.poly, g2.poly
    lim = order - shift
    for i, c1 in enumerate(p1):
        if i > lim:
            break
        for j, c2 in enumerate(p2):
            if i + j > lim:
                break
            row[shift + i + j] += c1 * c2


def _rows_to_series(rows: dict, order: int) -> TruncatedSeries:
    coeffs = {}
    for (e0, e1), row in rows.items():
        for d, c in enumerate(row):
            if c:
                coeffs[(d, e0, e1)] = c
    return TruncatedSeries(order, 2, coeffs)


def g_abk_closed(m: int, largest: int, a: int, b: int, k: int, order: int) -> TruncatedSeries:
    """Basis elements with m parts and given largest part, as a (mu, nu, q) series."""
    ABK(a, b, k)
    if m < 1:
        raise DomainError("m must be positive")
    rows: dict = {}
    if largest % k == a % k and largest >= a:
        h = (largest - a) // k
        if h == 0:
            if m * a <= order:
                rows[(m, 0)] = [0] * (order + 1)
                rows[(m, 0)][m * a] = 1
            return _rows_to_series(rows, order)
        for i in range(m + 1):
            _abk_term(rows, order, m - h - i, h + i,
                      m * a + k * h * h + (b - a) * (h + i),
                      gaussian(h + i - 1, h - 1, k), gaussian(m - h - i, h, k))
    elif largest % k == b % k and largest >= b:
        h = (largest - b) // k
        for i in range(m + 1):
            _abk_term(rows, order, m - h - i - 1, h + i + 1,
                      m * a + k * h * h + k * h + (b - a) * (h + i + 1),
                      gaussian(h + i, h, k), gaussian(m - h - i - 1, h, k))
    else:
        raise DomainError(f"largest part {largest} is not of the form kh+a or kh+b")
    return _rows_to_series(rows, order)


def g_abk_total_closed(m: int, a: int, b: int, k: int, order: int) -> TruncatedSeries:
    """Sum over every basis element with m parts, as a (mu, nu, q) series."""
    ABK(a, b, k)
    if m < 1:
        raise DomainError("m must be positive")
    rows: dict = {}
    for h in range(m // 2 + 1):
        for i in range(m - 2 * h + 1):
            _abk_term(rows, order, m - h - i, h + i,
                      m * a + k * h * h + (b - a) * (h + i),
                      gaussian(h + i, h, k), gaussian(m - h - i, h, k))
    return _rows_to_series(rows, order)


def recurrence_abk_sides(m: int, h: int, a: int, b: int, k: int,
                         order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of g(m+1, kh+b) = nu q^(kh+b) (g(m, kh+a) + g(m, kh+b))."""
    if m < 1 or h < 0:
        raise DomainError("need m >= 1 and h >= 0")
    lhs = g_abk_closed(m + 1, k * h + b, a, b, k, order)
    inner = g_abk_closed(m, k * h + a, a, b, k, order) + g_abk_closed(m, k * h + b, a, b, k, order)
    return lhs, inner.shift(k * h + b, Monomial(1, (0, 1)))


def check_recurrence_abk(m: int, h: int, a: int, b: int, k: int, order: int) -> bool:
    lhs, rhs = recurrence_abk_sides(m, h, a, b, k, order)
    return lhs == rhs


def basis_sum_abk(m: int, a: int, b: int, k: int, order: int,
                  largest: int | None = None) -> TruncatedSeries:
    """Direct sum of mu^l_a nu^l_b q^|lambda| over generated basis elements."""
    coeffs: dict = {}
    for lam in gen_basis_abk(m, a, b, k, max_length=max(m, DEFAULT_MAX_BASIS_LENGTH)):
        if largest is not None and lam[0] != largest:
            continue
        w = sum(lam)
        if w > order:
            continue
        la = sum(1 for v in lam if v % k == a % k)
        key = (w, la, m - la)
        coeffs[key] = coeffs.get(key, 0) + 1
    return TruncatedSeries(order, 2, coeffs)


# --- KR closed forms -----------------------------------------------------

def _kr_poly_term(order: int, shift: int, A: int, B: int) -> list[int]:
    row = [0] * (order + 1)
    if shift > order:
        return row
    for i, c in enumerate(gaussian(A, B, 1).poly):
        if shift + i > order:
            break
        row[shift + i] += c
    return row


def g_kr_closed(m: int, j: int, s: int | None = None, *, k: int, r: int, order: int,
                overlined: bool = False) -> TruncatedSeries:
    """Basis elements with m parts and largest part ``k(j-1)+s`` (or its overline).

    Valid ranges: ``j = 1, 1 <= s <= r`` or ``j >= 2, r-k+1 <= s <= r``.  The
    overlined variant requires ``s = r`` and equals the plain one.
    """
    MKR(k, r)
    if m < 1:
        raise DomainError("m must be positive")
    if overlined:
        if s is None:
            s = r
        if j < 1 or s != r:
            raise DomainError(f"overlined largest part needs j >= 1 and s = r (got j={j}, s={s})")
    elif s is None:
        raise DomainError("s is required for a plain largest part")
    elif not ((j == 1 and 1 <= s <= r) or (j >= 2 and r - k + 1 <= s <= r)):
        raise DomainError(f"(j={j}, s={s}) outside the admissible range for k={k}, r={r}")
    shift = m - j + k * comb(j, 2) + r * (j - 1) + s
    top = k * (j - 1) + s - 1
    row = _kr_poly_term(order, shift, m - j + top, top)
    return TruncatedSeries(order, 0, {(d,): c for d, c in enumerate(row) if c})


def kr_largest_index(part: OverPart, k: int, r: int) -> tuple[int, int]:
    """(j, s) with ``part.value = k(j-1)+s`` in the admissible window."""
    v = part.value
    j = 1 if v <= r else 1 + -((r - v) // k)
    return j, v - k * (j - 1)


def recurrence_kr_sides(m: int, j: int, k: int, r: int,
                        order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of the recurrence for an overlined largest part kj+r on m+1 parts.

    ``j = 0``: g(m+1, r~) = q^r sum_{s=1..r} g(m, s).
    ``j >= 1``: g(m+1, (kj+r)~) = q^(kj+r) (g(m, (k(j-1)+r)~) + sum_s g(m, kj+s)).
    """
    if m < 1 or j < 0:
        raise DomainError("need m >= 1 and j >= 0")
    if j == 0:
        lhs = g_kr_closed(m + 1, 1, r, k=k, r=r, order=order, overlined=True)
        acc = series_new(order)
        for s in range(1, r + 1):
            acc = acc + g_kr_closed(m, 1, s, k=k, r=r, order=order)
        return lhs, acc.shift(r)
    lhs = g_kr_closed(m + 1, j + 1, r, k=k, r=r, order=order, overlined=True)
    acc = g_kr_closed(m, j, r, k=k, r=r, order=order, overlined=True)
    for s in range(r - k + 1, r + 1):
        acc = acc + g_kr_closed(m, j + 1, s, k=k, r=r, order=order)
    return lhs, acc.shift(k * j + r)


def check_recurrence_kr(m: int, j: int, k: int, r: int, order: int) -> bool:
    lhs, rhs = recurrence_kr_sides(m, j, k, r, order)
    return lhs == rhs


def basis_gf_kr_closed(m: int, k: int, r: int, order: int) -> TruncatedSeries:
    """Sum of x^l_o q^|lambda| over the KR basis with m parts (arity 1, x)."""
    MKR(k, r)
    if m < 1:
        raise DomainError("m must be positive")
    coeffs = {}
    for j in range(m + 1):
        shift = m - j + k * comb(j, 2) + r * j
        if shift > order:
            continue
        row = _kr_poly_term(order, shift, m - j + k * j + r - 1, k * j + r - 1)
        for d, c in enumerate(row):
            if c:
                coeffs[(d, j)] = c
    return TruncatedSeries(order, 1, coeffs)


def basis_sum_kr(m: int, k: int, r: int, order: int,
                 largest: OverPart | None = None) -> TruncatedSeries:
    """Direct x^l_o q^|lambda| sum over generated KR basis elements."""
    coeffs: dict = {}
    for lam in gen_basis_kr(m, k, r, max_length=max(m, DEFAULT_MAX_BASIS_LENGTH)):
        if largest is not None and lam.parts[0] != largest:
            continue
        w = lam.weight
        if w > order:
            continue
        key = (w, lam.n_overlined)
        coeffs[key] = coeffs.get(key, 0) + 1
    return TruncatedSeries(order, 1, coeffs)


# --- class generating functions from the basis ---------------------------

def gf_from_basis(spec: ClassSpec, order: int, m_max: int | None = None) -> TruncatedSeries:
    """``1 + sum_m basis_sum(m) / (q^k; q^k)_m`` with aux (l_a, l_b) or (l_o, l)."""
    if isinstance(spec, ABK):
        min_part = spec.a
    elif isinstance(spec, MKR):
        min_part = 1
    else:
        raise TypeError("basis generating functions exist for ABK and MKR classes")
    need = -(-order // min_part)
    if m_max is None:
        m_max = order
    if m_max < need:
        raise IncompleteTruncationError(
            f"m_max={m_max} too small for order {order}; need at least {need}"
        )
    k = spec.k
    total = series_one(order, 2)
    for m in range(1, m_max + 1):
        if m * min_part > order:
            break
        if isinstance(spec, ABK):
            g = g_abk_total_closed(m, spec.a, spec.b, k, order)
        else:
            g1 = basis_gf_kr_closed(m, k, spec.r, order)
            g = TruncatedSeries(order, 2, {(d, x, m): c for (d, x), c in g1.items()})
        total = total + series_inv_poch(g, Monomial(1, (0, 0)), k, k, m)
    return total
