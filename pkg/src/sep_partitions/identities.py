"""Generating-function identities, each side built independently.

Product forms come from Pochhammer arithmetic, sum forms from the closed
basis formulas, and the enumeration side from the brute-force tally.  Every
``verify_*`` function compares its sides coefficientwise and returns a
:class:`VerificationReport`.
"""

from __future__ import annotations

import time
from math import comb

from . import basis
from .bijection import verify_theorem1
from .partitions import ABK, KPART, MKR, OKR, class_gf_enumerated
from .report import IDENTITIES, Mismatch, VerificationReport
from .series import Monomial, TruncatedSeries, gaussian, poch_infinite, series_inv_poch, series_one

DEFAULT_ORDER = 30
DEFAULT_N_MAX = 20


# --- product and sum forms ---------------------------------------------------

def abk_product(a: int, b: int, k: int, order: int) -> TruncatedSeries:
    """``1 / ((mu q^a; q^k)_inf (nu q^b; q^k)_inf)``."""
    s = series_one(order, 2)
    s = series_inv_poch(s, Monomial(1, (1, 0)), a, k)
    return series_inv_poch(s, Monomial(1, (0, 1)), b, k)


def abk_triple_sum(a: int, b: int, k: int, order: int) -> TruncatedSeries:
    """Sum over m, h, i of the residue-tracked terms over ``(q^k; q^k)_m``."""
    ABK(a, b, k)
    total = TruncatedSeries(order, 2)
    for m in range(order // a + 1):
        coeffs: dict = {}
        for h in range(m + 1):
            for i in range(m - h + 1):
                shift = m * a + k * h * h + (b - a) * (h + i)
                if shift > order:
                    break
                g1 = gaussian(h + i, h, k).poly
                g2 = gaussian(m - h - i, h, k).poly
                if not g1 or not g2:
                    continue
                for d1, c1 in enumerate(g1):
                    if shift + d1 > order:
                        break
                    for d2, c2 in enumerate(g2):
                        d = shift + d1 + d2
                        if d > order:
                            break
                        key = (d, m - h - i, h + i)
                        coeffs[key] = coeffs.get(key, 0) + c1 * c2
        if coeffs:
            term = TruncatedSeries(order, 2, coeffs)
            total = total + series_inv_poch(term, Monomial(1, (0, 0)), k, k, m)
    return total


def okr_product(k: int, r: int, order: int) -> TruncatedSeries:
    """``(-x z q^r; q^k)_inf / (z q; q)_inf`` with aux (x, z) = (l_o, l)."""
    OKR(k, r)
    num = poch_infinite(Monomial(-1, (1, 1)), r, k, order)
    return series_inv_poch(num, Monomial(1, (0, 1)), 1, 1)


def kpart_product(k: int, order: int) -> TruncatedSeries:
    """``(-x z^k q^k; q^k)_inf / (z q; q)_inf``."""
    KPART(k)
    num = poch_infinite(Monomial(-1, (1, k)), k, k, order)
    return series_inv_poch(num, Monomial(1, (0, 1)), 1, 1)


def mkr_double_sum(k: int, r: int, order: int) -> TruncatedSeries:
    """Sum over n, j of ``x^j z^(n+j) q^(n + k C(j,2) + rj) [n+kj+r-1, kj+r-1] / (q^k;q^k)_(n+j)``."""
    MKR(k, r)
    total = TruncatedSeries(order, 2)
    j = 0
    while k * comb(j, 2) + r * j <= order:
        for n in range(order + 1):
            shift = n + k * comb(j, 2) + r * j
            if shift > order:
                break
            poly = gaussian(n + k * j + r - 1, k * j + r - 1, 1)
            term = poly.as_series(order, 2, Monomial(1, (j, n + j)), shift)
            total = total + series_inv_poch(term, Monomial(1, (0, 0)), k, k, n + j)
        j += 1
    return total


def reindex_kpart_to_okk(s: TruncatedSeries, k: int) -> TruncatedSeries:
    """Substitute ``x -> x z^-(k-1)`` so the k-partition series tracks O_kk stats."""
    out = {}
    for (d, lo, length), c in s.items():
        out[(d, lo, length - (k - 1) * lo)] = c
    return TruncatedSeries(s.order, 2, out)


# --- comparison ----------------------------------------------------------------

def _compare(report: VerificationReport, sides: list[tuple[str, TruncatedSeries]]) -> None:
    base_name, base = sides[0]
    for name, other in sides[1:]:
        report.checks.append(f"{base_name}=={name}")
        diff = base.first_difference(other)
        if diff is not None:
            key, lhs, rhs = diff
            report.first_mismatch = Mismatch(key[0], tuple(key[1:]), lhs, rhs, (base_name, name))
            return


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def verify_abk_11(a: int, b: int, k: int, order: int = DEFAULT_ORDER,
                  capacity: int | None = None) -> VerificationReport:
    """Product, triple sum, basis sum and enumeration of (a,b,k)-partitions."""
    report = VerificationReport("ABK_11", {"a": a, "b": b, "k": k}, order)
    spec = ABK(a, b, k)
    _compare(report, [
        ("product", abk_product(a, b, k, order)),
        ("triple_sum", abk_triple_sum(a, b, k, order)),
        ("basis", basis.gf_from_basis(spec, order)),
        ("enumeration", class_gf_enumerated(spec, order, capacity)),
    ])
    return report


@_timed
def verify_okr_12(k: int, r: int, order: int = DEFAULT_ORDER,
                  capacity: int | None = None) -> VerificationReport:
    report = VerificationReport("OKR_12", {"k": k, "r": r}, order)
    _compare(report, [
        ("product", okr_product(k, r, order)),
        ("enumeration", class_gf_enumerated(OKR(k, r), order, capacity)),
    ])
    return report


@_timed
def verify_mkr_14(k: int, r: int, order: int = DEFAULT_ORDER,
                  capacity: int | None = None) -> VerificationReport:
    """Double sum, basis sum and enumeration of (k,r)-modulo overpartitions."""
    report = VerificationReport("MKR_14", {"k": k, "r": r}, order)
    spec = MKR(k, r)
    _compare(report, [
        ("double_sum", mkr_double_sum(k, r, order)),
        ("basis", basis.gf_from_basis(spec, order)),
        ("enumeration", class_gf_enumerated(spec, order, capacity)),
    ])
    return report


@_timed
def verify_okk_31(k: int, order: int = DEFAULT_ORDER,
                  capacity: int | None = None) -> VerificationReport:
    """(k,k)-overpartitions against their product and the reindexed k-partition series."""
    report = VerificationReport("OKK_31", {"k": k}, order)
    _compare(report, [
        ("product", okr_product(k, k, order)),
        ("enumeration", class_gf_enumerated(OKR(k, k), order, capacity)),
        ("kpart_reindexed", reindex_kpart_to_okk(kpart_product(k, order), k)),
    ])
    return report


@_timed
def verify_kpart_32(k: int, order: int = DEFAULT_ORDER,
                    capacity: int | None = None) -> VerificationReport:
    report = VerificationReport("KPART_32", {"k": k}, order)
    _compare(report, [
        ("product", kpart_product(k, order)),
        ("enumeration", class_gf_enumerated(KPART(k), order, capacity)),
    ])
    return report


def _grid_report(report, pairs):
    for label, (lhs, rhs) in pairs:
        diff = lhs.first_difference(rhs)
        if diff is not None:
            key, a, b = diff
            report.first_mismatch = Mismatch(key[0], tuple(key[1:]), a, b, ("lhs", "rhs"), label)
            return


@_timed
def verify_rec_abk(a: int, b: int, k: int, order: int = DEFAULT_ORDER,
                   m_max: int = 6, h_max: int = 4) -> VerificationReport:
    report = VerificationReport("REC_ABK", {"a": a, "b": b, "k": k, "m_max": m_max,
                                            "h_max": h_max}, order)
    report.checks.append(f"grid m<={m_max} h<={h_max}")
    _grid_report(report, (
        (f"m={m} h={h}", basis.recurrence_abk_sides(m, h, a, b, k, order))
        for m in range(1, m_max + 1) for h in range(h_max + 1)
    ))
    return report


@_timed
def verify_rec_kr(k: int, r: int, order: int = DEFAULT_ORDER,
                  m_max: int = 6, j_max: int = 4) -> VerificationReport:
    report = VerificationReport("REC_KR", {"k": k, "r": r, "m_max": m_max, "j_max": j_max}, order)
    report.checks.append(f"grid m<={m_max} j<={j_max}")
    _grid_report(report, (
        (f"m={m} j={j}", basis.recurrence_kr_sides(m, j, k, r, order))
        for m in range(1, m_max + 1) for j in range(j_max + 1)
    ))
    return report


@_timed
def verify_gf_basis_47(k: int, r: int, order: int = DEFAULT_ORDER,
                       m_max: int = 6) -> VerificationReport:
    """Closed form of the KR basis sum against the generated basis, per length."""
    report = VerificationReport("GF_BASIS_47", {"k": k, "r": r, "m_max": m_max}, order)
    report.checks.append(f"closed==basis m<={m_max}")
    _grid_report(report, (
        (f"m={m}", (basis.basis_gf_kr_closed(m, k, r, order), basis.basis_sum_kr(m, k, r, order)))
        for m in range(1, m_max + 1)
    ))
    return report


_DISPATCH = {
    "ABK_11": (verify_abk_11, ("a", "b", "k"), ("capacity",)),
    "OKR_12": (verify_okr_12, ("k", "r"), ("capacity",)),
    "MKR_14": (verify_mkr_14, ("k", "r"), ("capacity",)),
    "OKK_31": (verify_okk_31, ("k",), ("capacity",)),
    "KPART_32": (verify_kpart_32, ("k",), ("capacity",)),
    "THM1": (None, ("k",), ("n_max", "capacity")),
    "REC_ABK": (verify_rec_abk, ("a", "b", "k"), ("m_max", "h_max")),
    "REC_KR": (verify_rec_kr, ("k", "r"), ("m_max", "j_max")),
    "GF_BASIS_47": (verify_gf_basis_47, ("k", "r"), ("m_max",)),
}
assert set(_DISPATCH) == set(IDENTITIES)


def required_params(identity: str) -> tuple[str, ...]:
    return _DISPATCH[identity][1]


def optional_params(identity: str) -> tuple[str, ...]:
    return _DISPATCH[identity][2]


def cmd_verify(identity: str, params: dict, order: int | None = None) -> VerificationReport:
    """Run one identity check by id with integer parameters."""
    identity = identity.upper()
    if identity not in _DISPATCH:
        raise ValueError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
    fn, required, optional = _DISPATCH[identity]
    missing = [p for p in required if p not in params]
    if missing:
        raise ValueError(f"{identity} needs parameters: {', '.join(missing)}")
    extra = set(params) - set(required) - set(optional)
    if extra:
        raise ValueError(f"{identity} does not take: {', '.join(sorted(extra))}")
    if identity == "THM1":
        n_max = params.get("n_max", order if order is not None else DEFAULT_N_MAX)
        return verify_theorem1(params["k"], n_max, params.get("capacity"))
    kwargs = {p: params[p] for p in optional if p in params}
    return fn(*(params[p] for p in required), order=DEFAULT_ORDER if order is None else order,
              **kwargs)
