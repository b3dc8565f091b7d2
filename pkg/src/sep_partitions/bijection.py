"""Weight-preserving bijection between (k,k)-overpartitions and k-partitions.

Forward: every overlined part ``k*z`` is replaced by ``k-1`` plain copies of
``z`` and one overlined ``z``.  Backward undoes that for each overlined value
of a k-partition.  Results are returned in the canonical display of the
target class.
"""

from __future__ import annotations

import time
from collections import Counter

from .errors import NotAMemberError
from .partitions import KPART, OKR, OverPart, Overpartition, count_by_stats, enumerate_class, validate
from .report import Mismatch, VerificationReport


def _kpart_display(plain: Counter, over: set[int], k: int) -> Overpartition:
    parts = []
    for v in sorted(plain, reverse=True):
        mult = plain[v]
        if v in over:
            parts += [OverPart(v)] * (k - 1) + [OverPart(v, True)] + [OverPart(v)] * (mult - k)
        else:
            parts += [OverPart(v)] * mult
    return Overpartition(tuple(parts))


def okk_to_kpartition(p: Overpartition, k: int) -> Overpartition:
    if not validate(p, OKR(k, k)):
        raise NotAMemberError(f"{p} is not a ({k},{k})-overpartition")
    plain = Counter(x.value for x in p.parts if not x.overlined)
    zetas = [x.value // k for x in p.parts if x.overlined]
    for z in zetas:
        plain[z] += k
    return _kpart_display(plain, set(zetas), k)


def kpartition_to_okk(p: Overpartition, k: int) -> Overpartition:
    if not validate(p, KPART(k)):
        raise NotAMemberError(f"{p} is not a {k}-partition")
    plain = Counter(x.value for x in p.parts)
    zetas = [x.value for x in p.parts if x.overlined]
    for z in zetas:
        plain[z] -= k
    overlined = {k * z for z in zetas}
    parts = []
    for v in sorted(set(plain.elements()) | overlined, reverse=True):
        if v in overlined:
            parts.append(OverPart(v, True))
        parts += [OverPart(v)] * plain[v]
    return Overpartition(tuple(parts))


def zeta_values(p: Overpartition, k: int) -> list[int]:
    """Descending ``z`` with ``k*z`` overlined in a (k,k)-overpartition."""
    return sorted((x.value // k for x in p.parts if x.overlined), reverse=True)


def verify_theorem1(k: int, n_max: int, capacity: int | None = None) -> VerificationReport:
    """Count tables and the explicit map, for every weight up to ``n_max``."""
    t0 = time.perf_counter()
    report = VerificationReport("THM1", {"k": k, "n_max": n_max}, n_max,
                                checks=["count-tables", "bijection"])
    src_spec, dst_spec = OKR(k, k), KPART(k)
    for n in range(n_max + 1):
        src_counts = count_by_stats(n, src_spec, capacity)
        dst_counts = count_by_stats(n, dst_spec, capacity)
        shifted = {(lo, m + (k - 1) * lo): c for (lo, m), c in src_counts.items()}
        for key in sorted(set(shifted) | set(dst_counts)):
            if shifted.get(key, 0) != dst_counts.get(key, 0):
                lo, m = key
                report.first_mismatch = Mismatch(
                    n, (lo, m - (k - 1) * lo), shifted.get(key, 0), dst_counts.get(key, 0),
                    ("O_kk", "P_k shifted"))
                break
        if report.first_mismatch:
            break
        targets = set(enumerate_class(n, dst_spec, capacity))
        images = set()
        for p in enumerate_class(n, src_spec, capacity):
            img = okk_to_kpartition(p, k)
            ok = (
                img in targets
                and img not in images
                and img.weight == p.weight
                and img.n_overlined == p.n_overlined
                and img.length == p.length + (k - 1) * p.n_overlined
                and kpartition_to_okk(img, k) == p
            )
            if not ok:
                report.first_mismatch = Mismatch(n, (p.n_overlined, p.length), 1, 0,
                                                 ("source", "image"), f"map fails at {p}")
                break
            images.add(img)
        if report.first_mismatch:
            break
        if images != targets:
            missing = sorted(targets - images, key=lambda x: x.key)[0]
            report.first_mismatch = Mismatch(n, (missing.n_overlined, missing.length), 0, 1,
                                             ("image", "target"), f"{missing} not hit")
            break
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report
