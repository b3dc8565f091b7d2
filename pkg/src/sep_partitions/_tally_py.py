"""Pure-Python tally kernel, the fallback for the compiled ``_tally`` module.

Both implement ``tally(code, p1, p2, p3, n_max, capacity)``: a depth-first walk
over every class member of weight at most ``n_max`` (value groups chosen
largest first), returning ``{(weight, stat0, stat1): count}``.  Class codes
and parameters: 0 ABK (a, b, k), 1 OKR (k, r, -), 2 KPART (k, -, -),
3 MKR (k, r, -).  Stats are (l_a, l_b) for ABK and (l_o, l) otherwise.
"""

from .errors import CapacityError


def tally(code, p1, p2, p3, n_max, capacity):
    if code not in (0, 1, 2, 3):
        raise ValueError(f"unknown class code {code}")
    if code == 0:
        k = p3
        ra, rb = p1 % k, p2 % k
        r = 0
    else:
        k, r = p1, p2
        ra = rb = -1
    counts = {}
    seen = 0

    def visit(w, top, prev_phi, s0, s1, nonempty):
        nonlocal seen
        if code != 3 or not nonempty or prev_phi >= 1:
            seen += 1
            if seen > capacity:
                raise CapacityError(f"more than {capacity} members up to weight {n_max}")
            key = (w, s0, s1)
            counts[key] = counts.get(key, 0) + 1
        rem = n_max - w
        for v in range(min(top, rem), 0, -1):
            res = v % k
            if code == 0:
                if res != ra and res != rb:
                    continue
            cur_phi = r - (r - v) % k if code == 3 else 0
            may_over = code == 2 or (code != 0 and res == r % k)
            forced = code == 3 and nonempty and prev_phi < cur_phi
            for mult in range(1, rem // v + 1):
                nw = w + v * mult
                if code == 0:
                    if res == ra:
                        visit(nw, v - 1, 0, s0 + mult, s1, True)
                    else:
                        visit(nw, v - 1, 0, s0, s1 + mult, True)
                    continue
                if not forced:
                    visit(nw, v - 1, cur_phi, s0, s1 + mult, True)
                if may_over and (code != 2 or mult >= k):
                    visit(nw, v - 1, cur_phi, s0 + 1, s1 + mult, True)

    visit(0, n_max, 0, 0, 0, False)
    return counts
