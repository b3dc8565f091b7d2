# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tally kernel; same contract as ``_tally_py.tally``."""

from libc.stdlib cimport calloc, free
from libc.stdint cimport int64_t

from .errors import CapacityError


cdef struct Ctx:
    int code
    int k
    int r
    int ra
    int rb
    int n_max
    int64_t capacity
    int64_t seen
    int dim
    int64_t *counts
    bint overflow


cdef inline int _pmod(int a, int m) nogil:
    cdef int x = a % m
    return x + m if x < 0 else x


cdef void _visit(Ctx *c, int w, int top, int prev_phi, int s0, int s1, bint nonempty) nogil:
    cdef int rem, v, res, cur_phi, mult, nw, hi
    cdef bint may_over, forced
    if c.overflow:
        return
    if c.code != 3 or not nonempty or prev_phi >= 1:
        c.seen += 1
        if c.seen > c.capacity:
            c.overflow = True
            return
        c.counts[(w * c.dim + s0) * c.dim + s1] += 1
    rem = c.n_max - w
    hi = top if top < rem else rem
    v = hi
    while v > 0:
        res = v % c.k
        if c.code == 0 and res != c.ra and res != c.rb:
            v -= 1
            continue
        cur_phi = c.r - _pmod(c.r - v, c.k) if c.code == 3 else 0
        may_over = c.code == 2 or (c.code != 0 and res == c.r % c.k)
        forced = c.code == 3 and nonempty and prev_phi < cur_phi
        mult = 1
        while mult * v <= rem:
            nw = w + v * mult
            if c.code == 0:
                if res == c.ra:
                    _visit(c, nw, v - 1, 0, s0 + mult, s1, True)
                else:
                    _visit(c, nw, v - 1, 0, s0, s1 + mult, True)
            else:
                if not forced:
                    _visit(c, nw, v - 1, cur_phi, s0, s1 + mult, True)
                if may_over and (c.code != 2 or mult >= c.k):
                    _visit(c, nw, v - 1, cur_phi, s0 + 1, s1 + mult, True)
            if c.overflow:
                return
            mult += 1
        v -= 1


def tally(int code, int p1, int p2, int p3, int n_max, long long capacity):
    cdef Ctx c
    cdef int w, a, b
    cdef int64_t val
    if code < 0 or code > 3:
        raise ValueError(f"unknown class code {code}")
    if code == 0:
        c.k = p3
        c.ra = p1 % p3
        c.rb = p2 % p3
        c.r = 0
    else:
        c.k = p1
        c.r = p2
        c.ra = -1
        c.rb = -1
    c.code = code
    c.n_max = n_max
    c.capacity = capacity
    c.seen = 0
    c.overflow = False
    c.dim = n_max + 1
    c.counts = <int64_t *> calloc(c.dim * c.dim * c.dim, sizeof(int64_t))
    if c.counts == NULL:
        raise MemoryError()
    try:
        with nogil:
            _visit(&c, 0, n_max, 0, 0, 0, False)
        if c.overflow:
            raise CapacityError(f"more than {capacity} members up to weight {n_max}")
        out = {}
        for w in range(c.dim):
            for a in range(c.dim):
                for b in range(c.dim):
                    val = c.counts[(w * c.dim + a) * c.dim + b]
                    if val:
                        out[(w, a, b)] = val
        return out
    finally:
        free(c.counts)
