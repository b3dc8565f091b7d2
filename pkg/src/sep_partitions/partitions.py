"""Overpartitions, the four partition classes, and brute-force enumeration.

Parts are ordered ``1 < 1~ < 2 < 2~ < ...``.  A member is displayed
non-increasingly in that order, so an overlined copy comes before the equal
plain copies.  k-partitions are the exception: their single optional overline
of a value sits on the k-th occurrence, e.g. ``3,1,1,1~`` for k = 3.

Text notation is comma separated with a trailing ``~`` for overlines; the
empty partition prints as ``()``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from ._backend import tally
from .errors import CapacityError
from .series import TruncatedSeries

DEFAULT_CAPACITY = 10**7
CAPACITY_ENV = "SEP_PARTITIONS_CAPACITY"


def default_capacity() -> int:
    raw = os.environ.get(CAPACITY_ENV)
    if raw is None:
        return DEFAULT_CAPACITY
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAPACITY_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{CAPACITY_ENV} must be positive")
    return value


class OverPart(NamedTuple):
    value: int
    overlined: bool = False

    @property
    def token(self) -> int:
        """Position in the total order 1 < 1~ < 2 < 2~ < ..."""
        return 2 * self.value + self.overlined

    def __str__(self) -> str:
        return f"{self.value}~" if self.overlined else str(self.value)


@dataclass(frozen=True)
class Overpartition:
    parts: tuple[OverPart, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(p if isinstance(p, OverPart) else OverPart(*p) for p in self.parts)
        )

    @classmethod
    def plain(cls, values) -> Overpartition:
        return cls(tuple(OverPart(v) for v in values))

    @classmethod
    def parse(cls, text: str) -> Overpartition:
        return parse_partition(text)

    @property
    def weight(self) -> int:
        return sum(p.value for p in self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def n_overlined(self) -> int:
        return sum(p.overlined for p in self.parts)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(p.value for p in self.parts)

    @property
    def key(self) -> tuple:
        return tuple((p.value, p.overlined) for p in self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return format_partition(self)

    def to_json(self) -> dict:
        return {"parts": [{"v": p.value, "o": p.overlined} for p in self.parts]}


_PART_RE = re.compile(r"^\s*(\d+)\s*(~?)\s*$")


def parse_partition(text: str) -> Overpartition:
    """Parse tilde notation such as ``"9~,7,6,6,5,3~,3,1,1"``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body.strip():
        return Overpartition()
    parts = []
    for chunk in body.split(","):
        m = _PART_RE.match(chunk)
        if not m:
            raise ValueError(f"bad part {chunk!r} in {text!r}")
        value = int(m.group(1))
        if value < 1:
            raise ValueError(f"parts must be positive, got {value}")
        parts.append(OverPart(value, bool(m.group(2))))
    return Overpartition(tuple(parts))


def format_partition(p: Overpartition) -> str:
    if not p.parts:
        return "()"
    return ",".join(str(x) for x in p.parts)


def partition_from_json(obj: dict) -> Overpartition:
    return Overpartition(tuple(OverPart(int(d["v"]), bool(d.get("o", False))) for d in obj["parts"]))


# --- classes ---------------------------------------------------------------

ABK_CODE, OKR_CODE, KPART_CODE, MKR_CODE = 0, 1, 2, 3


@dataclass(frozen=True)
class ClassSpec:
    """Base of the four class descriptors; use the subclasses."""

    code = -1
    tag = ""
    stat_names = ("l_o", "l")

    def kernel_params(self) -> tuple[int, int, int]:
        raise NotImplementedError

    def display_kpart(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"{self.tag}:" + ",".join(str(v) for v in self.kernel_params() if v)


@dataclass(frozen=True)
class ABK(ClassSpec):
    """Partitions with every part congruent to a or b modulo k."""

    a: int
    b: int
    k: int
    code = ABK_CODE
    tag = "abk"
    stat_names = ("l_a", "l_b")

    def __post_init__(self):
        if not 1 <= self.a < self.b <= self.k:
            raise ValueError(f"need 1 <= a < b <= k, got a={self.a} b={self.b} k={self.k}")

    def kernel_params(self):
        return (self.a, self.b, self.k)

    def __str__(self):
        return f"abk:{self.a},{self.b},{self.k}"


@dataclass(frozen=True)
class OKR(ClassSpec):
    """Overpartitions where only parts congruent to r mod k may be overlined."""

    k: int
    r: int
    code = OKR_CODE
    tag = "okr"

    def __post_init__(self):
        _check_kr(self.k, self.r)

    def kernel_params(self):
        return (self.k, self.r, 0)

    def __str__(self):
        return f"okr:{self.k},{self.r}"


@dataclass(frozen=True)
class KPART(ClassSpec):
    """Partitions where the k-th occurrence of a value may be overlined."""

    k: int
    code = KPART_CODE
    tag = "kpart"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"need k >= 1, got {self.k}")

    def kernel_params(self):
        return (self.k, 0, 0)

    def display_kpart(self):
        return True

    def __str__(self):
        return f"kpart:{self.k}"


@dataclass(frozen=True)
class MKR(ClassSpec):
    """(k,r)-modulo overpartitions."""

    k: int
    r: int
    code = MKR_CODE
    tag = "mkr"

    def __post_init__(self):
        _check_kr(self.k, self.r)

    def kernel_params(self):
        return (self.k, self.r, 0)

    def __str__(self):
        return f"mkr:{self.k},{self.r}"


def _check_kr(k, r):
    if not 1 <= r <= k:
        raise ValueError(f"need 1 <= r <= k, got k={k} r={r}")


_CLASS_RE = re.compile(r"^\s*(abk|okr|kpart|mkr)\s*:\s*([\d,\s]+)$", re.IGNORECASE)
_ARITY = {"abk": 3, "okr": 2, "kpart": 1, "mkr": 2}


def parse_class(text: str) -> ClassSpec:
    """``"abk:a,b,k"``, ``"okr:k,r"``, ``"kpart:k"`` or ``"mkr:k,r"``."""
    m = _CLASS_RE.match(text)
    if not m:
        raise ValueError(f"unrecognised class {text!r}")
    tag = m.group(1).lower()
    try:
        args = [int(v) for v in m.group(2).split(",")]
    except ValueError:
        raise ValueError(f"bad parameters in {text!r}") from None
    if len(args) != _ARITY[tag]:
        raise ValueError(f"{tag} takes {_ARITY[tag]} parameters, got {len(args)}")
    return {"abk": ABK, "okr": OKR, "kpart": KPART, "mkr": MKR}[tag](*args)


def phi(v: int, k: int, r: int) -> int:
    """Residue representative of v modulo k in the window ``[r-k+1, r]``."""
    return r - (r - v) % k


# --- membership ------------------------------------------------------------

def _groups(p: Overpartition):
    """Runs of equal value as (value, multiplicity, index of overline or -1)."""
    out = []
    i = 0
    parts = p.parts
    while i < len(parts):
        v = parts[i].value
        j = i
        over = -1
        while j < len(parts) and parts[j].value == v:
            if parts[j].overlined:
                if over >= 0:
                    return None
                over = j - i
            j += 1
        out.append((v, j - i, over))
        i = j
    return out


def stat_key(p: Overpartition, spec: ClassSpec) -> tuple[int, int]:
    if isinstance(spec, ABK):
        ra = spec.a % spec.k
        la = sum(1 for x in p.parts if x.value % spec.k == ra)
        return (la, len(p.parts) - la)
    return (p.n_overlined, len(p.parts))


def validate(p: Overpartition, spec: ClassSpec) -> bool:
    """True iff ``p``, in canonical display order, belongs to ``spec``'s class."""
    parts = p.parts
    if any(x.value < 1 for x in parts):
        return False
    if any(parts[i].value < parts[i + 1].value for i in range(len(parts) - 1)):
        return False
    groups = _groups(p)
    if groups is None:
        return False
    if isinstance(spec, KPART):
        for v, mult, over in groups:
            if over >= 0 and (mult < spec.k or over != spec.k - 1):
                return False
        return True
    if any(over > 0 for _, _, over in groups):
        return False
    if isinstance(spec, ABK):
        allowed = {spec.a % spec.k, spec.b % spec.k}
        return not p.n_overlined and all(x.value % spec.k in allowed for x in parts)
    k, r = spec.k, spec.r
    if any(x.overlined and x.value % k != r % k for x in parts):
        return False
    if isinstance(spec, OKR):
        return True
    # MKR
    if parts and phi(parts[-1].value, k, r) < 1:
        return False
    for i in range(len(parts) - 1):
        if phi(parts[i].value, k, r) < phi(parts[i + 1].value, k, r) and not parts[i + 1].overlined:
            return False
    return True


# --- enumeration -----------------------------------------------------------

def _group_parts(v: int, mult: int, over: bool, spec: ClassSpec) -> list[OverPart]:
    if not over:
        return [OverPart(v)] * mult
    if spec.display_kpart():
        k = spec.k
        return [OverPart(v)] * (k - 1) + [OverPart(v, True)] + [OverPart(v)] * (mult - k)
    return [OverPart(v, True)] + [OverPart(v)] * (mult - 1)


def _iter_groups(n: int, spec: ClassSpec) -> Iterator[list[tuple[int, int, bool]]]:
    """Depth-first over value groups (largest value first) with class filters."""
    code = spec.code
    p1, p2, p3 = spec.kernel_params()
    if code == ABK_CODE:
        k = p3
        residues = {p1 % k, p2 % k}
    else:
        k = p1
        r = p2
    stack: list[tuple[int, int, bool]] = []

    def rec(rem, top, prev_phi):
        if rem == 0:
            if code != MKR_CODE or not stack or prev_phi >= 1:
                yield list(stack)
            return
        for v in range(min(top, rem), 0, -1):
            if code == ABK_CODE:
                if v % k not in residues:
                    continue
                opts = (False,)
            elif code == KPART_CODE:
                opts = (False, True)
            else:
                opts = (False, True) if v % k == r % k else (False,)
            cur_phi = phi(v, k, r) if code == MKR_CODE else 0
            forced = code == MKR_CODE and stack and prev_phi < cur_phi
            for mult in range(1, rem // v + 1):
                for over in opts:
                    if forced and not over:
                        continue
                    if over and code == KPART_CODE and mult < k:
                        continue
                    stack.append((v, mult, over))
                    yield from rec(rem - v * mult, v - 1, cur_phi)
                    stack.pop()

    yield from rec(n, n, 0)


def enumerate_class(n: int, spec: ClassSpec, capacity: int | None = None) -> list[Overpartition]:
    """All members of weight ``n`` in canonical display, lexicographically descending."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    cap = default_capacity() if capacity is None else capacity
    out = []
    for groups in _iter_groups(n, spec):
        if len(out) >= cap:
            raise CapacityError(f"more than {cap} members of {spec} at weight {n}")
        parts = []
        for v, mult, over in groups:
            parts.extend(_group_parts(v, mult, over, spec))
        out.append(Overpartition(tuple(parts)))
    out.sort(key=lambda p: p.key, reverse=True)
    return out


# exported under the contract name
enumerate = enumerate_class  # noqa: A001


def tally_class(spec: ClassSpec, n_max: int, capacity: int | None = None) -> dict[tuple, int]:
    """Counts keyed ``(weight, stat0, stat1)`` over all members of weight <= ``n_max``."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    cap = default_capacity() if capacity is None else capacity
    p1, p2, p3 = spec.kernel_params()
    return tally(spec.code, p1, p2, p3, n_max, cap)


def count_by_stats(n: int, spec: ClassSpec, capacity: int | None = None) -> dict[tuple[int, int], int]:
    """Members of weight ``n`` grouped by statistic key."""
    counts = tally_class(spec, n, capacity)
    return {key[1:]: c for key, c in sorted(counts.items()) if key[0] == n}


def class_gf_enumerated(spec: ClassSpec, order: int, capacity: int | None = None) -> TruncatedSeries:
    """Generating function of the class, read off the brute-force tally.

    The tracking variables are (l_a, l_b) for ABK and (l_o, l) otherwise.
    """
    return TruncatedSeries(order, 2, tally_class(spec, order, capacity))
