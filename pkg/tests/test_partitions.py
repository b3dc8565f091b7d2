import pytest

from oracles import in_kpart, in_mkr, kpartition_candidates, overpartitions, partitions
from sep_partitions import partitions as P
from sep_partitions.errors import CapacityError
from sep_partitions.partitions import (
    ABK,
    KPART,
    MKR,
    OKR,
    OverPart,
    Overpartition,
    class_gf_enumerated,
    count_by_stats,
    enumerate_class,
    parse_class,
    parse_partition,
    partition_from_json,
    phi,
    tally_class,
    validate,
)
from sep_partitions.series import collapse_aux


def op(text):
    return parse_partition(text)


def as_set(members):
    return {str(p) for p in members}


def to_op(parts):
    return Overpartition(tuple(OverPart(v, o) for v, o in parts))


# --- notation ---------------------------------------------------------------

def test_parse_and_format_roundtrip():
    p = op("9~,7,6,6,5,3~,3,1,1")
    assert str(p) == "9~,7,6,6,5,3~,3,1,1"
    assert p.weight == 41 and p.length == 9 and p.n_overlined == 2
    assert str(Overpartition()) == "()"
    assert op("()") == Overpartition()


def test_json_roundtrip():
    p = op("3~,2,1")
    obj = p.to_json()
    assert obj == {"parts": [{"v": 3, "o": True}, {"v": 2, "o": False}, {"v": 1, "o": False}]}
    assert partition_from_json(obj) == p


def test_token_order():
    assert OverPart(1).token < OverPart(1, True).token < OverPart(2).token


@pytest.mark.parametrize("bad", ["a,b", "3,,1", "-1", "2~~"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_partition(bad)


def test_parse_class():
    assert parse_class("abk:1,2,3") == ABK(1, 2, 3)
    assert parse_class("okr:3,3") == OKR(3, 3)
    assert parse_class("kpart:3") == KPART(3)
    assert str(parse_class("MKR: 3,1")) == "mkr:3,1"
    for bad in ("abk:2,1,3", "okr:3,4", "kpart:0", "mkr:3", "foo:1"):
        with pytest.raises(ValueError):
            parse_class(bad)


# --- phi and validate -------------------------------------------------------------

def test_phi_examples():
    assert phi(5, 3, 1) == -1
    assert phi(1, 3, 1) == 1
    assert phi(4, 3, 1) == 1


def test_phi_window():
    for k in range(1, 6):
        for r in range(1, k + 1):
            for v in range(1, 30):
                s = phi(v, k, r)
                assert r - k + 1 <= s <= r and (v - s) % k == 0


def test_validate_examples():
    assert validate(op("5,1~"), MKR(3, 1))
    assert not validate(op("5,1"), MKR(3, 1))
    assert validate(op("1,1,1~,1,1,1"), KPART(3))
    assert validate(op("3~,2,1"), OKR(3, 3))
    assert not validate(op("2~,2,1"), OKR(3, 3))


def test_validate_rejects_malformed():
    assert not validate(op("1,2"), OKR(1, 1))
    assert not validate(op("2,2~"), OKR(1, 1))
    assert not validate(op("1~,1,1"), KPART(3))
    assert not validate(op("1,1~"), KPART(3))
    assert not validate(op("3"), ABK(1, 2, 3))


# --- enumeration against the published lists ----------------------------------------

PLAIN_AT_6 = {
    "6", "5,1", "4,2", "4,1,1", "3,3", "3,2,1", "3,1,1,1",
    "2,2,2", "2,2,1,1", "2,1,1,1,1", "1,1,1,1,1,1",
}
OKR33_AT_6 = PLAIN_AT_6 | {"6~", "3~,3", "3~,2,1", "3~,1,1,1"}
KPART3_AT_6 = PLAIN_AT_6 | {"3,1,1,1~", "2,2,2~", "2,1,1,1~,1", "1,1,1~,1,1,1"}
MKR31_AT_6 = {
    "5,1~", "4,1,1", "4~,1,1", "4,1~,1", "4~,1~,1", "3,2,1~", "3,1~,1,1",
    "2,2,1~,1", "2,1~,1,1,1", "1,1,1,1,1,1", "1~,1,1,1,1,1",
}


def test_okr33_weight6_exact():
    assert as_set(enumerate_class(6, OKR(3, 3))) == OKR33_AT_6


def test_kpart3_weight6_exact():
    members = enumerate_class(6, KPART(3))
    assert len(members) == 15
    assert as_set(members) == KPART3_AT_6


def test_mkr31_weight6():
    members = enumerate_class(6, MKR(3, 1))
    assert len(members) == 11
    assert as_set(members) == MKR31_AT_6


def test_enumerate_empty_weight():
    for spec in (ABK(1, 2, 3), OKR(2, 1), KPART(2), MKR(3, 1)):
        assert enumerate_class(0, spec) == [Overpartition()]


def test_enumeration_sorted_descending():
    members = enumerate_class(8, OKR(2, 2))
    keys = [p.key for p in members]
    assert keys == sorted(keys, reverse=True)
    assert len(set(keys)) == len(keys)


# --- completeness against definition-level brute force -----------------------------------

SPECS = [ABK(1, 2, 3), ABK(2, 3, 5), OKR(1, 1), OKR(3, 1), OKR(3, 3), OKR(4, 2),
         KPART(1), KPART(2), KPART(3), MKR(2, 1), MKR(3, 1), MKR(3, 3), MKR(4, 2)]


def _reference(n, spec):
    if isinstance(spec, ABK):
        res = {spec.a % spec.k, spec.b % spec.k}
        return {tuple((v, False) for v in p) for p in partitions(n)
                if all(v % spec.k in res for v in p)}
    if isinstance(spec, KPART):
        return {p for p in kpartition_candidates(n) if in_kpart(p, spec.k)}
    pool = [p for p in overpartitions(n)
            if all(not o or v % spec.k == spec.r % spec.k for v, o in p)]
    if isinstance(spec, MKR):
        pool = [p for p in pool if in_mkr(p, spec.k, spec.r)]
    return set(pool)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_enumeration_matches_definition(spec):
    for n in range(11):
        got = enumerate_class(n, spec)
        ref = _reference(n, spec)
        assert {tuple(tuple(x) for x in p.parts) for p in got} == ref
        assert all(p.weight == n and validate(p, spec) for p in got)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_validate_matches_definition(spec):
    for n in range(9):
        ref = _reference(n, spec)
        pool = kpartition_candidates(n) if isinstance(spec, KPART) else overpartitions(n)
        for cand in pool:
            assert validate(to_op(cand), spec) == (cand in ref)


def test_degenerate_classes_are_overpartitions():
    for n in range(13):
        ref = sum(1 for _ in overpartitions(n))
        assert len(enumerate_class(n, OKR(1, 1))) == ref
        assert len(enumerate_class(n, KPART(1))) == ref
    counts = collapse_aux(class_gf_enumerated(OKR(1, 1), 20)).q_coefficients()
    kpart = collapse_aux(class_gf_enumerated(KPART(1), 20)).q_coefficients()
    assert counts == kpart
    assert counts[:11] == [1, 2, 4, 8, 14, 24, 40, 64, 100, 154, 232]


@pytest.mark.parametrize("k,r", [(2, 1), (3, 1), (3, 3), (4, 2)])
def test_mkr_never_exceeds_okr(k, r):
    a = collapse_aux(class_gf_enumerated(MKR(k, r), 20)).q_coefficients()
    b = collapse_aux(class_gf_enumerated(OKR(k, r), 20)).q_coefficients()
    assert all(x <= y for x, y in zip(a, b))


# --- statistics -------------------------------------------------------------------

def test_count_by_stats_examples():
    o = count_by_stats(6, OKR(3, 3))
    kp = count_by_stats(6, KPART(3))
    for m in range(1, 5):
        assert o[(1, m)] == 1
        assert kp[(1, m + 2)] == 1
    assert sum(o.values()) == 15


def test_count_by_stats_large_weight_example():
    assert count_by_stats(41, OKR(3, 3)).get((2, 9), 0) >= 1


def test_count_by_stats_groups_enumeration():
    spec = ABK(1, 2, 3)
    members = enumerate_class(9, spec)
    counts = count_by_stats(9, spec)
    assert sum(counts.values()) == len(members)
    for p in members:
        assert P.stat_key(p, spec) in counts


def test_three_regular_counts():
    s = collapse_aux(class_gf_enumerated(ABK(1, 2, 3), 6))
    assert s.q_coefficients() == [1, 1, 2, 2, 4, 5, 7]


def test_constant_term_is_one():
    for spec in SPECS:
        assert class_gf_enumerated(spec, 3).coeff(0, (0, 0)) == 1


def test_mkr_count_at_six():
    assert collapse_aux(class_gf_enumerated(MKR(3, 1), 6)).coeff(6) == 11


# --- backends and capacity -----------------------------------------------------------

@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_tally_matches_enumeration(spec, tally_impl):
    n_max = 12
    counts = tally_impl(spec.code, *spec.kernel_params(), n_max, 10**7)
    ref = {}
    for n in range(n_max + 1):
        for p in enumerate_class(n, spec):
            key = (n,) + P.stat_key(p, spec)
            ref[key] = ref.get(key, 0) + 1
    assert counts == ref


def test_backends_agree_at_larger_weight():
    from conftest import BACKENDS
    results = [fn(OKR(2, 1).code, *OKR(2, 1).kernel_params(), 22, 10**7) for _, fn in BACKENDS]
    assert all(r == results[0] for r in results)


def test_capacity_limits():
    with pytest.raises(CapacityError):
        enumerate_class(20, OKR(1, 1), capacity=100)
    with pytest.raises(CapacityError):
        tally_class(OKR(1, 1), 20, capacity=100)


def test_capacity_from_environment(monkeypatch):
    monkeypatch.setenv(P.CAPACITY_ENV, "5")
    assert P.default_capacity() == 5
    with pytest.raises(CapacityError):
        enumerate_class(6, OKR(3, 3))
