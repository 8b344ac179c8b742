import pytest
from hypothesis import given, settings, strategies as st

import oracles
from locale_lab import fixtures as fx
from locale_lab.errors import FrameTooLarge, MixedFrames
from locale_lab.sublocales import (
    Sublocale,
    booleanization,
    closed_sublocale,
    closure_of_subset,
    enumerate_meet_subsets,
    enumerate_sublocales,
    interior_of_subset,
    interior_via_supplement,
    is_sublocale,
    is_subfit,
    join,
    least_sublocale_containing,
    meet,
    meet_closure,
    open_sublocale,
    supplement,
)


def labels(s):
    return set(s.labels)


def test_is_sublocale_examples(C3):
    assert is_sublocale(C3, ["a", "1"]).ok
    v = is_sublocale(C3, ["0", "a"])
    assert not v.ok and v.witness["condition"] == "S1" and v.witness["meet_of"] == []
    assert is_sublocale(C3, ["1"]).ok


def test_open_and_closed_sublocales(C3):
    assert labels(open_sublocale(C3, "a")) == {"0", "1"}
    assert labels(closed_sublocale(C3, "a")) == {"a", "1"}
    assert labels(open_sublocale(C3, "0")) == {"1"}
    assert labels(closed_sublocale(C3, "0")) == {"0", "a", "1"}
    assert labels(open_sublocale(C3, "1")) == {"0", "a", "1"}
    assert labels(closed_sublocale(C3, "1")) == {"1"}


def test_coframe_operations(C3):
    ca, oa = closed_sublocale(C3, "a"), open_sublocale(C3, "a")
    assert labels(join(ca, oa)) == {"0", "a", "1"}
    assert labels(meet(ca, oa)) == {"1"}
    assert supplement(oa) == ca


def test_coframe_operations_reject_mixed_frames(C3):
    other = fx.C3()
    with pytest.raises(MixedFrames):
        join(closed_sublocale(C3, "a"), closed_sublocale(other, "a"))


def test_least_sublocale_containing(C3):
    assert labels(least_sublocale_containing(C3, ["0"])) == {"0", "1"}
    assert labels(least_sublocale_containing(C3, [])) == {"1"}
    assert labels(least_sublocale_containing(C3, ["0", "a", "1"])) == {"0", "a", "1"}


def test_closure_of_subsets(C3):
    assert labels(closure_of_subset(C3, ["0", "1"])) == {"0", "a", "1"}
    assert labels(closure_of_subset(C3, [])) == {"1"}
    assert labels(closure_of_subset(C3, ["a"])) == {"a", "1"}


def test_interior_of_subsets(C3):
    ca = closed_sublocale(C3, "a")
    assert labels(interior_of_subset(C3, ca)) == {"1"}
    assert labels(interior_via_supplement(ca)) == {"1"}
    assert interior_of_subset(C3, ["0", "1"]) == open_sublocale(C3, "a")
    for fr in fx.frames().values():
        assert labels(interior_of_subset(fr, [])) == {fr.labels[fr.top]}


def test_sublocale_counts():
    assert len(enumerate_sublocales(fx.C2())) == 2
    assert len(enumerate_sublocales(fx.C3())) == 4
    sb2 = enumerate_sublocales(fx.B2())
    assert len(sb2) == 4
    assert all(s.is_closed for s in sb2)


def test_sublocale_cap():
    with pytest.raises(FrameTooLarge):
        enumerate_sublocales(fx.C4(), cap=3)


def test_meet_closure(C3):
    assert labels(meet_closure(C3, ["0"])) == {"0", "1"}
    assert labels(meet_closure(C3, [])) == {"1"}
    assert labels(meet_closure(C3, ["0", "a", "1"])) == {"0", "a", "1"}


def test_booleanization():
    assert labels(booleanization(fx.C3())) == {"0", "1"}
    assert labels(booleanization(fx.B2())) == {"0", "p", "q", "1"}
    assert labels(booleanization(fx.M5())) == {"0", "p", "q", "1"}


def test_subfitness():
    v = is_subfit(fx.C3())
    assert not v.ok and v.witness == {"a": "a", "b": "0"}
    assert is_subfit(fx.B2()).ok
    assert is_subfit(fx.C2()).ok


def test_catalog_sublocales_match_brute_force(catalog):
    for fr in catalog:
        assert list(enumerate_sublocales(fr).masks) == oracles.sublocales(fr.leq_table)
        assert booleanization(fr).elements == oracles.booleanization(fr.leq_table)


def test_meet_subsets_are_meet_closed(catalog):
    for fr in catalog:
        for m in enumerate_meet_subsets(fr):
            members = [i for i in range(fr.n) if m >> i & 1]
            for i in members:
                for j in members:
                    assert m >> fr.meet_table[i][j] & 1
            assert m >> fr.top & 1


def test_open_and_closed_are_complements(catalog):
    for fr in catalog:
        SL = enumerate_sublocales(fr)
        for a in range(fr.n):
            assert SL.complement_mask(fr.closed_masks[a]) == fr.open_masks[a]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["C3", "C4", "B2", "M5"]), st.integers(0, 31))
def test_least_sublocale_is_intersection_of_supersets(name, raw):
    fr = fx.frames()[name]
    X = raw & fr.full
    expected = fr.full
    for S in oracles.sublocales(fr.leq_table):
        if X & ~S == 0:
            expected &= S
    assert least_sublocale_containing(fr, X).members == expected


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["C3", "C4", "B2", "M5"]), st.data())
def test_s_of_l_is_a_coframe_under_join_and_meet(name, data):
    fr = fx.frames()[name]
    SL = enumerate_sublocales(fr)
    a, b, c = (Sublocale(fr, data.draw(st.sampled_from(SL.masks))) for _ in range(3))
    assert join(meet(a, b), c) == meet(join(a, c), join(b, c))
    assert a <= join(a, b) and meet(a, b) <= a
