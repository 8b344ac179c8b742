import pytest
from hypothesis import given, settings, strategies as st

from locale_lab import fixtures as fx
from locale_lab.catalog import MapStream
from locale_lab.errors import LocaleLabError, NotLocalic, NotMeetPreserving, NotMeetSubset
from locale_lab.maps import (
    HIERARCHY,
    LatticeMap,
    classify_map,
    image_sublocale,
    joyal_tierney,
    left_adjoint,
    localic_preimage,
    open_closed_report,
    skeletal_hierarchy,
)
from locale_lab.sublocales import closed_sublocale, enumerate_sublocales, open_sublocale


def labels(s):
    return set(s.labels)


def test_identity_has_every_flag(maps):
    assert all(classify_map(maps["id_C3"]).flags().values())


def test_g_top_flags(maps):
    c = classify_map(maps["g_top"])
    assert c.meet_preserving and not c.L1 and not c.localic
    assert c.witnesses["L1"] == {"a": "0"}


def test_h_flags(maps):
    c = classify_map(maps["h"])
    assert c.monotone and not c.meet_preserving
    w = c.witnesses["meet_preserving"]
    assert set(w["subset"]) == {"p", "q"}
    assert w["f(meet)"] == "0" and w["meet(f)"] == "a"


def test_map_must_be_total():
    with pytest.raises(LocaleLabError):
        LatticeMap.from_assignments(fx.C3(), fx.C3(), {"0": "0", "a": "a"})


def test_left_adjoints(maps):
    g = left_adjoint(maps["f_surj"])
    assert g.assignments() == {"0": "0", "c": "a", "1": "1"}
    assert left_adjoint(maps["id_C3"]).values == (0, 1, 2)
    with pytest.raises(NotMeetPreserving):
        left_adjoint(maps["h"])


def test_images(maps):
    f = maps["f_surj"]
    assert labels(image_sublocale(f, open_sublocale(f.source, "b"))) == {"0", "c", "1"}
    idm = maps["id_C3"]
    for S in enumerate_sublocales(idm.source):
        assert image_sublocale(idm, S) == S
    j = maps["j_closed"]
    assert labels(image_sublocale(j, j.source.full)) == {"a", "1"}
    with pytest.raises(NotLocalic):
        image_sublocale(maps["g_top"], 0b111)


def test_localic_preimages_of_principal_sublocales(maps):
    f = maps["f_surj"]
    assert labels(localic_preimage(f, closed_sublocale(f.target, "c"))) == {"a", "b", "1"}
    assert labels(localic_preimage(f, open_sublocale(f.target, "c"))) == {"0", "1"}
    idm = maps["id_C3"]
    for T in enumerate_sublocales(idm.target):
        assert localic_preimage(idm, T).members == T.members


def test_localic_preimage_needs_meet_subset(maps):
    f = maps["f_surj"]
    with pytest.raises(NotMeetSubset):
        localic_preimage(f, ["0", "c"])


def test_open_closed_reports(maps):
    j = open_closed_report(maps["j_closed"])
    assert not j.is_open and j.is_closed
    assert j.witnesses["open"]["image"] == "{a,1}"
    for name in ("f_surj", "id_C3"):
        r = open_closed_report(maps[name])
        assert r.is_open and r.is_closed and r.closed_conditions_agree


def test_joyal_tierney_on_f_surj(maps):
    f = maps["f_surj"]
    r = joyal_tierney(f)
    assert r.open and r.heyting_hom and r.frobenius and r.arrow_identity
    L, M = f.source, f.target
    assert {L.labels[a]: M.labels[b] for a, b in enumerate(r.shriek)} == {"0": "0", "a": "c", "b": "1", "1": "1"}
    b, c = L.index("b"), M.index("c")
    h = f.adjoint_values()
    assert r.shriek[L.meet(b, h[c])] == c == M.meet(r.shriek[b], c)


def test_joyal_tierney_on_j_closed(maps):
    r = joyal_tierney(maps["j_closed"])
    assert not (r.open or r.heyting_hom or r.frobenius or r.arrow_identity)


def test_joyal_tierney_on_identity(maps):
    r = joyal_tierney(maps["id_C3"])
    assert r.agree and r.open and r.shriek == (0, 1, 2)


def test_hierarchy_examples(maps):
    assert all(skeletal_hierarchy(maps["f_surj"]).flags().values())
    assert all(skeletal_hierarchy(maps["id_C3"]).flags().values())
    j = skeletal_hierarchy(maps["j_closed"])
    assert not any(j.flags().values())
    assert j.witnesses["skeletal"] == {"b": "a"}


def test_hierarchy_needs_localic(maps):
    with pytest.raises(NotLocalic):
        skeletal_hierarchy(maps["g_top"])


@st.composite
def catalog_maps(draw, cls):
    frames = list(fx.frames().values())
    L = draw(st.sampled_from(frames))
    M = draw(st.sampled_from(frames))
    maps = list(MapStream(L, M, cls, cap=500))
    if not maps:
        return None
    return draw(st.sampled_from(maps))


@settings(max_examples=60, deadline=None)
@given(catalog_maps("all"))
def test_class_flags_are_nested(f):
    c = classify_map(f)
    if c.localic:
        assert c.meet_preserving and c.L1 and c.L2
    if c.meet_preserving:
        assert c.monotone
    assert c.meet_routes_agree


@settings(max_examples=60, deadline=None)
@given(catalog_maps("localic"))
def test_hierarchy_chain_on_random_localic_maps(f):
    if f is None:
        return
    r = skeletal_hierarchy(f)
    assert r.chain_violation() is None
    assert r.hereditary_conditions_agree
    flags = r.flags()
    assert list(flags) == list(HIERARCHY)
    assert joyal_tierney(f).agree
