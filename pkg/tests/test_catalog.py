import pytest

import oracles
from locale_lab import fixtures as fx
from locale_lab.catalog import (
    MAP_CLASSES,
    CatalogSpec,
    MapStream,
    enumerate_maps,
    generate_catalog,
    poset_codes,
)
from locale_lab.errors import CapExceeded
from locale_lab.lattice import frame_check
from locale_lab.maps import classify_map


def names(frames):
    return [f.name for f in frames]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_poset_counts_match_brute_force(n):
    expected = oracles.count_posets(n)
    assert expected == [1, 2, 5, 16][n - 1]
    assert len(poset_codes(n)) == expected


def test_small_catalogs():
    assert names(generate_catalog(CatalogSpec(max_join_irreducibles=1))) == ["C1", "C2"]
    assert names(generate_catalog(CatalogSpec(max_join_irreducibles=1, include_degenerate=False))) == ["C2"]
    assert set(names(generate_catalog(CatalogSpec(max_join_irreducibles=2)))) == {"C1", "C2", "C3", "B2"}


def test_default_catalog(catalog):
    assert len(catalog) == 1 + 1 + 2 + 5
    assert max(f.n for f in catalog) == 8
    assert {"C4", "B3"} <= set(names(catalog))


def test_catalog_is_deterministic(catalog):
    again = generate_catalog(CatalogSpec())
    assert names(again) == names(catalog)
    for a, b in zip(again, catalog):
        assert a.leq_table == b.leq_table and a.labels == b.labels


def test_catalog_frames_pass_frame_check(catalog):
    for fr in catalog:
        frame_check(fr.lattice, fr.name)


def test_frame_size_cap_excludes_posets():
    cat = generate_catalog(CatalogSpec(max_join_irreducibles=3, max_frame_size=6))
    assert max(f.n for f in cat) <= 6
    assert cat.excluded


def test_spec_validation():
    with pytest.raises(CapExceeded):
        CatalogSpec(max_join_irreducibles=-1)
    with pytest.raises(CapExceeded):
        CatalogSpec(max_maps_per_pair=0)
    with pytest.raises(CapExceeded):
        CatalogSpec(max_join_irreducibles=9)


def test_c3_map_counts():
    C3 = fx.C3()
    counts = {cls: sum(1 for _ in enumerate_maps(C3, C3, cls)) for cls in MAP_CLASSES}
    assert counts == {"all": 27, "monotone": 10, "meet_preserving": 6, "localic": 3}
    assert oracles.map_classes(C3.leq_table, C3.leq_table) == (27, 10, 6, 3)


def test_stream_counts_match_brute_force(small_catalog):
    for L in small_catalog:
        for M in small_catalog:
            got = tuple(sum(1 for _ in MapStream(L, M, cls).values()) for cls in MAP_CLASSES)
            assert got == oracles.map_classes(L.leq_table, M.leq_table), (L.name, M.name)


def test_stream_members_pass_their_class_filter(small_catalog):
    for L in small_catalog:
        for M in small_catalog:
            for cls in ("monotone", "meet_preserving", "localic"):
                for f in MapStream(L, M, cls):
                    assert getattr(classify_map(f), cls)


def test_cap_truncates_and_flags():
    s = MapStream(fx.C3(), fx.C3(), "all", cap=5)
    assert len(list(s)) == 5 and s.truncated
    s = MapStream(fx.C3(), fx.C3(), "all", cap=27)
    assert len(list(s)) == 27 and not s.truncated


def test_streams_are_deterministic():
    a = [f.values for f in MapStream(fx.B2(), fx.C3(), "monotone")]
    b = [f.values for f in MapStream(fx.B2(), fx.C3(), "monotone")]
    assert a == b == sorted(a)
