import json

import pytest

from locale_lab import fixtures as fx
from locale_lab.catalog import CatalogSpec
from locale_lab.errors import UnknownTheorem
from locale_lab.maps import LatticeMap
from locale_lab.theorems import THEOREMS, default_jobs, replay_witness, verify_theorem

SMALL = CatalogSpec(max_join_irreducibles=2)


def test_registry_covers_the_named_theorems():
    for tid in ("type-I", "type-II", "type-III", "type-IV", "jt", "hierarchy", "prop-5-6", "closed-6-3", "dissolution"):
        assert tid in THEOREMS
    with pytest.raises(UnknownTheorem):
        verify_theorem("no-such-theorem", SMALL)


def test_type_one_small_catalog():
    r = verify_theorem("type-I", SMALL)
    assert r.passed and r.first_counterexample is None
    c = r.instances_checked
    assert c["localic"] + c["meet_preserving"] > 0
    assert c["monotone"] + c["other"] > 0


def test_jt_small_catalog():
    r = verify_theorem("jt", SMALL)
    assert r.passed and r.instances_checked["localic"] > 0


def _corrupted_f_surj():
    f = fx.maps()["f_surj"]
    vals = list(f.values)
    vals[f.source.index("a")] = f.target.index("1")
    return LatticeMap(f.source, f.target, vals, name="f_surj~a", cached_adjoint=f.adjoint_values())


def test_mutated_f_surj_fails_type_two_with_replayable_witness(tmp_path):
    r = verify_theorem("type-II", SMALL, maps=[_corrupted_f_surj()], witness_dir=tmp_path)
    assert not r.passed
    data = json.loads(open(r.witness_file).read())
    assert data["theorem_id"] == "type-II" and data["kind"] == "map"
    assert replay_witness(r.witness_file).reproduced


def test_uncorrupted_declared_map_passes():
    f = fx.maps()["f_surj"]
    g = LatticeMap(f.source, f.target, f.values, name="f_surj", cached_adjoint=f.adjoint_values())
    assert verify_theorem("type-II", maps=[g]).passed


def test_first_counterexample_follows_frame_order():
    good = fx.C3()
    bad = good.with_tables(meet=((0, 0, 0), (0, 1, 1), (0, 2, 2)), name="C3~bad")
    r = verify_theorem("frame-tables", frames=[good, bad, fx.B2()])
    assert not r.passed and r.first_counterexample["frame"]["name"] == "C3~bad"


def test_verdict_matches_counterexample_presence():
    for tid in ("heyting", "type-III", "hierarchy"):
        r = verify_theorem(tid, SMALL)
        assert r.passed == (r.first_counterexample is None)


def test_parallel_run_matches_serial():
    a = verify_theorem("type-II", SMALL, jobs=1)
    b = verify_theorem("type-II", SMALL, jobs=2)
    assert a.verdict == b.verdict and a.instances_checked == b.instances_checked


def test_jobs_env_var(monkeypatch):
    monkeypatch.setenv("LOCALE_LAB_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.delenv("LOCALE_LAB_JOBS")
    assert default_jobs() >= 1


def test_truncated_pairs_are_reported():
    r = verify_theorem("type-I", CatalogSpec(max_join_irreducibles=2, max_maps_per_pair=10))
    assert r.passed and r.truncated
