"""Theorem registry, exhaustive verification over the catalog, witness files.

A theorem is a set of laws plus the class of instances it quantifies over.
Laws over plain, monotone or meet-preserving maps with a vectorized form run
through ``batch``; a failing row is rebuilt as a ``LatticeMap`` and re-checked
by the per-map law, which supplies the reported witness. Everything else runs
per map.
"""

from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import adjunctions as A
from . import suites as S
from .adjunctions import LawResult
from .batch import BATCH_LAWS, BatchEval, PairTables, chunk_size, product_rows, tiers
from .catalog import CatalogSpec, MapStream, generate_catalog
from .errors import InternalInconsistency, LocaleLabError, UnknownTheorem
from .io import frame_from_json, frame_to_json, map_from_json, map_to_json
from .maps import LatticeMap, classify_map

TIERS = ("localic", "meet_preserving", "monotone", "other")


@dataclass(frozen=True)
class Theorem:
    id: str
    description: str
    scope: str | None = None  # map class quantified over, None for frame-only
    map_laws: tuple = ()
    frame_laws: tuple = ()
    batch: tuple = ()


def _t(type_id):
    return lambda f: A.law_type(f, type_id)


def _report_laws(report_fn):
    def run(f):
        if not classify_map(f).meet_preserving:
            return [A._skip(report_fn.__name__, "needs a meet-preserving map")]
        return list(report_fn(f).laws)

    return run


def _localic_only(fn):
    def run(f):
        if not classify_map(f).localic:
            return [A._skip(fn.__name__, "needs a localic map")]
        return fn(f)

    run.__name__ = fn.__name__
    return run


def _listed(fn):
    def run(f):
        r = fn(f)
        return r if isinstance(r, list) else [r]

    run.__name__ = fn.__name__
    return run


_REGISTRY = [
    Theorem("frame-tables", "meet, join and arrow tables agree with the order; distributivity", frame_laws=(S.law_frame_tables,)),
    Theorem("heyting", "Heyting rules H1-H4, residuation and a <= a**", frame_laws=(S.law_heyting,)),
    Theorem("sublocale-laws", "open/closed complements, coframe S(L), closure, interior, difference, Booleanization", frame_laws=(S.law_sublocale_structure,)),
    Theorem(
        "oracles",
        "pruned localic preimage and least sublocale against enumeration; arrow against brute force",
        scope="meet_preserving",
        frame_laws=(S.law_oracles_frame,),
        map_laws=(S.law_preimage_oracle,),
    ),
    Theorem("type-I", "closed image/preimage pair is adjoint iff f preserves meets", "all", (_listed(A.law_type_I),), batch=("type-I",)),
    Theorem("closed-galois-forms", "the equivalent forms of the type I Galois condition", "all", (_listed(A.law_closed_galois_forms),), batch=("closed-galois-forms",)),
    Theorem("localic-closed-preimage", "localic iff type I adjoint with cl f^-1[O] = O and the closed/open preimage containment", "all", (_listed(A.law_localic_closed_preimage),), batch=("localic-closed-preimage",)),
    Theorem("localic-plain-map", "a plain map is localic iff it is monotone with an adjoint type II pair", "all", (_listed(A.law_localic_plain_map),), batch=("localic-plain-map",)),
    Theorem(
        "type-II",
        "open preimage pair is adjoint iff f is localic; interior test for localic agrees with L1/L2",
        "monotone",
        (_listed(_t("II")), _listed(A.law_localic_interior_test)),
        batch=("type-II", "localic-interior-test"),
    ),
    Theorem("open-preimage-void", "f^-1[O] = O iff each f^-1[c(b)] lies inside the complement of int f^-1[o(b)]", "meet_preserving", (_listed(A.law_open_preimage_void),)),
    Theorem("interior-preimage-void", "int f^-1[O] = O iff each int f^-1[c(b)] lies inside the complement of int f^-1[o(b)]", "meet_preserving", (_listed(A.law_interior_preimage_void),)),
    Theorem("type-III", "open image pair is adjoint iff f is open", "meet_preserving", (_listed(_t("III")),)),
    Theorem("type-IV", "mixed pair is adjoint iff f is open localic", "meet_preserving", (_listed(_t("IV")), _listed(A.law_open_galois_forms))),
    Theorem("triple-open", "triple adjunction on open sublocales exactly for open localic maps", "monotone", (_listed(A.law_triple_open),), batch=("triple-open",)),
    Theorem("triple-closed", "triple adjunction on closed sublocales exactly for open localic maps", "all", (_listed(A.law_triple_closed),), batch=("triple-closed",)),
    Theorem("jt", "open, f* Heyting homomorphism, Frobenius and arrow identity agree", "localic", (_localic_only(S.law_jt),)),
    Theorem("open-image-meet", "f[o(a) & o(f*(b))] = f[o(a)] & o(b)", "localic", (_localic_only(S.law_open_image_meet),)),
    Theorem("adjoint-image-in-preimage", "f*[T] inside the localic preimage of T for open localic maps", "localic", (_localic_only(S.law_adjoint_image_in_preimage),)),
    Theorem("hierarchy", "open => sub-open => hereditarily skeletal => nearly open => skeletal", "localic", (_localic_only(S.law_hierarchy),)),
    Theorem("prop-5-6", "three characterizations of hereditarily skeletal agree", "localic", (_localic_only(_listed(A.law_hereditary_conditions)),)),
    Theorem("dissolution", "dissolution square; equality exactly for hereditarily skeletal maps", "localic", (_localic_only(S.law_dissolution),)),
    Theorem("commutativity", "closure and interior against localic preimages and images", "meet_preserving", (_report_laws(A.commutativity_report),)),
    Theorem(
        "closure-images",
        "images of closed sublocales and closures of images",
        "all",
        (_listed(A.law_closure_image_subsets), _listed(A.law_closure_image_sublocales), _listed(A.law_closed_image_closure), _listed(A.law_closure_image_equality)),
        batch=("closure-image-subsets", "closure-image-sublocales", "closed-image-closure", "closure-image-equality"),
    ),
    Theorem(
        "closed-map-images",
        "closed-map conditions, closed images, and interiors of images",
        "meet_preserving",
        (_listed(A.law_closed_image_equality), _listed(A.law_image_interior), _listed(A.law_closed_conditions)),
    ),
    Theorem("closed-6-3", "closure of an image of a closed sublocale", "all", (_listed(A.law_closed_image_closure),), batch=("closed-image-closure",)),
    Theorem("interior-preimage-complement", "complement of int f^-1[T] equals f^-1 of the complement of int T exactly for open localic maps", "all", (_listed(A.law_interior_preimage_complement),), batch=("interior-preimage-complement",)),
    Theorem("subfit-open", "subfit target: open iff f* is a complete lattice homomorphism", "localic", (_localic_only(S.law_subfit_open),)),
    Theorem("preimage-laws", "closed/open preimages, O, and the image/preimage adjunction", "meet_preserving", (S.law_preimage,)),
    Theorem("map-cache", "declared adjoint tables, meet routes, f* -| f", "monotone", (S.law_map_cache,)),
]

THEOREMS = {t.id: t for t in _REGISTRY}


def get_theorem(theorem_id):
    try:
        return THEOREMS[theorem_id]
    except KeyError:
        raise UnknownTheorem(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}") from None


# reports ---------------------------------------------------------------------


@dataclass
class VerificationReport:
    theorem_id: str
    verdict: str
    instances_checked: dict
    skipped: int = 0
    first_counterexample: dict | None = None
    wall_time: float = 0.0
    truncated: list = field(default_factory=list)
    witness_file: str | None = None

    @property
    def passed(self):
        return self.verdict == "pass"

    @property
    def total(self):
        return sum(self.instances_checked.values())

    def line(self):
        counts = " ".join(f"{k}={v}" for k, v in self.instances_checked.items())
        extra = f" truncated_pairs={len(self.truncated)}" if self.truncated else ""
        return f"{self.theorem_id}: {self.verdict.upper()} ({counts} skipped={self.skipped}{extra}) {self.wall_time:.2f}s"

    def to_json(self):
        return {
            "theorem_id": self.theorem_id,
            "verdict": self.verdict,
            "instances_checked": dict(self.instances_checked),
            "skipped": self.skipped,
            "first_counterexample": self.first_counterexample,
            "wall_time": self.wall_time,
            "truncated": list(self.truncated),
            "witness_file": self.witness_file,
        }


def _tier_of(f):
    c = classify_map(f)
    if c.localic:
        return "localic"
    if c.meet_preserving:
        return "meet_preserving"
    if c.monotone:
        return "monotone"
    return "other"


def _error_result(law, e):
    return LawResult(law, "fail", witness={"error": type(e).__name__, "message": str(e), "detail": getattr(e, "witness", None)})


def _run_laws(laws, obj, theorem_id):
    out = []
    for law in laws:
        try:
            out.extend(law(obj))
        except (LocaleLabError, InternalInconsistency, IndexError, KeyError) as e:
            out.append(_error_result(theorem_id, e))
    return out


def _map_results(th, f):
    """Per-map laws, preceded by a check of any declared adjoint tables."""
    out = []
    if f.cached_adjoint is not None or f.cached_shriek is not None:
        v = f.check_cache()
        out.append(LawResult("declared-tables", "pass" if v.ok else "fail", witness=v.witness, instances_checked=1, reason=v.reason or ""))
    return out + _run_laws(th.map_laws, f, th.id)


def _failure(kind, obj, results):
    bad = [r for r in results if r.failed]
    rec = {"kind": kind, "laws": [r.to_json() for r in bad], "witness": bad[0].witness}
    if kind == "frame":
        rec["frame"] = frame_to_json(obj, tables=True)
    else:
        rec["map"] = map_to_json(obj, tables=True)
    return rec


class _Tally:
    def __init__(self):
        self.counts = Counter()
        self.skipped = 0
        self.failure = None
        self.truncated = []

    def add(self, tier, results, kind, obj):
        if results and all(r.verdict == "skipped" for r in results):
            self.skipped += 1
            return
        self.counts[tier] += 1
        if self.failure is None and any(r.failed for r in results):
            self.failure = _failure(kind, obj, results)

    def merge(self, other):
        self.counts.update(other.counts)
        self.skipped += other.skipped
        self.truncated += other.truncated
        if self.failure is None:
            self.failure = other.failure


# work units ------------------------------------------------------------------


def _frame_unit(th, fr):
    t = _Tally()
    t.add("frame", _run_laws(th.frame_laws, fr, th.id), "frame", fr)
    return t


def _row_blocks(L, M, scope, cap, tally):
    if scope == "all":
        total = M.n**L.n
        stop = min(total, cap)
        if total > cap:
            tally.truncated.append(f"{L.name}->{M.name}")
        step = chunk_size(L.n)
        for start in range(0, stop, step):
            yield product_rows(L.n, M.n, start, min(stop, start + step))
        return
    stream = MapStream(L, M, scope, cap)
    rows = list(stream.values())
    if stream.truncated:
        tally.truncated.append(f"{L.name}->{M.name}")
    if rows:
        yield np.array(rows, dtype=np.int64).reshape(len(rows), L.n)


def _batch_pair(th, L, M, cap):
    tally = _Tally()
    pt = PairTables(L, M)
    k0 = 0
    for F in _row_blocks(L, M, th.scope, cap, tally):
        ev = BatchEval(pt, F)
        tier = tiers(ev)
        dom = np.zeros(ev.K, dtype=bool)
        bad = np.zeros(ev.K, dtype=bool)
        for key in th.batch:
            d, holds = BATCH_LAWS[key](ev)
            dom |= d
            bad |= d & ~holds
        for code, name in enumerate(TIERS):
            tally.counts[name] += int(np.count_nonzero(dom & (tier == code)))
        tally.skipped += int(np.count_nonzero(~dom))
        if tally.failure is None and bad.any():
            r = int(np.flatnonzero(bad)[0])
            f = LatticeMap(L, M, F[r], name=f"{L.name}->{M.name}#{k0 + r}")
            results = _map_results(th, f)
            if not any(x.failed for x in results):
                results.append(
                    _error_result(
                        th.id,
                        InternalInconsistency("vectorized check failed but the per-map check passed", witness={"values": list(map(int, F[r]))}),
                    )
                )
            tally.failure = _failure("map", f, results)
        k0 += ev.K
    return tally


def _map_pair(th, L, M, cap):
    tally = _Tally()
    stream = MapStream(L, M, th.scope, cap)
    for f in stream:
        tally.add(_tier_of(f), _map_results(th, f), "map", f)
    if stream.truncated:
        tally.truncated.append(f"{L.name}->{M.name}")
    return tally


def _pair_unit(th, L, M, cap):
    try:
        if th.batch:
            return _batch_pair(th, L, M, cap)
        return _map_pair(th, L, M, cap)
    except (LocaleLabError, InternalInconsistency, IndexError, KeyError) as e:
        # only reachable with corrupted frame tables; record it against the pair
        tally = _Tally()
        f = LatticeMap(L, M, [M.top] * L.n, name=f"{L.name}->{M.name}")
        tally.add("other", [_error_result(th.id, e)], "map", f)
        return tally


_WORKER = {}


def _worker_init(spec):
    _WORKER["frames"] = list(generate_catalog(spec))
    _WORKER["cap"] = spec.max_maps_per_pair


def _worker_run(args):
    theorem_id, kind, i, j = args
    th = THEOREMS[theorem_id]
    frames = _WORKER["frames"]
    if kind == "frame":
        return _frame_unit(th, frames[i])
    return _pair_unit(th, frames[i], frames[j], _WORKER["cap"])


def default_jobs():
    try:
        return max(1, int(os.environ.get("LOCALE_LAB_JOBS", "1")))
    except ValueError:
        return 1


def _units(th, n_frames):
    out = []
    if th.frame_laws:
        out += [(th.id, "frame", i, None) for i in range(n_frames)]
    if th.scope is not None:
        out += [(th.id, "pair", i, j) for i in range(n_frames) for j in range(n_frames)]
    return out


# entry points ----------------------------------------------------------------


def verify_theorem(theorem_id, spec=None, frames=None, maps=None, witness_dir=None, jobs=None):
    """Check one theorem over every admitted instance.

    With ``maps`` the given maps are checked directly (no class filter; laws skip
    maps outside their precondition) along with any frame laws on ``frames`` or,
    failing that, on the maps' own frames. Otherwise the catalog for ``spec`` is
    generated and every frame and frame pair is a work unit.
    """
    th = get_theorem(theorem_id)
    spec = spec or CatalogSpec()
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    t0 = time.perf_counter()
    total = _Tally()
    if maps is not None:
        if frames is None:
            frames = []
            for f in maps:
                for fr in (f.source, f.target):
                    if all(fr is not g for g in frames):
                        frames.append(fr)
        if th.frame_laws:
            for fr in frames:
                total.merge(_frame_unit(th, fr))
        if th.scope is not None:
            for f in maps:
                t = _Tally()
                t.add(_tier_of(f), _map_results(th, f), "map", f)
                total.merge(t)
    else:
        explicit = frames is not None
        frames = list(frames) if explicit else list(generate_catalog(spec))
        units = _units(th, len(frames))
        if jobs > 1 and not explicit and len(units) > 1:
            with ProcessPoolExecutor(max_workers=jobs, initializer=_worker_init, initargs=(spec,)) as ex:
                results = list(ex.map(_worker_run, units))
        else:
            results = []
            for _, kind, i, j in units:
                if kind == "frame":
                    results.append(_frame_unit(th, frames[i]))
                else:
                    results.append(_pair_unit(th, frames[i], frames[j], spec.max_maps_per_pair))
        # units are in canonical order, so the first failure found here is the minimum
        for r in results:
            total.merge(r)
    counts = {k: total.counts.get(k, 0) for k in (("frame",) if th.frame_laws else ()) + (TIERS if th.scope else ())}
    report = VerificationReport(
        theorem_id=th.id,
        verdict="fail" if total.failure else "pass",
        instances_checked=counts,
        skipped=total.skipped,
        first_counterexample=total.failure,
        wall_time=time.perf_counter() - t0,
        truncated=total.truncated,
    )
    if report.first_counterexample is not None and witness_dir is not None:
        report.witness_file = str(write_witness(report, witness_dir))
    return report


def verify_all(spec=None, jobs=None, witness_dir=None, ids=None):
    return [verify_theorem(t, spec, jobs=jobs, witness_dir=witness_dir) for t in (ids or THEOREMS)]


# witness files ---------------------------------------------------------------


def write_witness(report, directory):
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    cx = report.first_counterexample
    stem = cx["frame"]["name"] if cx["kind"] == "frame" else cx["map"]["name"]
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in stem)
    path = d / f"{report.theorem_id}__{safe}.json"
    payload = {"theorem_id": report.theorem_id, **cx}
    path.write_text(json.dumps(payload, indent=2))
    return path


@dataclass
class ReplayResult:
    theorem_id: str
    reproduced: bool
    laws: list

    def to_json(self):
        return {"theorem_id": self.theorem_id, "reproduced": self.reproduced, "laws": [r.to_json() for r in self.laws]}


def replay_witness(path):
    """Rebuild the recorded instance from the file alone and re-run its laws."""
    with open(path) as fh:
        obj = json.load(fh)
    th = get_theorem(obj["theorem_id"])
    if obj["kind"] == "frame":
        fr = frame_from_json(obj["frame"])
        results = _run_laws(th.frame_laws, fr, th.id)
    else:
        f = map_from_json(obj["map"])
        results = _map_results(th, f)
    return ReplayResult(th.id, any(r.failed for r in results), results)
