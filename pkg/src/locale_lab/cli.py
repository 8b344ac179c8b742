"""Command-line interface: ``locale-lab <command> ...``.

Exit codes: 0 pass (or nothing found), 1 verification failure or counterexample
found, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CatalogSpec, generate_catalog
from .errors import LocaleLabError
from .io import frame_from_json, frame_to_json, map_from_json
from .maps import classify_map, joyal_tierney, left_adjoint, open_closed_report, skeletal_hierarchy
from .sublocales import booleanization, enumerate_sublocales, is_subfit

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _dump(obj):
    print(json.dumps(obj, indent=2, default=str))


def _spec(args):
    kw = {}
    if getattr(args, "max_ji", None) is not None:
        kw["max_join_irreducibles"] = args.max_ji
    if getattr(args, "max_maps", None) is not None:
        kw["max_maps_per_pair"] = args.max_maps
    return CatalogSpec(**kw)


# commands --------------------------------------------------------------------


def cmd_validate(args):
    fr = frame_from_json(args.lattice)
    sub = is_subfit(fr)
    info = {
        "name": fr.name,
        "elements": fr.n,
        "frame": True,
        "boolean": fr.is_boolean(),
        "subfit": sub.ok,
        "booleanization": booleanization(fr).labels,
    }
    if args.json:
        _dump(info)
    else:
        print(f"{fr.name}: valid frame with {fr.n} elements")
        print(f"  boolean: {info['boolean']}  subfit: {info['subfit']}")
        print(f"  booleanization: {{{', '.join(info['booleanization'])}}}")
    return EXIT_OK


def cmd_sublocales(args):
    fr = frame_from_json(args.lattice)
    lat = enumerate_sublocales(fr)
    if args.json:
        _dump(lat.to_json())
        return EXIT_OK
    print(f"S({fr.name}): {len(lat)} sublocales")
    for m, s in zip(lat.masks, lat):
        print(f"  {fr.format_set(m):<30} {s.kind}")
    return EXIT_OK


def _analysis(f, full):
    c = classify_map(f)
    out = {"map": f.name, "source": f.source.name, "target": f.target.name, "flags": c.flags()}
    if c.localic:
        out["flags"].update(skeletal_hierarchy(f).flags())
    if f.cached_adjoint is not None or f.cached_shriek is not None:
        v = f.check_cache()
        out["declared_tables"] = {"ok": v.ok, "witness": v.witness}
    if not full:
        return out
    from . import adjunctions as A

    out["witnesses"] = c.witnesses
    if c.meet_preserving:
        g = left_adjoint(f)
        out["left_adjoint"] = g.assignments()
        ocr = open_closed_report(f)
        out["open_closed"] = {"open": ocr.is_open, "closed": ocr.is_closed, "closed_conditions": ocr.closed_conditions}
        out["adjunction_types"] = {}
        for t in A.TYPE_IDS:
            try:
                out["adjunction_types"][t] = A.adjunction_type(f, t).to_json()
            except LocaleLabError as e:
                out["adjunction_types"][t] = {"skipped": str(e)}
        out["commutativity"] = A.commutativity_report(f).to_json()
    if c.localic:
        jt = joyal_tierney(f)
        out["joyal_tierney"] = {
            "open": jt.open,
            "heyting_hom": jt.heyting_hom,
            "frobenius": jt.frobenius,
            "arrow_identity": jt.arrow_identity,
            "shriek": None if jt.shriek is None else {f.source.labels[a]: f.target.labels[b] for a, b in enumerate(jt.shriek)},
            "witnesses": jt.witnesses,
        }
        h = skeletal_hierarchy(f)
        out["hierarchy"] = {"flags": h.flags(), "hereditary_conditions": h.hereditary_conditions, "witnesses": h.witnesses}
        d = A.dissolution_report(f)
        out["dissolution"] = {
            "naturality": d.naturality,
            "inequality": d.inequality,
            "equality": d.equality,
            "hereditarily_skeletal": d.hereditarily_skeletal,
            "witnesses": d.witnesses,
        }
    return out


def cmd_analyze_map(args):
    f = map_from_json(args.map)
    out = _analysis(f, args.report == "full")
    if args.json:
        _dump(out)
    else:
        print(f"{f.name}: {f.source.name} -> {f.target.name}")
        for k, v in out["flags"].items():
            print(f"  {k:<24}{'yes' if v else 'no'}")
        for k, v in out.items():
            if k in ("map", "source", "target", "flags"):
                continue
            print(f"{k}:")
            print("  " + json.dumps(v, default=str))
    declared = out.get("declared_tables")
    return EXIT_FAIL if declared and not declared["ok"] else EXIT_OK


def cmd_verify(args):
    from .theorems import THEOREMS, verify_theorem

    ids = list(THEOREMS) if args.theorem == "all" else [args.theorem]
    spec = _spec(args)
    failed = False
    reports = []
    for tid in ids:
        r = verify_theorem(tid, spec, jobs=args.jobs, witness_dir=args.witness_dir)
        reports.append(r)
        failed |= not r.passed
        if not args.json:
            print(r.line(), flush=True)
            if r.witness_file:
                print(f"  witness written to {r.witness_file}")
            elif r.first_counterexample:
                print("  " + json.dumps(r.first_counterexample["witness"], default=str))
    if args.json:
        _dump([r.to_json() for r in reports])
    return EXIT_FAIL if failed else EXIT_OK


def cmd_search(args):
    from .search import search_counterexample

    r = search_counterexample(args.predicate, _spec(args))
    if args.json:
        _dump(r.to_json())
    else:
        print(f"{r.predicate}: {r.status} after {r.instances_scanned} {r.domain} maps")
        if r.found:
            print(json.dumps(r.witness, indent=2))
    return EXIT_FAIL if r.found else EXIT_OK


def cmd_catalog(args):
    spec = _spec(args)
    frames = generate_catalog(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    index = []
    for k, fr in enumerate(frames):
        name = f"{k:03d}_{''.join(ch if ch.isalnum() else '_' for ch in fr.name)}.json"
        (out / name).write_text(json.dumps(frame_to_json(fr), indent=2))
        index.append({"file": name, "name": fr.name, "elements": fr.n})
    (out / "index.json").write_text(json.dumps({"max_join_irreducibles": spec.max_join_irreducibles, "frames": index}, indent=2))
    print(f"wrote {len(frames)} frames to {out}")
    return EXIT_OK


def cmd_replay(args):
    from .theorems import replay_witness

    r = replay_witness(args.witness)
    if args.json:
        _dump(r.to_json())
    else:
        status = "reproduced" if r.reproduced else "not reproduced"
        print(f"{r.theorem_id}: {status}")
        for law in r.laws:
            print(f"  {law}")
    return EXIT_FAIL if r.reproduced else EXIT_OK


# parser ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="locale-lab", description="Finite frames, sublocales and localic maps.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a lattice or topology file is a frame")
    s.add_argument("lattice")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("sublocales", help="list every sublocale of a frame")
    s.add_argument("lattice")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_sublocales)

    s = sub.add_parser("analyze-map", help="classify a map between frames")
    s.add_argument("map")
    s.add_argument("--report", choices=("full", "flags"), default="flags")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_analyze_map)

    s = sub.add_parser("verify", help="check a theorem over the catalog")
    s.add_argument("--theorem", required=True, help="theorem id or 'all'")
    s.add_argument("--max-ji", type=int, dest="max_ji")
    s.add_argument("--max-maps", type=int, dest="max_maps")
    s.add_argument("--jobs", type=int)
    s.add_argument("--witness-dir", dest="witness_dir")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("search", help="look for a map satisfying a flag predicate")
    s.add_argument("--predicate", required=True)
    s.add_argument("--max-ji", type=int, dest="max_ji")
    s.add_argument("--max-maps", type=int, dest="max_maps")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("catalog", help="write the catalog frames as JSON files")
    s.add_argument("--max-ji", type=int, dest="max_ji", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(fn=cmd_catalog)

    s = sub.add_parser("replay", help="re-run the check recorded in a witness file")
    s.add_argument("witness")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_replay)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return args.fn(args)
    except LocaleLabError as e:
        print(f"error: {e}", file=sys.stderr)
        if getattr(e, "witness", None):
            print(f"  witness: {json.dumps(e.witness, default=str)}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
