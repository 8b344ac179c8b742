"""JSON encodings of frames, spaces and maps.

Lattice file: {"name", "elements", "order": {"mode": "covers"|"leq", "pairs"}}.
Topology file: {"name", "points", "opens"}.
Map file: {"source", "target", "assignments", optional "left_adjoint", "shriek"},
where source/target are inline objects or paths relative to the map file.

A frame object that also carries "tables" (meet, join, arrow as id matrices) is
rebuilt without validation, so a witness with corrupted tables replays as is.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import LocaleLabError
from .lattice import FiniteSpace, frame_check, frame_from_topology, lattice_from_order
from .maps import LatticeMap


def frame_to_json(frame, tables=False):
    obj = {
        "name": frame.name,
        "elements": list(frame.labels),
        "order": {
            "mode": "leq",
            "pairs": [
                [frame.labels[a], frame.labels[b]]
                for a in range(frame.n)
                for b in range(frame.n)
                if a != b and frame.leq_table[a][b]
            ],
        },
    }
    if tables:
        obj["tables"] = {
            "meet": [list(r) for r in frame.meet_table],
            "join": [list(r) for r in frame.join_table],
            "arrow": [list(r) for r in frame.arrow_table],
        }
    return obj


def _load_obj(obj, base):
    if isinstance(obj, (str, Path)):
        path = Path(obj)
        if not path.is_absolute() and base is not None:
            path = Path(base) / path
        try:
            return json.loads(path.read_text()), path.parent
        except OSError as e:
            raise LocaleLabError(f"cannot read {path}: {e}") from None
        except json.JSONDecodeError as e:
            raise LocaleLabError(f"{path} is not valid JSON: {e}") from None
    if not isinstance(obj, dict):
        raise LocaleLabError("expected a JSON object or a file path")
    return obj, base


def frame_from_json(obj, base=None):
    """Build (and validate) a frame from a lattice or topology object or file."""
    obj, base = _load_obj(obj, base)
    name = obj.get("name")
    if "points" in obj:
        if "opens" not in obj:
            raise LocaleLabError("topology object needs 'opens'")
        return frame_from_topology(FiniteSpace(obj["points"], obj["opens"]), name=name or "Omega(X)")
    if "elements" not in obj:
        raise LocaleLabError("lattice object needs 'elements' (or 'points' and 'opens' for a topology)")
    order = obj.get("order", {})
    if not isinstance(order, dict):
        raise LocaleLabError("'order' must be an object with 'mode' and 'pairs'")
    mode = order.get("mode", "covers")
    if mode not in ("covers", "leq"):
        raise LocaleLabError(f"unknown order mode {mode!r}")
    pairs = [tuple(p) for p in order.get("pairs", [])]
    if any(len(p) != 2 for p in pairs):
        raise LocaleLabError("every order pair must have two entries")
    lat = lattice_from_order(obj["elements"], pairs, mode=mode, name=name)
    tables = obj.get("tables")
    if tables is None:
        return frame_check(lat, name=name or "L")
    # replay path: keep the recorded tables exactly, corrupt or not
    base_frame = frame_check_or_raw(lat, name)
    return base_frame.with_tables(
        meet=tuple(tuple(r) for r in tables["meet"]),
        join=tuple(tuple(r) for r in tables["join"]),
        arrow=tuple(tuple(r) for r in tables["arrow"]),
        name=name,
    )


def frame_check_or_raw(lat, name):
    from .lattice import Frame

    try:
        return frame_check(lat, name=name or "L")
    except LocaleLabError:
        n = lat.n
        return Frame(lat, [[lat.top] * n for _ in range(n)], name=name or "L")


def map_to_json(f, tables=False):
    obj = {
        "name": f.name,
        "source": frame_to_json(f.source, tables),
        "target": frame_to_json(f.target, tables),
        "assignments": f.assignments(),
    }
    if f.cached_adjoint is not None:
        obj["left_adjoint"] = {f.target.labels[b]: f.source.labels[a] for b, a in enumerate(f.cached_adjoint)}
    if f.cached_shriek is not None:
        obj["shriek"] = {f.source.labels[a]: f.target.labels[b] for a, b in enumerate(f.cached_shriek)}
    return obj


def map_from_json(obj, base=None):
    obj, base = _load_obj(obj, base)
    for key in ("source", "target", "assignments"):
        if key not in obj:
            raise LocaleLabError(f"map object needs {key!r}")
    src = frame_from_json(obj["source"], base)
    tgt = frame_from_json(obj["target"], base)
    if not isinstance(obj["assignments"], dict):
        raise LocaleLabError("'assignments' must map source labels to target labels")
    return LatticeMap.from_assignments(
        src,
        tgt,
        obj["assignments"],
        name=obj.get("name"),
        left_adjoint=obj.get("left_adjoint"),
        shriek=obj.get("shriek"),
    )


def load_json(path):
    obj, _ = _load_obj(str(path), None)
    return obj
