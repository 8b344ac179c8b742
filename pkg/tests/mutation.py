"""Seeded single-entry corruptions of fixture tables, and the suites that must notice."""

import random

from locale_lab import fixtures as fx
from locale_lab.maps import LatticeMap
from locale_lab.theorems import verify_theorem

FRAME_SUITES = ("frame-tables", "heyting", "sublocale-laws", "oracles")
# maps whose declared left adjoint is genuine, so only the corruption can be caught
DECLARED_MAPS = ("f_surj", "g_top", "id_C3", "j_closed")
MAP_SUITES = ("map-cache", "type-II", "jt", "commutativity")


def declared_map(name):
    """A fixture map carrying its own left adjoint as a declared table."""
    f = fx.maps()[name]
    return LatticeMap(f.source, f.target, f.values, name=f.name, cached_adjoint=f.adjoint_values())


def mutate(seed):
    rng = random.Random(seed)
    kind = rng.choice(["meet", "join", "arrow", "assignment"])
    if kind == "assignment":
        f = declared_map(rng.choice(DECLARED_MAPS))
        a = rng.randrange(f.source.n)
        vals = list(f.values)
        vals[a] = rng.choice([v for v in range(f.target.n) if v != vals[a]])
        g = LatticeMap(f.source, f.target, vals, name=f"{f.name}~{seed}", cached_adjoint=f.cached_adjoint)
        return "map", g, {"map": f.name, "element": f.source.labels[a]}
    fr = rng.choice(sorted(fx.frames().items()))[1]
    while fr.n < 2:
        fr = rng.choice(sorted(fx.frames().items()))[1]
    a, b = rng.randrange(fr.n), rng.randrange(fr.n)
    table = [list(r) for r in getattr(fr, f"{kind}_table")]
    table[a][b] = rng.choice([v for v in range(fr.n) if v != table[a][b]])
    bad = fr.with_tables(**{kind: tuple(tuple(r) for r in table)}, name=f"{fr.name}~{seed}")
    return "frame", bad, {"frame": fr.name, "table": kind, "entry": (fr.labels[a], fr.labels[b])}


def detect(kind, obj, witness_dir):
    """Run the relevant suites until one fails; return its report or None."""
    if kind == "frame":
        for tid in FRAME_SUITES:
            r = verify_theorem(tid, frames=[obj], maps=[], witness_dir=witness_dir)
            if not r.passed:
                return r
        return None
    for tid in MAP_SUITES:
        r = verify_theorem(tid, maps=[obj], witness_dir=witness_dir)
        if not r.passed:
            return r
    return None
