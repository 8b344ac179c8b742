"""Bounded counterexample search over catalog maps.

A predicate is a boolean expression over map flags with ``!``, ``&``, ``|`` and
parentheses, e.g. ``"localic & !open"``. Flags from the openness hierarchy are
only defined for localic maps, so a predicate mentioning any of them is
evaluated over localic maps only; other predicates run over monotone maps.
The search reports the first match or that the catalog bounds were exhausted.
It never claims more than that.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass

from .catalog import CatalogSpec, MapStream, frame_pairs, generate_catalog
from .errors import BadPredicate
from .io import map_to_json
from .maps import HIERARCHY, classify_map, skeletal_hierarchy

BASIC_FLAGS = ("localic", "closed", "meet_preserving", "monotone")
FLAGS = HIERARCHY + BASIC_FLAGS

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokens(text):
    out = []
    for m in _TOKEN.finditer(text):
        if m.group(1):
            out.append(("flag", m.group(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "!&|()":
                raise BadPredicate(f"unexpected character {ch!r} in predicate")
            out.append((ch, ch))
    return out


class _Parser:
    # expr := term ('|' term)* ; term := factor ('&' factor)* ; factor := '!' factor | '(' expr ')' | flag

    def __init__(self, text):
        self.toks = _tokens(text)
        self.pos = 0
        if not self.toks:
            raise BadPredicate("empty predicate")

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            got = self.toks[self.pos][1] if self.pos < len(self.toks) else "end of input"
            raise BadPredicate(f"expected {kind!r}, got {got!r}")
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.pos != len(self.toks):
            raise BadPredicate(f"unexpected {self.toks[self.pos][1]!r} after complete expression")
        return node

    def expr(self):
        node = self.term()
        while self.peek() == "|":
            self.take("|")
            node = ("or", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() == "&":
            self.take("&")
            node = ("and", node, self.factor())
        return node

    def factor(self):
        kind = self.peek()
        if kind == "!":
            self.take("!")
            return ("not", self.factor())
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        name = self.take("flag")[1]
        if name not in FLAGS:
            raise BadPredicate(f"unknown flag {name!r}; known flags: {', '.join(FLAGS)}")
        return ("flag", name)


def parse_predicate(text):
    return _Parser(text).parse()


def flags_used(node):
    if node[0] == "flag":
        return {node[1]}
    return set().union(*(flags_used(c) for c in node[1:]))


def evaluate(node, flags):
    op = node[0]
    if op == "flag":
        return flags[node[1]]
    if op == "not":
        return not evaluate(node[1], flags)
    if op == "and":
        return evaluate(node[1], flags) and evaluate(node[2], flags)
    return evaluate(node[1], flags) or evaluate(node[2], flags)


def map_flags(f, with_hierarchy):
    c = classify_map(f)
    out = {k: getattr(c, k) for k in BASIC_FLAGS}
    if with_hierarchy:
        out.update(skeletal_hierarchy(f).flags())
    return out


@dataclass
class SearchResult:
    predicate: str
    found: bool
    witness: dict | None
    instances_scanned: int
    domain: str
    bounds: str
    wall_time: float

    @property
    def status(self):
        return "witness found" if self.found else f"exhausted at spec bounds ({self.bounds})"

    def to_json(self):
        return {
            "predicate": self.predicate,
            "status": self.status,
            "found": self.found,
            "witness": self.witness,
            "instances_scanned": self.instances_scanned,
            "domain": self.domain,
            "bounds": self.bounds,
            "wall_time": self.wall_time,
        }


def search_counterexample(predicate, spec=None, frames=None):
    """Scan catalog maps in canonical order for the first one satisfying ``predicate``."""
    node = parse_predicate(predicate)
    spec = spec or CatalogSpec()
    hier = bool(flags_used(node) & set(HIERARCHY))
    domain = "localic" if hier else "monotone"
    frames = list(frames) if frames is not None else list(generate_catalog(spec))
    bounds = f"max_join_irreducibles={spec.max_join_irreducibles}, max_maps_per_pair={spec.max_maps_per_pair}"
    t0 = time.perf_counter()
    n = 0
    for L, M in frame_pairs(frames):
        for f in MapStream(L, M, domain, spec.max_maps_per_pair):
            n += 1
            flags = map_flags(f, hier)
            if evaluate(node, flags):
                w = {"map": map_to_json(f), "flags": flags}
                return SearchResult(predicate, True, w, n, domain, bounds, time.perf_counter() - t0)
    return SearchResult(predicate, False, None, n, domain, bounds, time.perf_counter() - t0)
