"""Catalogs of small finite frames and streams of maps between them.

Every finite frame is the downset lattice of the poset of its join-irreducibles,
so enumerating posets up to isomorphism enumerates finite frames up to
isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CapExceeded
from .lattice import Poset, bits, downset_frame
from .maps import LatticeMap, _l1_witness, _l2_witness

MAX_POSET_SIZE = 6


@dataclass(frozen=True)
class CatalogSpec:
    max_join_irreducibles: int = 3
    include_degenerate: bool = True
    max_maps_per_pair: int = 200_000
    max_frame_size: int = 64

    def __post_init__(self):
        if self.max_join_irreducibles < 0:
            raise CapExceeded("max_join_irreducibles must be non-negative")
        if self.max_join_irreducibles > MAX_POSET_SIZE:
            raise CapExceeded(
                f"posets are generated up to {MAX_POSET_SIZE} elements, got {self.max_join_irreducibles}"
            )
        if self.max_maps_per_pair <= 0 or self.max_frame_size <= 0:
            raise CapExceeded("caps must be positive")


# posets up to isomorphism ------------------------------------------------------


def canonical_code(n, leq):
    """Lexicographically least flattened order matrix over all relabelings."""
    best = None
    for p in permutations(range(n)):
        code = tuple(leq[p[i]][p[j]] for i in range(n) for j in range(n))
        if best is None or code < best:
            best = code
    return best


def _downsets(n, leq):
    for mask in range(1 << n):
        if all(not leq[y][x] or mask >> y & 1 for x in bits(mask) for y in range(n)):
            yield mask


def _extend(n, leq, below):
    """Add a new maximal element sitting above the downset ``below``."""
    rows = [list(r) + [bool(below >> i & 1)] for i, r in enumerate(leq)]
    rows.append([False] * n + [True])
    return tuple(tuple(r) for r in rows)


def poset_codes(n):
    """Canonical codes of all posets on n points, sorted.

    Each poset on n points arises by adding a maximal point to one on n-1
    points, so extending every class by every downset and deduplicating by
    canonical code reaches every class.
    """
    level = {canonical_code(0, ())}
    for k in range(n):
        nxt = set()
        for code in level:
            leq = _decode(k, code)
            for d in _downsets(k, leq):
                new = _extend(k, leq, d)
                nxt.add(canonical_code(k + 1, new))
        level = nxt
    return sorted(level)


def _decode(n, code):
    return tuple(tuple(code[i * n + j] for j in range(n)) for i in range(n))


def _point_labels(n):
    return [chr(ord("a") + i) for i in range(n)]


def posets(n):
    """One representative Poset per isomorphism class on n points."""
    return [Poset(_point_labels(n), _decode(n, c), name=f"P{n}.{k}") for k, c in enumerate(poset_codes(n))]


# frames ------------------------------------------------------------------------


def _frame_name(p):
    if p.n == 0 or p.is_chain():
        return f"C{p.n + 1}"
    if p.is_antichain():
        return f"B{p.n}"
    return f"D({p.name})"


def catalog_frame(p):
    """Downset frame of ``p`` with the empty downset shown as 0 and the whole poset as 1."""
    fr = downset_frame(p, name=_frame_name(p), bound_labels=("0", "1"))
    fr.join_irreducibles = p
    return fr


class Catalog(list):
    """A list of frames that also remembers the posets left out by the size cap."""

    def __init__(self, frames, spec, excluded=()):
        super().__init__(frames)
        self.spec = spec
        self.excluded = list(excluded)


def generate_catalog(spec=None):
    spec = spec or CatalogSpec()
    frames, excluded = [], []
    start = 0 if spec.include_degenerate else 1
    for n in range(start, spec.max_join_irreducibles + 1):
        for p in posets(n):
            if n == 0:
                p.name = "P0"
            fr = catalog_frame(p)
            if fr.n > spec.max_frame_size:
                excluded.append(p.name)
                continue
            frames.append(fr)
    return Catalog(frames, spec, excluded)


def frame_pairs(frames):
    """All ordered pairs, source-major, in catalog order."""
    return [(L, M) for L in frames for M in frames]


# maps --------------------------------------------------------------------------


MAP_CLASSES = ("all", "monotone", "meet_preserving", "localic")


def _constraints(L, M, cls):
    """For each position i, the checks that become decidable once v[0..i] are fixed."""
    n = L.n
    checks = [[] for _ in range(n)]
    if cls == "all":
        return checks
    for x in range(n):
        for y in range(n):
            if x != y and L.leq_table[x][y]:
                checks[max(x, y)].append(("le", x, y))
    if cls in ("meet_preserving", "localic"):
        checks[L.top].append(("top",))
        for x in range(n):
            for y in range(x + 1, n):
                m = L.meet_table[x][y]
                checks[max(x, y, m)].append(("meet", x, y, m))
    return checks


def _value_stream(L, M, cls):
    n, m = L.n, M.n
    checks = _constraints(L, M, cls)
    mleq, mmeet, mtop = M.leq_table, M.meet_table, M.top
    v = [0] * n

    def ok(i):
        for c in checks[i]:
            if c[0] == "le":
                if not mleq[v[c[1]]][v[c[2]]]:
                    return False
            elif c[0] == "top":
                if v[L.top] != mtop:
                    return False
            elif v[c[3]] != mmeet[v[c[1]]][v[c[2]]]:
                return False
        if cls == "localic" and v[i] == mtop and i != L.top:
            return False
        return True

    def rec(i):
        if i == n:
            yield tuple(v)
            return
        for t in range(m):
            v[i] = t
            if ok(i):
                yield from rec(i + 1)

    if n == 0:
        return
    yield from rec(0)


class MapStream:
    """Deterministic stream of maps in a class; ``truncated`` is set once the cap cut it."""

    def __init__(self, source, target, cls="all", cap=200_000):
        if cls not in MAP_CLASSES:
            raise ValueError(f"unknown map class {cls!r}; expected one of {MAP_CLASSES}")
        if cap <= 0:
            raise CapExceeded("cap must be positive")
        self.source, self.target, self.cls, self.cap = source, target, cls, cap
        self.truncated = False
        self.count = 0

    def values(self):
        """Value tuples only, without building LatticeMap objects."""
        L, M = self.source, self.target
        self.count = 0
        self.truncated = False
        for vals in _value_stream(L, M, self.cls):
            if self.cls == "localic":
                f = LatticeMap(L, M, vals)
                if _l2_witness(f) is not None or _l1_witness(f) is not None:
                    continue
            if self.count == self.cap:
                self.truncated = True
                return
            self.count += 1
            yield vals

    def __iter__(self):
        L, M = self.source, self.target
        for k, vals in enumerate(self.values()):
            yield LatticeMap(L, M, vals, name=f"{L.name}->{M.name}#{k}")


def enumerate_maps(source, target, cls="all", cap=200_000):
    return MapStream(source, target, cls, cap)
