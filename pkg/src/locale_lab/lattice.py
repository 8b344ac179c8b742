"""Finite posets, complete lattices and frames stored as dense tables.

Elements are dense integer ids in input order; labels are only for display.
Subsets of a frame are Python ints used as bit masks (bit ``i`` = element ``i``).
"""

from __future__ import annotations

from functools import reduce

from .errors import (
    CycleDetected,
    DuplicateLabel,
    FrameViolation,
    MissingJoin,
    MissingMeet,
    NotAPoset,
    NotATopology,
    UnknownElement,
)

__all__ = [
    "bits",
    "popcount",
    "Poset",
    "CompleteLattice",
    "Frame",
    "FiniteSpace",
    "lattice_from_order",
    "frame_check",
    "heyting_arrow",
    "frame_from_topology",
    "downset_frame",
]


def bits(mask):
    """Ids of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask):
    return bin(mask).count("1")


def _check_labels(elements):
    labels = tuple(str(e) for e in elements)
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"duplicate element label {lab!r}", witness=lab)
        seen.add(lab)
    return labels


def _transitive_closure(n, rel_up):
    reach = list(rel_up)
    for i in range(n):
        reach[i] |= 1 << i
    for k in range(n):
        kbit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & kbit:
                reach[i] |= rk
    return reach


class Poset:
    """A finite partial order; ``leq[a][b]`` is True iff a <= b."""

    def __init__(self, elements, leq, name=None):
        self.labels = _check_labels(elements)
        n = self.n = len(self.labels)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise NotAPoset("order table must be square over the elements")
        self.leq_table = tuple(tuple(bool(x) for x in row) for row in leq)
        self.name = name
        up = [0] * n
        down = [0] * n
        for a in range(n):
            for b in range(n):
                if self.leq_table[a][b]:
                    up[a] |= 1 << b
                    down[b] |= 1 << a
        self.up = tuple(up)
        self.down = tuple(down)
        self._validate()

    def _validate(self):
        n = self.n
        for a in range(n):
            if not self.leq_table[a][a]:
                raise NotAPoset(f"relation not reflexive at {self.labels[a]!r}", witness=(a,))
        for a in range(n):
            for b in range(a + 1, n):
                if self.leq_table[a][b] and self.leq_table[b][a]:
                    raise CycleDetected(
                        f"{self.labels[a]!r} and {self.labels[b]!r} lie on a cycle",
                        witness=(a, b),
                    )
        for a in range(n):
            for b in bits(self.up[a]):
                if self.up[b] & ~self.up[a]:
                    c = bits(self.up[b] & ~self.up[a])[0]
                    raise NotAPoset("relation not transitive", witness=(a, b, c))

    @classmethod
    def from_pairs(cls, elements, pairs, mode="covers", name=None):
        """Build from ``(lower, upper)`` label pairs, closing reflexively and transitively.

        ``mode`` is ``"covers"`` or ``"leq"``; both are normalized by closure and
        then validated (a cycle raises CycleDetected).
        """
        if mode not in ("covers", "leq"):
            raise ValueError(f"unknown order mode {mode!r}")
        labels = _check_labels(elements)
        index = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        rel = [0] * n
        for pair in pairs:
            lo, hi = (str(x) for x in pair)
            for lab in (lo, hi):
                if lab not in index:
                    raise UnknownElement(f"order mentions unknown element {lab!r}", witness=lab)
            rel[index[lo]] |= 1 << index[hi]
        reach = _transitive_closure(n, rel)
        for a in range(n):
            both = reach[a] & ~(1 << a)
            for b in bits(both):
                if reach[b] >> a & 1:
                    raise CycleDetected(
                        f"{labels[a]!r} and {labels[b]!r} lie on a cycle", witness=(a, b)
                    )
        leq = [[bool(reach[a] >> b & 1) for b in range(n)] for a in range(n)]
        return cls(labels, leq, name=name)

    def leq(self, a, b):
        return self.leq_table[a][b]

    def covers(self):
        """List of covering pairs ``(a, b)`` with a < b and nothing strictly between."""
        out = []
        for a in range(self.n):
            above = self.up[a] & ~(1 << a)
            for b in bits(above):
                between = above & self.down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return out

    def is_chain(self):
        return all(self.leq_table[a][b] or self.leq_table[b][a] for a in range(self.n) for b in range(self.n))

    def is_antichain(self):
        return all(self.up[a] == 1 << a for a in range(self.n))

    def index(self, label):
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownElement(f"unknown element {label!r}", witness=label) from None

    def __repr__(self):
        return f"Poset({self.name or ''}, n={self.n})"


def _bound(candidates_mask, rel):
    """The unique element g of ``candidates_mask`` with ``candidates_mask`` inside rel[g]."""
    for g in bits(candidates_mask):
        if candidates_mask & ~rel[g] == 0:
            return g
    return None


class CompleteLattice:
    """A finite lattice given by its order and binary meet/join tables."""

    def __init__(self, poset, meet, join, bottom, top):
        self.poset = poset
        self.meet_table = tuple(tuple(row) for row in meet)
        self.join_table = tuple(tuple(row) for row in join)
        self.bottom = bottom
        self.top = top

    @classmethod
    def from_poset(cls, poset):
        n = poset.n
        if n == 0:
            raise MissingJoin("the empty order has no least element (empty join)")
        join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                ub = poset.up[a] & poset.up[b]
                # least upper bound: an upper bound below every other upper bound
                g = _bound(ub, poset.up)
                if g is None:
                    raise MissingJoin(
                        f"{poset.labels[a]!r} and {poset.labels[b]!r} have no least upper bound",
                        witness=(a, b),
                    )
                join[a][b] = join[b][a] = g
        meet = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                lb = poset.down[a] & poset.down[b]
                g = _bound(lb, poset.down)
                if g is None:
                    raise MissingMeet(
                        f"{poset.labels[a]!r} and {poset.labels[b]!r} have no greatest lower bound",
                        witness=(a, b),
                    )
                meet[a][b] = meet[b][a] = g
        full = (1 << n) - 1
        top = _bound(full, poset.down)
        bottom = _bound(full, poset.up)
        return cls(poset, meet, join, bottom, top)

    @property
    def n(self):
        return self.poset.n


def lattice_from_order(elements, pairs, mode="covers", name=None):
    """Normalize an order given by label pairs and compute its meet/join tables.

    Raises DuplicateLabel, UnknownElement, CycleDetected, MissingJoin or MissingMeet.
    """
    poset = Poset.from_pairs(elements, pairs, mode=mode, name=name)
    return CompleteLattice.from_poset(poset)


class Frame:
    """A finite frame: a distributive lattice with its Heyting arrow table.

    Instances are treated as immutable. ``_cache`` holds write-once derived data
    (sublocale lattices and the like) keyed by name.
    """

    def __init__(self, lattice, arrow, name="L"):
        self.lattice = lattice
        self.poset = lattice.poset
        self.name = name
        self.n = lattice.n
        self.labels = self.poset.labels
        self.leq_table = self.poset.leq_table
        self.up = self.poset.up
        self.down = self.poset.down
        self.meet_table = lattice.meet_table
        self.join_table = lattice.join_table
        self.arrow_table = tuple(tuple(row) for row in arrow)
        self.bottom = lattice.bottom
        self.top = lattice.top
        self.full = (1 << self.n) - 1
        self._cache = {}
        n = self.n
        self.open_masks = tuple(
            reduce(lambda m, x: m | 1 << self.arrow_table[a][x], range(n), 0) for a in range(n)
        )
        self.closed_masks = self.up

    # element access -------------------------------------------------------

    def leq(self, a, b):
        return self.leq_table[a][b]

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def arrow(self, a, b):
        return self.arrow_table[a][b]

    def neg(self, a):
        """Pseudocomplement a* = a -> 0."""
        return self.arrow_table[a][self.bottom]

    def meet_of(self, mask):
        """Meet of the elements in ``mask``; the empty meet is the top."""
        acc = self.top
        mt = self.meet_table
        while mask:
            low = mask & -mask
            acc = mt[acc][low.bit_length() - 1]
            mask ^= low
        return acc

    def join_of(self, mask):
        acc = self.bottom
        jt = self.join_table
        while mask:
            low = mask & -mask
            acc = jt[acc][low.bit_length() - 1]
            mask ^= low
        return acc

    def index(self, x):
        """Resolve an element given as an int id or a label."""
        if isinstance(x, bool):
            raise UnknownElement(f"not an element: {x!r}", witness=x)
        if isinstance(x, int):
            if 0 <= x < self.n:
                return x
            raise UnknownElement(f"element id {x} out of range for {self.name}", witness=x)
        try:
            return self.labels.index(str(x))
        except ValueError:
            raise UnknownElement(f"unknown element {x!r} in {self.name}", witness=x) from None

    def label(self, i):
        return self.labels[i]

    def mask(self, items):
        m = 0
        for x in items:
            m |= 1 << self.index(x)
        return m

    def members(self, mask):
        return bits(mask)

    def linear_order(self):
        """Element ids in a fixed linear extension of the order."""
        return sorted(range(self.n), key=lambda i: (popcount(self.down[i]), i))

    def format_set(self, mask):
        rank = {e: k for k, e in enumerate(self.linear_order())}
        return "{" + ",".join(self.labels[i] for i in sorted(bits(mask), key=rank.get)) + "}"

    def open_of(self, mask):
        """The a with o(a) == mask, or None."""
        idx = self._cache.get("open_index")
        if idx is None:
            idx = self._cache.setdefault("open_index", {m: a for a, m in enumerate(self.open_masks)})
        return idx.get(mask)

    def closed_of(self, mask):
        idx = self._cache.get("closed_index")
        if idx is None:
            idx = self._cache.setdefault("closed_index", {m: a for a, m in enumerate(self.closed_masks)})
        return idx.get(mask)

    def is_boolean(self):
        return all(self.neg(self.neg(a)) == a for a in range(self.n))

    def with_tables(self, meet=None, join=None, arrow=None, name=None):
        """An unvalidated copy with some tables replaced (used for mutation testing)."""
        lat = CompleteLattice(
            self.poset,
            meet if meet is not None else self.meet_table,
            join if join is not None else self.join_table,
            self.bottom,
            self.top,
        )
        return Frame(lat, arrow if arrow is not None else self.arrow_table, name=name or self.name)

    def __repr__(self):
        return f"Frame({self.name}, n={self.n})"


def frame_check(lattice, name="L"):
    """Return the lattice as a Frame, or raise FrameViolation.

    On finite lattices binary distributivity is equivalent to the frame law.
    """
    n = lattice.n
    m = lattice.meet_table
    j = lattice.join_table
    for a in range(n):
        for b in range(n):
            ab = j[a][b]
            for c in range(n):
                if m[ab][c] != j[m[a][c]][m[b][c]]:
                    labels = lattice.poset.labels
                    raise FrameViolation(
                        "not distributive: (a v b) ^ c != (a ^ c) v (b ^ c) for "
                        f"a={labels[a]!r}, b={labels[b]!r}, c={labels[c]!r}",
                        witness=(a, b, c),
                    )
    leq = lattice.poset.leq_table
    arrow = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = lattice.bottom
            for c in range(n):
                if leq[m[c][a]][b]:
                    acc = j[acc][c]
            arrow[a][b] = acc
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if leq[m[a][b]][c] != leq[a][arrow[b][c]]:
                    raise FrameViolation("Heyting adjunction fails", witness=(a, b, c))
    return Frame(lattice, arrow, name=name)


def heyting_arrow(frame, a, b):
    """Largest c with c ^ a <= b; ``heyting_arrow(L, a, L.bottom)`` is a*."""
    return frame.arrow(frame.index(a), frame.index(b))


class FiniteSpace:
    """A finite topological space given by its list of open sets."""

    def __init__(self, points, opens):
        self.points = _check_labels(points)
        index = {p: i for i, p in enumerate(self.points)}
        masks = []
        for u in opens:
            m = 0
            for p in u:
                p = str(p)
                if p not in index:
                    raise NotATopology(f"open set mentions unknown point {p!r}", witness=p)
                m |= 1 << index[p]
            masks.append(m)
        uniq = sorted(set(masks), key=lambda m: (popcount(m), bits(m)))
        full = (1 << len(self.points)) - 1
        if 0 not in uniq:
            raise NotATopology("the empty set must be open")
        if full not in uniq:
            raise NotATopology("the whole space must be open")
        present = set(uniq)
        for u in uniq:
            for v in uniq:
                if u | v not in present:
                    raise NotATopology("opens not closed under union", witness=(u, v))
                if u & v not in present:
                    raise NotATopology("opens not closed under intersection", witness=(u, v))
        self.open_masks = tuple(uniq)

    def open_label(self, mask):
        return "{" + ",".join(self.points[i] for i in bits(mask)) + "}"


def _frame_of_sets(masks, labels, name):
    """Frame of a family of sets closed under union and intersection, ordered by inclusion."""
    n = len(masks)
    leq = [[masks[a] & ~masks[b] == 0 for b in range(n)] for a in range(n)]
    poset = Poset(labels, leq, name=name)
    lattice = CompleteLattice.from_poset(poset)
    return frame_check(lattice, name=name)


def frame_from_topology(space, name="Omega(X)"):
    """The frame of open sets of a finite space; meet is intersection, join is union."""
    masks = list(space.open_masks)
    return _frame_of_sets(masks, [space.open_label(m) for m in masks], name)


def downset_frame(poset, name=None, bound_labels=None):
    """The frame of down-closed subsets of a finite poset, ordered by inclusion.

    ``bound_labels`` optionally renames the empty and the full downset, e.g. ("0", "1").
    """
    n = poset.n
    downsets = []
    for mask in range(1 << n):
        if all(poset.down[x] & ~mask == 0 for x in bits(mask)):
            downsets.append(mask)
    downsets.sort(key=lambda m: (popcount(m), bits(m)))
    labels = ["{" + ",".join(poset.labels[i] for i in bits(m)) + "}" for m in downsets]
    if bound_labels:
        labels[0] = bound_labels[0]
        labels[-1] = bound_labels[1] if len(downsets) > 1 else bound_labels[0]
    return _frame_of_sets(downsets, labels, name or f"D({poset.name or 'P'})")
