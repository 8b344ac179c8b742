"""Sublocales of a finite frame and the coframe S(L) they form.

A sublocale is stored as a bit mask over the host frame's element ids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FrameTooLarge, InternalInconsistency, MixedFrames
from .lattice import bits, popcount

DEFAULT_SUBLOCALE_CAP = 20
DEFAULT_MEET_SUBSET_CAP = 16


@dataclass
class Verdict:
    ok: bool
    witness: dict | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


class _Subset:
    __slots__ = ("frame", "members")

    def __init__(self, frame, members):
        self.frame = frame
        self.members = members

    @property
    def elements(self):
        return bits(self.members)

    @property
    def labels(self):
        return [self.frame.labels[i] for i in bits(self.members)]

    def __contains__(self, x):
        return bool(self.members >> self.frame.index(x) & 1)

    def __len__(self):
        return popcount(self.members)

    def __iter__(self):
        return iter(bits(self.members))

    def __le__(self, other):
        _same_frame(self, other)
        return self.members & ~other.members == 0

    def __eq__(self, other):
        if not isinstance(other, _Subset):
            return NotImplemented
        return self.frame is other.frame and self.members == other.members

    def __hash__(self):
        return hash((id(self.frame), self.members))


class MeetSubset(_Subset):
    """A subset closed under all meets, the empty one included (so it holds the top)."""

    __slots__ = ()

    def __repr__(self):
        return f"MeetSubset({self.frame.format_set(self.members)})"


class Sublocale(_Subset):
    """A subset closed under meets (S1) and under ``x -> s`` for every x (S2).

    ``open_of``/``closed_of`` hold the a with S = o(a) or S = c(a), else None.
    """

    __slots__ = ("open_of", "closed_of")

    def __init__(self, frame, members):
        super().__init__(frame, members)
        self.open_of = frame.open_of(members)
        self.closed_of = frame.closed_of(members)

    @property
    def kind(self):
        tags = []
        if self.open_of is not None:
            tags.append(f"open:{self.frame.labels[self.open_of]}")
        if self.closed_of is not None:
            tags.append(f"closed:{self.frame.labels[self.closed_of]}")
        return ",".join(tags) if tags else "other"

    @property
    def is_open(self):
        return self.open_of is not None

    @property
    def is_closed(self):
        return self.closed_of is not None

    def __str__(self):
        return f"{self.frame.format_set(self.members)} [{self.kind}]"

    def __repr__(self):
        return f"Sublocale({self})"


def _same_frame(*subsets):
    frames = {id(s.frame) for s in subsets}
    if len(frames) > 1:
        raise MixedFrames("sublocales belong to different frames")


def as_mask(frame, subset):
    """Accept a bit mask, a Sublocale/MeetSubset, or an iterable of ids/labels."""
    if isinstance(subset, _Subset):
        if subset.frame is not frame:
            raise MixedFrames("subset belongs to a different frame")
        return subset.members
    if isinstance(subset, int) and not isinstance(subset, bool):
        if subset & ~frame.full:
            raise ValueError(f"mask {subset:#x} has bits outside {frame.name}")
        return subset
    return frame.mask(subset)


# membership tests -----------------------------------------------------------


def arrow_images(frame):
    """For each s, the mask {x -> s : x in L}."""
    cached = frame._cache.get("arrow_images")
    if cached is None:
        at = frame.arrow_table
        cached = tuple(
            sum(1 << v for v in {at[x][s] for x in range(frame.n)}) for s in range(frame.n)
        )
        frame._cache["arrow_images"] = cached
    return cached


def _meet_violation(frame, mask):
    if not mask >> frame.top & 1:
        return (), frame.top
    mt = frame.meet_table
    els = bits(mask)
    for i, s in enumerate(els):
        row = mt[s]
        for t in els[i + 1:]:
            if not mask >> row[t] & 1:
                return (s, t), row[t]
    return None


def is_meet_closed(frame, mask):
    return _meet_violation(frame, mask) is None


def _is_sublocale_mask(frame, mask):
    if not mask >> frame.top & 1:
        return False
    ai = arrow_images(frame)
    for s in bits(mask):
        if ai[s] & ~mask:
            return False
    return is_meet_closed(frame, mask)


def is_sublocale(frame, subset):
    """Check S1 (closure under all meets) and S2 (closure under x -> s).

    S1 is checked as top-membership plus binary meets, which covers every finite
    family. The witness names the first violation in element-id order.
    """
    mask = as_mask(frame, subset)
    labels = frame.labels
    bad = _meet_violation(frame, mask)
    if bad is not None:
        family, value = bad
        return Verdict(
            False,
            {"condition": "S1", "meet_of": [labels[i] for i in family], "meet": labels[value]},
            "meet of members is missing" if family else "empty meet (top) is missing",
        )
    at = frame.arrow_table
    for s in bits(mask):
        for x in range(frame.n):
            v = at[x][s]
            if not mask >> v & 1:
                return Verdict(
                    False,
                    {"condition": "S2", "x": labels[x], "s": labels[s], "arrow": labels[v]},
                    "x -> s is missing",
                )
    return Verdict(True)


# constructors ---------------------------------------------------------------


def meet_closure_mask(frame, mask):
    res = mask | 1 << frame.top
    mt = frame.meet_table
    while True:
        new = res
        els = bits(res)
        for i, s in enumerate(els):
            row = mt[s]
            for t in els[i + 1:]:
                new |= 1 << row[t]
        if new == res:
            return res
        res = new


def meet_closure(frame, subset):
    """Smallest meet-subset containing ``subset``."""
    return MeetSubset(frame, meet_closure_mask(frame, as_mask(frame, subset)))


def open_sublocale(frame, a):
    return Sublocale(frame, frame.open_masks[frame.index(a)])


def closed_sublocale(frame, a):
    return Sublocale(frame, frame.closed_masks[frame.index(a)])


def principal_sublocales(frame, a):
    """(o(a), c(a)) with o(a) = {a -> x} and c(a) = {x >= a}."""
    a = frame.index(a)
    return open_sublocale(frame, a), closed_sublocale(frame, a)


def void(frame):
    return Sublocale(frame, 1 << frame.top)


def whole(frame):
    return Sublocale(frame, frame.full)


def least_sublocale_mask(frame, mask):
    at = frame.arrow_table
    gen = 0
    for x in bits(mask):
        for a in range(frame.n):
            gen |= 1 << at[a][x]
    return meet_closure_mask(frame, gen)


def least_sublocale_containing(frame, subset):
    """Meet-closure of {a -> x : a in L, x in X}."""
    return Sublocale(frame, least_sublocale_mask(frame, as_mask(frame, subset)))


def closure_index(frame, mask):
    """The a with cl X = c(a), namely the meet of X."""
    return frame.meet_of(mask)


def closure_of_subset(frame, subset):
    """cl X = c(meet X), defined for any subset X."""
    return Sublocale(frame, frame.closed_masks[closure_index(frame, as_mask(frame, subset))])


def interior_index(frame, mask):
    """The join of all a with o(a) inside X."""
    acc = frame.bottom
    jt = frame.join_table
    for a, om in enumerate(frame.open_masks):
        if om & ~mask == 0:
            acc = jt[acc][a]
    return acc


def interior_of_subset(frame, subset):
    """int X = o(join{a : o(a) inside X}); contained in X only when X is meet-closed."""
    return Sublocale(frame, frame.open_masks[interior_index(frame, as_mask(frame, subset))])


def interior_via_supplement(S):
    """Interior of a sublocale as o(meet of its supplement)."""
    lat = enumerate_sublocales(S.frame)
    sup = lat.supplement_mask(S.members)
    return Sublocale(S.frame, S.frame.open_masks[S.frame.meet_of(sup)])


def booleanization(frame):
    """The sublocale {b : b** = b}."""
    mask = 0
    for b in range(frame.n):
        if frame.neg(frame.neg(b)) == b:
            mask |= 1 << b
    if not _is_sublocale_mask(frame, mask):
        raise InternalInconsistency("Booleanization is not a sublocale", witness={"members": bits(mask)})
    return Sublocale(frame, mask)


def is_subfit(frame):
    """For all a not<= b there is c with a v c = 1 and b v c != 1."""
    jt = frame.join_table
    top = frame.top
    for a in range(frame.n):
        for b in range(frame.n):
            if frame.leq(a, b):
                continue
            if not any(jt[a][c] == top and jt[b][c] != top for c in range(frame.n)):
                return Verdict(False, {"a": frame.labels[a], "b": frame.labels[b]})
    return Verdict(True)


# the coframe S(L) -----------------------------------------------------------


def _scan_sublocales(frame):
    n = frame.n
    top_bit = 1 << frame.top
    ai = arrow_images(frame)
    found = []
    rest = [i for i in range(n) if i != frame.top]
    for code in range(1 << len(rest)):
        mask = top_bit
        c = code
        k = 0
        while c:
            if c & 1:
                mask |= 1 << rest[k]
            c >>= 1
            k += 1
        ok = True
        for s in bits(mask):
            if ai[s] & ~mask:
                ok = False
                break
        if ok and is_meet_closed(frame, mask):
            found.append(mask)
    found.sort()
    return found


class SublocaleLattice:
    """All sublocales of a frame ordered by inclusion, with join/meet tables.

    Sublocales are listed in increasing mask order, so O comes first and L last.
    """

    def __init__(self, frame, masks):
        self.frame = frame
        self.masks = tuple(masks)
        self.sublocales = tuple(Sublocale(frame, m) for m in self.masks)
        self.index = {m: i for i, m in enumerate(self.masks)}
        k = self.size = len(self.masks)
        self.bottom = self.index.get(1 << frame.top)
        self.top = self.index.get(frame.full)
        if self.bottom is None or self.top is None:
            raise InternalInconsistency("O or L missing from the enumerated sublocales")
        self.order = tuple(tuple(self.masks[i] & ~self.masks[j] == 0 for j in range(k)) for i in range(k))
        meet = [[0] * k for _ in range(k)]
        join = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i, k):
                inter = self.masks[i] & self.masks[j]
                if inter not in self.index:
                    raise InternalInconsistency(
                        "intersection of sublocales is not a sublocale",
                        witness={"S": bits(self.masks[i]), "T": bits(self.masks[j])},
                    )
                meet[i][j] = meet[j][i] = self.index[inter]
                lub = self._lub(i, j)
                formula = meet_closure_mask(frame, self.masks[i] | self.masks[j])
                if lub is None or self.masks[lub] != formula:
                    raise InternalInconsistency(
                        "join in S(L) disagrees with the meet-closure of the union",
                        witness={"S": bits(self.masks[i]), "T": bits(self.masks[j])},
                    )
                join[i][j] = join[j][i] = lub
        self.meet_table = tuple(tuple(r) for r in meet)
        self.join_table = tuple(tuple(r) for r in join)
        self._complements = {}

    def _lub(self, i, j):
        ups = [u for u in range(self.size) if self.order[i][u] and self.order[j][u]]
        for u in ups:
            if all(self.order[u][v] for v in ups):
                return u
        return None

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.sublocales)

    def sublocale(self, mask):
        return self.sublocales[self.index[mask]]

    def join_mask(self, a, b):
        return self.masks[self.join_table[self.index[a]][self.index[b]]]

    def difference_mask(self, r, s):
        """Smallest T with R inside S v T, as the intersection of all such T."""
        acc = self.frame.full
        si = self.index[s]
        for t in range(self.size):
            if r & ~self.masks[self.join_table[si][t]] == 0:
                acc &= self.masks[t]
        return acc

    def supplement_mask(self, s):
        return self.difference_mask(self.frame.full, s)

    def complement_mask(self, s):
        """Complement of ``s`` in S(L), or None when it has none."""
        memo = self._complements
        if s not in memo:
            si = self.index[s]
            memo[s] = None
            for t in range(self.size):
                if self.meet_table[si][t] == self.bottom and self.join_table[si][t] == self.top:
                    memo[s] = self.masks[t]
                    break
        return memo[s]

    def is_coframe(self):
        """Dual distributivity (a ^ b) v c = (a v c) ^ (b v c) over all triples."""
        m, j = self.meet_table, self.join_table
        for a in range(self.size):
            for b in range(self.size):
                for c in range(self.size):
                    if j[m[a][b]][c] != m[j[a][c]][j[b][c]]:
                        return Verdict(False, {"triple": [bits(self.masks[x]) for x in (a, b, c)]})
        return Verdict(True)

    def to_json(self):
        f = self.frame
        return {
            "frame": f.name,
            "sublocales": [
                {"members": [f.labels[i] for i in bits(m)], "kind": s.kind}
                for m, s in zip(self.masks, self.sublocales)
            ],
            "containment": [
                [i, j] for i in range(self.size) for j in range(self.size) if i != j and self.order[i][j]
            ],
        }


def enumerate_sublocales(frame, cap=DEFAULT_SUBLOCALE_CAP):
    """S(L): every subset passing the sublocale test, with order and tables (cached)."""
    if frame.n > cap:
        raise FrameTooLarge(f"{frame.name} has {frame.n} elements; sublocale cap is {cap}")
    lat = frame._cache.get("sublocales")
    if lat is None:
        lat = frame._cache.setdefault("sublocales", SublocaleLattice(frame, _scan_sublocales(frame)))
    return lat


def enumerate_meet_subsets(frame, cap=DEFAULT_MEET_SUBSET_CAP):
    """All meet-subsets of the frame as masks, in increasing mask order (cached)."""
    if frame.n > cap:
        raise FrameTooLarge(f"{frame.name} has {frame.n} elements; meet-subset cap is {cap}")
    found = frame._cache.get("meet_subsets")
    if found is None:
        top_bit = 1 << frame.top
        found = tuple(m for m in range(1 << frame.n) if m & top_bit and is_meet_closed(frame, m))
        frame._cache["meet_subsets"] = found
    return found


def coframe_ops(op, *args):
    """Coframe operations of S(L): ``join``/``meet`` (any arity), ``difference`` (R, S),
    ``supplement`` (S)."""
    if not args:
        raise ValueError("coframe_ops needs at least one sublocale")
    _same_frame(*args)
    frame = args[0].frame
    if op == "meet":
        acc = frame.full
        for s in args:
            acc &= s.members
        return Sublocale(frame, acc)
    if op == "join":
        acc = 0
        for s in args:
            acc |= s.members
        return Sublocale(frame, meet_closure_mask(frame, acc))
    lat = enumerate_sublocales(frame)
    if op == "difference":
        r, s = args
        return Sublocale(frame, lat.difference_mask(r.members, s.members))
    if op == "supplement":
        (s,) = args
        return Sublocale(frame, lat.supplement_mask(s.members))
    raise ValueError(f"unknown coframe operation {op!r}")


def join(*args):
    return coframe_ops("join", *args)


def meet(*args):
    return coframe_ops("meet", *args)


def difference(r, s):
    return coframe_ops("difference", r, s)


def supplement(s):
    return coframe_ops("supplement", s)
