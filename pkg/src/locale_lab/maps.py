"""Maps between finite frames: classification, adjoints, images and preimages.

A ``LatticeMap`` is a plain total function between the element sets of two
frames; it is read in the localic direction (L -> M, right adjoint of f*).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency, LocaleLabError, MixedFrames, NotLocalic, NotMeetPreserving, NotMeetSubset
from .lattice import bits
from .sublocales import (
    Sublocale,
    Verdict,
    _is_sublocale_mask,
    arrow_images,
    as_mask,
    enumerate_sublocales,
    interior_index,
    is_meet_closed,
)


class LatticeMap:
    """A total function ``values[a]`` from ``source`` ids to ``target`` ids.

    ``cached_adjoint``/``cached_shriek`` are optional declared tables for f* and
    f_! (as loaded from a map file); ``check_cache`` verifies them.
    """

    def __init__(self, source, target, values, name=None, cached_adjoint=None, cached_shriek=None):
        values = tuple(int(v) for v in values)
        if len(values) != source.n:
            raise LocaleLabError(f"map must assign every one of the {source.n} source elements")
        for a, v in enumerate(values):
            if not 0 <= v < target.n:
                raise LocaleLabError(f"value {v} for {source.labels[a]!r} is not a target element")
        self.source = source
        self.target = target
        self.values = values
        self.name = name or "f"
        self.cached_adjoint = None if cached_adjoint is None else tuple(cached_adjoint)
        self.cached_shriek = None if cached_shriek is None else tuple(cached_shriek)
        self._cache = {}

    @classmethod
    def from_assignments(cls, source, target, assignments, name=None, left_adjoint=None, shriek=None):
        vals = [None] * source.n
        for k, v in assignments.items():
            vals[source.index(k)] = target.index(v)
        missing = [source.labels[i] for i, v in enumerate(vals) if v is None]
        if missing:
            raise LocaleLabError(f"map leaves {missing} unassigned")
        adj = None
        if left_adjoint is not None:
            adj = [None] * target.n
            for k, v in left_adjoint.items():
                adj[target.index(k)] = source.index(v)
            if None in adj:
                raise LocaleLabError("declared left adjoint is not total")
        sh = None
        if shriek is not None:
            sh = [None] * source.n
            for k, v in shriek.items():
                sh[source.index(k)] = target.index(v)
            if None in sh:
                raise LocaleLabError("declared f_! is not total")
        return cls(source, target, vals, name=name, cached_adjoint=adj, cached_shriek=sh)

    def __call__(self, a):
        return self.values[a]

    def image_mask(self, mask):
        out = 0
        vals = self.values
        while mask:
            low = mask & -mask
            out |= 1 << vals[low.bit_length() - 1]
            mask ^= low
        return out

    def preimage_mask(self, mask):
        out = 0
        for a, v in enumerate(self.values):
            if mask >> v & 1:
                out |= 1 << a
        return out

    def adjoint_values(self):
        """The table b -> meet{a : b <= f(a)}; the left adjoint when f preserves meets."""
        vals = self._cache.get("adjoint")
        if vals is None:
            L, M = self.source, self.target
            leq = M.leq_table
            out = []
            for b in range(M.n):
                acc = L.top
                for a, v in enumerate(self.values):
                    if leq[b][v]:
                        acc = L.meet_table[acc][a]
                out.append(acc)
            vals = self._cache.setdefault("adjoint", tuple(out))
        return vals

    def check_cache(self):
        """Declared f* must satisfy f*(b) <= a iff b <= f(a); declared f_! must satisfy
        f_!(a) <= b iff a <= f*(b)."""
        L, M = self.source, self.target
        if self.cached_adjoint is not None:
            h = self.cached_adjoint
            for b in range(M.n):
                for a in range(L.n):
                    if L.leq(h[b], a) != M.leq(b, self.values[a]):
                        return Verdict(
                            False,
                            {"cache": "left_adjoint", "a": L.labels[a], "b": M.labels[b]},
                            "declared left adjoint violates the Galois condition",
                        )
        if self.cached_shriek is not None:
            h = self.cached_adjoint if self.cached_adjoint is not None else self.adjoint_values()
            s = self.cached_shriek
            for a in range(L.n):
                for b in range(M.n):
                    if M.leq(s[a], b) != L.leq(a, h[b]):
                        return Verdict(
                            False,
                            {"cache": "shriek", "a": L.labels[a], "b": M.labels[b]},
                            "declared f_! is not left adjoint to f*",
                        )
        return Verdict(True)

    def assignments(self):
        return {self.source.labels[a]: self.target.labels[v] for a, v in enumerate(self.values)}

    def __repr__(self):
        return f"LatticeMap({self.name}: {self.source.name} -> {self.target.name}, {self.values})"


# classification -------------------------------------------------------------


def _subset_meet_witness(L, M, values):
    """First subset X (in mask order) with f(meet X) != meet f[X], or None."""
    n = L.n
    if n > 16:
        # binary meets plus the empty meet fold to every finite family
        if values[L.top] != M.top:
            return {"subset": [], "f(meet)": M.labels[values[L.top]], "meet(f)": M.labels[M.top]}
        for a in range(n):
            for b in range(a + 1, n):
                lhs = values[L.meet_table[a][b]]
                rhs = M.meet_table[values[a]][values[b]]
                if lhs != rhs:
                    return {"subset": [L.labels[a], L.labels[b]], "f(meet)": M.labels[lhs], "meet(f)": M.labels[rhs]}
        return None
    size = 1 << n
    lmeet = [L.top] * size
    fmeet = [M.top] * size
    lt, mt = L.meet_table, M.meet_table
    for X in range(size):
        if X:
            low = X & -X
            i = low.bit_length() - 1
            prev = X ^ low
            lmeet[X] = lt[lmeet[prev]][i]
            fmeet[X] = mt[fmeet[prev]][values[i]]
        if values[lmeet[X]] != fmeet[X]:
            return {
                "subset": [L.labels[i] for i in bits(X)],
                "f(meet)": M.labels[values[lmeet[X]]],
                "meet(f)": M.labels[fmeet[X]],
            }
    return None


def _subset_join_witness(L, M, values):
    """First subset X with f(join X) != join f[X], or None."""
    n = L.n
    size = 1 << n
    lj = [L.bottom] * size
    fj = [M.bottom] * size
    ljt, mjt = L.join_table, M.join_table
    for X in range(size):
        if X:
            low = X & -X
            i = low.bit_length() - 1
            prev = X ^ low
            lj[X] = ljt[lj[prev]][i]
            fj[X] = mjt[fj[prev]][values[i]]
        if values[lj[X]] != fj[X]:
            return {"subset": [L.labels[i] for i in bits(X)], "f(join)": M.labels[values[lj[X]]], "join(f)": M.labels[fj[X]]}
    return None


@dataclass
class MapClassification:
    monotone: bool
    meet_preserving: bool
    meet_preserving_closed_route: bool
    L1: bool
    L2: bool
    localic: bool
    open: bool
    closed: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def meet_routes_agree(self):
        return self.meet_preserving == self.meet_preserving_closed_route

    def flags(self):
        return {
            "monotone": self.monotone,
            "meet_preserving": self.meet_preserving,
            "L1": self.L1,
            "L2": self.L2,
            "localic": self.localic,
            "open": self.open,
            "closed": self.closed,
        }


def _monotone_witness(f):
    L, M, v = f.source, f.target, f.values
    for a in range(L.n):
        for b in bits(L.up[a]):
            if not M.leq_table[v[a]][v[b]]:
                return {"a": L.labels[a], "b": L.labels[b]}
    return None


def _closed_route_witness(f):
    """Condition that every f^-1[c(b)] equals some c(a)."""
    L, M = f.source, f.target
    for b in range(M.n):
        pre = f.preimage_mask(M.closed_masks[b])
        if L.closed_of(pre) is None:
            return {"b": M.labels[b], "preimage": L.format_set(pre)}
    return None


def _l1_witness(f):
    L, M = f.source, f.target
    for a in range(L.n):
        if a != L.top and f.values[a] == M.top:
            return {"a": L.labels[a]}
    return None


def _l2_witness(f):
    L, M, v = f.source, f.target, f.values
    h = f.adjoint_values()
    la, ma = L.arrow_table, M.arrow_table
    for a in range(M.n):
        row = la[h[a]]
        for b in range(L.n):
            if v[row[b]] != ma[a][v[b]]:
                return {"a": M.labels[a], "b": L.labels[b]}
    return None


def image_open_witness(f):
    """First a whose image f[o(a)] is not an open sublocale of the target."""
    L, M = f.source, f.target
    for a in range(L.n):
        img = f.image_mask(L.open_masks[a])
        if M.open_of(img) is None:
            return {"a": L.labels[a], "image": M.format_set(img)}
    return None


def image_closed_witness(f):
    L, M = f.source, f.target
    for a in range(L.n):
        img = f.image_mask(L.closed_masks[a])
        if M.closed_of(img) is None:
            return {"a": L.labels[a], "image": M.format_set(img)}
    return None


def classify_map(f):
    """Evaluate every flag of the map; never raises on a valid map."""
    cls = f._cache.get("classification")
    if cls is not None:
        return cls
    w = {}
    checks = {
        "monotone": _monotone_witness(f),
        "meet_preserving": _subset_meet_witness(f.source, f.target, f.values),
        "meet_preserving_closed_route": _closed_route_witness(f),
        "L1": _l1_witness(f),
        "L2": _l2_witness(f),
        "open": image_open_witness(f),
        "closed": image_closed_witness(f),
    }
    for k, v in checks.items():
        if v is not None:
            w[k] = v
    ok = {k: v is None for k, v in checks.items()}
    cls = MapClassification(
        monotone=ok["monotone"],
        meet_preserving=ok["meet_preserving"],
        meet_preserving_closed_route=ok["meet_preserving_closed_route"],
        L1=ok["L1"],
        L2=ok["L2"],
        localic=ok["meet_preserving"] and ok["L1"] and ok["L2"],
        open=ok["open"],
        closed=ok["closed"],
        witnesses=w,
    )
    return f._cache.setdefault("classification", cls)


def require_meet_preserving(f):
    c = classify_map(f)
    if not c.meet_preserving:
        raise NotMeetPreserving(f"{f.name} does not preserve meets", witness=c.witnesses.get("meet_preserving"))


def require_localic(f):
    c = classify_map(f)
    if not c.localic:
        bad = next(k for k in ("meet_preserving", "L1", "L2") if k in c.witnesses)
        raise NotLocalic(f"{f.name} is not localic ({bad} fails)", witness=c.witnesses[bad])


def left_adjoint(f):
    """f* as a LatticeMap target -> source; verifies the unit, counit and that
    f^-1[c(b)] = c(f*(b)) for every b."""
    require_meet_preserving(f)
    L, M = f.source, f.target
    h = f.adjoint_values()
    for b in range(M.n):
        if not M.leq(b, f.values[h[b]]):
            raise InternalInconsistency("unit b <= f(f*(b)) fails", witness={"b": M.labels[b]})
        if f.preimage_mask(M.closed_masks[b]) != L.closed_masks[h[b]]:
            raise InternalInconsistency("f^-1[c(b)] != c(f*(b))", witness={"b": M.labels[b]})
    for a in range(L.n):
        if not L.leq(h[f.values[a]], a):
            raise InternalInconsistency("counit f*(f(a)) <= a fails", witness={"a": L.labels[a]})
    return LatticeMap(M, L, h, name=f"{f.name}*")


def image_sublocale(f, S):
    """f[S] for a localic f; checked to be a sublocale of the target."""
    require_localic(f)
    mask = as_mask(f.source, S)
    img = f.image_mask(mask)
    if not _is_sublocale_mask(f.target, img):
        raise InternalInconsistency("image of a sublocale is not a sublocale", witness={"S": bits(mask)})
    return Sublocale(f.target, img)


def localic_preimage_mask(f, tmask):
    """Largest sublocale inside f^-1[T], by pruning elements whose arrows leave the set."""
    L = f.source
    ai = arrow_images(L)
    S = f.preimage_mask(tmask)
    while True:
        keep = S
        for s in bits(S):
            if ai[s] & ~S:
                keep &= ~(1 << s)
        if keep == S:
            return S
        S = keep


def localic_preimage(f, T, with_raw=False):
    """f_{-1}[T] for a meet-preserving f and a meet-subset T of the target.

    With ``with_raw`` returns ``(sublocale, raw_preimage_mask)``.
    """
    require_meet_preserving(f)
    tmask = as_mask(f.target, T)
    if not is_meet_closed(f.target, tmask):
        raise NotMeetSubset(f"{f.target.format_set(tmask)} is not closed under meets")
    S = localic_preimage_mask(f, tmask)
    if not _is_sublocale_mask(f.source, S):
        raise InternalInconsistency("pruned preimage is not a sublocale", witness={"T": bits(tmask)})
    sub = Sublocale(f.source, S)
    return (sub, f.preimage_mask(tmask)) if with_raw else sub


def localic_via_interior(f):
    """Localic test by (int f^-1[o(b)])^c = f^-1[c(b)] for all b, with complements
    taken in the enumerated S(L)."""
    L, M = f.source, f.target
    lat = enumerate_sublocales(L)
    for b in range(M.n):
        inner = L.open_masks[interior_index(L, f.preimage_mask(M.open_masks[b]))]
        comp = lat.complement_mask(inner)
        pre = f.preimage_mask(M.closed_masks[b])
        if comp != pre:
            return Verdict(False, {"b": M.labels[b], "complement": L.format_set(comp), "preimage": L.format_set(pre)})
    return Verdict(True)


# reports --------------------------------------------------------------------


@dataclass
class OpenClosedReport:
    is_open: bool
    is_closed: bool
    witnesses: dict
    closed_conditions: dict | None
    skipped_reason: str = ""

    @property
    def closed_conditions_agree(self):
        if self.closed_conditions is None:
            return True
        vals = set(self.closed_conditions.values())
        return len(vals) == 1 and vals == {self.is_closed}


def closed_conditions(f):
    """The four equivalent conditions for a meet-preserving map to be closed."""
    L, M, v = f.source, f.target, f.values
    h = f.adjoint_values()
    lj, mj = L.join_table, M.join_table
    out = {}
    out["i"] = all(f.image_mask(L.closed_masks[a]) == M.closed_masks[v[a]] for a in range(L.n))
    out["ii"] = all(v[lj[a][h[b]]] == mj[v[a]][b] for a in range(L.n) for b in range(M.n))
    out["iii"] = all(
        M.leq(c, mj[v[a]][b]) == L.leq(h[c], lj[a][h[b]])
        for a in range(L.n)
        for b in range(M.n)
        for c in range(M.n)
    )
    out["iv"] = all(
        (mj[v[a]][b] == mj[v[a]][c]) == (lj[a][h[b]] == lj[a][h[c]])
        for a in range(L.n)
        for b in range(M.n)
        for c in range(M.n)
    )
    return out


def open_closed_report(f):
    w = {}
    ow = image_open_witness(f)
    cw = image_closed_witness(f)
    if ow:
        w["open"] = ow
    if cw:
        w["closed"] = cw
    c = classify_map(f)
    if c.meet_preserving:
        conds, reason = closed_conditions(f), ""
    else:
        conds, reason = None, "closed-map conditions need a meet-preserving map"
    return OpenClosedReport(ow is None, cw is None, w, conds, reason)


@dataclass
class JTReport:
    open: bool
    heyting_hom: bool
    frobenius: bool
    arrow_identity: bool
    shriek: tuple | None
    open_image_meet: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self):
        return self.open == self.heyting_hom == self.frobenius == self.arrow_identity


def shriek_candidate(f):
    """a -> meet{b : a <= f*(b)} and whether it is left adjoint to f*."""
    L, M = f.source, f.target
    h = f.adjoint_values()
    cand = []
    for a in range(L.n):
        acc = M.top
        for b in range(M.n):
            if L.leq(a, h[b]):
                acc = M.meet_table[acc][b]
        cand.append(acc)
    ok = all(M.leq(cand[a], b) == L.leq(a, h[b]) for a in range(L.n) for b in range(M.n))
    return tuple(cand), ok


def heyting_hom_witness(f):
    """f* preserves all meets, all joins and the arrow; first failure or None."""
    L, M = f.source, f.target
    h = f.adjoint_values()
    w = _subset_meet_witness(M, L, h)
    if w:
        return {"preserves": "meets", **w}
    w = _subset_join_witness(M, L, h)
    if w:
        return {"preserves": "joins", **w}
    for b in range(M.n):
        for c in range(M.n):
            if h[M.arrow(b, c)] != L.arrow(h[b], h[c]):
                return {"preserves": "arrow", "b": M.labels[b], "c": M.labels[c]}
    return None


def open_image_meet_witness(f):
    """f[o(a) & o(f*(b))] == f[o(a)] & o(b) for all a, b."""
    L, M = f.source, f.target
    h = f.adjoint_values()
    for a in range(L.n):
        oa = L.open_masks[a]
        img_a = f.image_mask(oa)
        for b in range(M.n):
            if f.image_mask(oa & L.open_masks[h[b]]) != img_a & M.open_masks[b]:
                return {"a": L.labels[a], "b": M.labels[b]}
    return None


def joyal_tierney(f):
    """Evaluate the four Joyal-Tierney conditions for a localic map."""
    require_localic(f)
    L, M, v = f.source, f.target, f.values
    h = f.adjoint_values()
    w = {}
    ow = image_open_witness(f)
    if ow:
        w["open"] = ow
    hw = heyting_hom_witness(f)
    if hw:
        w["heyting_hom"] = hw
    shriek, exists = shriek_candidate(f)
    frob = arrow_id = exists
    if not exists:
        w["frobenius"] = w["arrow_identity"] = {"reason": "f* has no left adjoint"}
    else:
        for a in range(L.n):
            for b in range(M.n):
                if frob and shriek[L.meet(a, h[b])] != M.meet(shriek[a], b):
                    frob = False
                    w["frobenius"] = {"a": L.labels[a], "b": M.labels[b]}
                if arrow_id and v[L.arrow(a, h[b])] != M.arrow(shriek[a], b):
                    arrow_id = False
                    w["arrow_identity"] = {"a": L.labels[a], "b": M.labels[b]}
    lw = open_image_meet_witness(f)
    if lw:
        w["open_image_meet"] = lw
    return JTReport(
        open=ow is None,
        heyting_hom=hw is None,
        frobenius=frob,
        arrow_identity=arrow_id,
        shriek=shriek if exists else None,
        open_image_meet=lw is None,
        witnesses=w,
    )


HIERARCHY = ("open", "sub_open", "hereditarily_skeletal", "nearly_open", "skeletal")


@dataclass
class HierarchyReport:
    skeletal: bool
    nearly_open: bool
    hereditarily_skeletal: bool
    sub_open: bool
    open: bool
    hereditary_conditions: dict
    witnesses: dict = field(default_factory=dict)

    def chain_violation(self):
        """First broken implication open => sub_open => ... => skeletal, or None."""
        for stronger, weaker in zip(HIERARCHY, HIERARCHY[1:]):
            if getattr(self, stronger) and not getattr(self, weaker):
                return (stronger, weaker)
        return None

    @property
    def hereditary_conditions_agree(self):
        return all(v == self.hereditarily_skeletal for v in self.hereditary_conditions.values())

    def flags(self):
        return {k: getattr(self, k) for k in HIERARCHY}


def hereditary_conditions(f):
    """(i) cl f_{-1}[T] = f_{-1}[cl T], (ii) meet f_{-1}[T] <= f*(meet T),
    (iii) f*(meet T) in f_{-1}[T], each over every sublocale T of the target."""
    L, M = f.source, f.target
    h = f.adjoint_values()
    res = {"i": True, "ii": True, "iii": True}
    w = {}
    for tmask in enumerate_sublocales(M).masks:
        pre = localic_preimage_mask(f, tmask)
        t = M.meet_of(tmask)
        m = L.meet_of(pre)
        if res["i"] and L.closed_masks[m] != localic_preimage_mask(f, M.closed_masks[t]):
            res["i"] = False
            w["i"] = {"T": M.format_set(tmask)}
        if res["ii"] and not L.leq(m, h[t]):
            res["ii"] = False
            w["ii"] = {"T": M.format_set(tmask)}
        if res["iii"] and not pre >> h[t] & 1:
            res["iii"] = False
            w["iii"] = {"T": M.format_set(tmask)}
    return res, w


def skeletal_hierarchy(f):
    """Evaluate the identities on f* that define the weak-openness classes."""
    require_localic(f)
    L, M = f.source, f.target
    h = f.adjoint_values()
    w = {}
    skel = near = hs = sub = True
    neg = L.neg
    for b in range(M.n):
        nb = M.neg(b)
        if skel and neg(h[nb]) != neg(neg(h[b])):
            skel = False
            w["skeletal"] = {"b": M.labels[b]}
        if near and h[nb] != neg(h[b]):
            near = False
            w["nearly_open"] = {"b": M.labels[b]}
        for c in range(M.n):
            hb, hc = h[b], h[c]
            if hs and L.arrow(h[M.arrow(b, c)], hc) != L.arrow(L.arrow(hb, hc), hc):
                hs = False
                w["hereditarily_skeletal"] = {"b": M.labels[b], "c": M.labels[c]}
            if sub and h[M.arrow(b, c)] != L.arrow(hb, hc):
                sub = False
                w["sub_open"] = {"b": M.labels[b], "c": M.labels[c]}
    ow = image_open_witness(f)
    if ow:
        w["open"] = ow
    p56, p56w = hereditary_conditions(f)
    for k, v in p56w.items():
        w[f"hereditary_conditions_{k}"] = v
    return HierarchyReport(
        skeletal=skel,
        nearly_open=near,
        hereditarily_skeletal=hs,
        sub_open=sub,
        open=ow is None,
        hereditary_conditions=p56,
        witnesses=w,
    )
