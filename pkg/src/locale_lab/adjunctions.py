"""Galois connections, the four closed/open adjunction types, and the laws tying
closure and interior to images and localic preimages.

Every law is reported as a ``LawResult``. A law whose precondition the map does
not meet is ``skipped`` with a reason, never counted as a pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from operator import or_

from .errors import MixedPosets, PreconditionViolated
from .maps import (
    classify_map,
    closed_conditions,
    localic_preimage_mask,
    localic_via_interior,
    require_localic,
    require_meet_preserving,
    shriek_candidate,
    skeletal_hierarchy,
)
from .sublocales import enumerate_meet_subsets, enumerate_sublocales, interior_index

SUBSET_LAW_CAP = 12
TYPE_IDS = ("I", "II", "III", "IV")


def _sub(a, b):
    return a & ~b == 0


# generic Galois check --------------------------------------------------------


@dataclass
class GaloisReport:
    is_adjunction: bool
    failure_witness: tuple | None
    counit: bool
    unit: bool
    counit_witness: object = None
    unit_witness: object = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.is_adjunction


def _as_table(m):
    vals = getattr(m, "values", None)
    return tuple(vals) if isinstance(vals, tuple) else tuple(m)


def check_galois(f, g, X=None, Y=None):
    """Scan f(x) <= y iff x <= g(y) over all pairs, plus fg <= id and id <= gf.

    ``f`` and ``g`` are LatticeMaps (posets taken from them) or plain tables, in
    which case the posets ``X`` (domain of f) and ``Y`` must be given.
    """
    if X is None or Y is None:
        if not (hasattr(f, "source") and hasattr(g, "source")):
            raise MixedPosets("plain tables need the posets X and Y")
        X, Y = f.source, f.target
        if g.source is not Y or g.target is not X:
            raise MixedPosets("g must run from the codomain of f back to its domain")
    ft, gt = _as_table(f), _as_table(g)
    if len(ft) != X.n or len(gt) != Y.n:
        raise MixedPosets(f"tables of length {len(ft)}, {len(gt)} do not fit posets of size {X.n}, {Y.n}")
    if any(not 0 <= v < Y.n for v in ft) or any(not 0 <= v < X.n for v in gt):
        raise MixedPosets("table values fall outside the posets")
    lx, ly = X.leq_table, Y.leq_table
    witness = None
    for x in range(X.n):
        for y in range(Y.n):
            if ly[ft[x]][y] != lx[x][gt[y]]:
                witness = (X.labels[x], Y.labels[y])
                break
        if witness:
            break
    counit_w = next((Y.labels[y] for y in range(Y.n) if not ly[ft[gt[y]]][y]), None)
    unit_w = next((X.labels[x] for x in range(X.n) if not lx[x][gt[ft[x]]]), None)
    return GaloisReport(
        is_adjunction=witness is None,
        failure_witness=witness,
        counit=counit_w is None,
        unit=unit_w is None,
        counit_witness=counit_w,
        unit_witness=unit_w,
        pairs_checked=X.n * Y.n,
    )


# the four adjunction types ---------------------------------------------------


class _Legs:
    """Both assignments of one adjunction type as sublocale masks.

    ``forward[a]`` runs from the source family (indexed by a in L) to the target
    family, ``backward[b]`` the other way; ``holds(a, b)`` is the Galois
    condition at (a, b) in the orientation the type prescribes.
    """

    def __init__(self, f, type_id):
        L, M = f.source, f.target
        self.f, self.type_id = f, type_id
        img, pre = f.image_mask, f.preimage_mask
        Lc, Lo, Mc, Mo = L.closed_masks, L.open_masks, M.closed_masks, M.open_masks
        if type_id == "I":
            self.forward = tuple(Mc[M.meet_of(img(Lc[a]))] for a in range(L.n))
            self.backward = tuple(Lc[L.meet_of(pre(Mc[b]))] for b in range(M.n))
        elif type_id == "II":
            comp = enumerate_sublocales(M).complement_mask
            self.forward = tuple(comp(Mc[M.meet_of(img(Lc[a]))]) for a in range(L.n))
            self.backward = tuple(Lo[interior_index(L, pre(Mo[b]))] for b in range(M.n))
        elif type_id == "III":
            self.forward = tuple(Mo[interior_index(M, img(Lo[a]))] for a in range(L.n))
            self.backward = tuple(Lo[interior_index(L, pre(Mo[b]))] for b in range(M.n))
        elif type_id == "IV":
            comp = enumerate_sublocales(M).complement_mask
            self.forward = tuple(comp(Mo[interior_index(M, img(Lo[a]))]) for a in range(L.n))
            self.backward = tuple(Lc[L.meet_of(pre(Mc[b]))] for b in range(M.n))
        else:
            raise ValueError(f"unknown adjunction type {type_id!r}")

    def holds(self, a, b):
        f = self.f
        L, M = f.source, f.target
        fw, bw = self.forward[a], self.backward[b]
        t = self.type_id
        if t == "I":
            return _sub(fw, M.closed_masks[b]) == _sub(L.closed_masks[a], bw)
        if t == "II":
            return _sub(bw, L.open_masks[a]) == _sub(M.open_masks[b], fw)
        if t == "III":
            return _sub(fw, M.open_masks[b]) == _sub(L.open_masks[a], bw)
        return _sub(bw, L.closed_masks[a]) == _sub(M.closed_masks[b], fw)

    def first_failure(self):
        L, M = self.f.source, self.f.target
        for a in range(L.n):
            for b in range(M.n):
                if not self.holds(a, b):
                    return {"a": L.labels[a], "b": M.labels[b]}
        return None


def _legs(f, type_id):
    key = ("legs", type_id)
    legs = f._cache.get(key)
    if legs is None:
        legs = f._cache.setdefault(key, _Legs(f, type_id))
    return legs


def _is_adjoint(f, type_id):
    return _legs(f, type_id).first_failure() is None


def _phi(f):
    """a -> the b with int f[o(a)] = o(b)."""
    L, M = f.source, f.target
    return tuple(interior_index(M, f.image_mask(L.open_masks[a])) for a in range(L.n))


@dataclass
class AdjunctionTypeReport:
    type_id: str
    forward: dict
    backward: dict
    is_adjoint_pair: bool
    theorem_predicate: bool
    witness: dict | None = None
    lemma_iv: bool | None = None

    @property
    def agreement(self):
        ok = self.is_adjoint_pair == self.theorem_predicate
        if self.lemma_iv is not None:
            ok = ok and self.lemma_iv == self.is_adjoint_pair
        return ok

    def to_json(self):
        return {
            "type": self.type_id,
            "forward": self.forward,
            "backward": self.backward,
            "is_adjoint_pair": self.is_adjoint_pair,
            "theorem_predicate": self.theorem_predicate,
            "agreement": self.agreement,
            "witness": self.witness,
            "lemma_iv": self.lemma_iv,
        }


_PREDICATES = {
    "I": ("meet-preserving", lambda c: c.meet_preserving),
    "II": ("localic", lambda c: c.localic),
    "III": ("open", lambda c: c.open),
    "IV": ("open localic", lambda c: c.open and c.localic),
}


def _norm_type(type_id):
    t = str(type_id).upper().removeprefix("TYPE-").removeprefix("TYPE ")
    t = {"1": "I", "2": "II", "3": "III", "4": "IV"}.get(t, t)
    if t not in TYPE_IDS:
        raise ValueError(f"unknown adjunction type {type_id!r}")
    return t


def lemma_iv_holds(f):
    """a <= f*(b) iff phi(a) <= b for all a, b."""
    L, M = f.source, f.target
    h, phi = f.adjoint_values(), _phi(f)
    return all(L.leq(a, h[b]) == M.leq(phi[a], b) for a in range(L.n) for b in range(M.n))


def adjunction_type(f, type_id):
    """Build both assignments of the given type, scan the Galois condition over
    all (a, b) and compare with the map property the type characterizes."""
    t = _norm_type(type_id)
    c = classify_map(f)
    if t == "II" and not c.monotone:
        raise PreconditionViolated("type II needs an order-preserving map", witness=c.witnesses.get("monotone"))
    if t in ("III", "IV") and not c.meet_preserving:
        raise PreconditionViolated(
            f"type {t} needs a meet-preserving map", witness=c.witnesses.get("meet_preserving")
        )
    legs = _legs(f, t)
    L, M = f.source, f.target
    w = legs.first_failure()
    return AdjunctionTypeReport(
        type_id=t,
        forward={L.labels[a]: M.format_set(m) for a, m in enumerate(legs.forward)},
        backward={M.labels[b]: L.format_set(m) for b, m in enumerate(legs.backward)},
        is_adjoint_pair=w is None,
        theorem_predicate=_PREDICATES[t][1](c),
        witness=w,
        lemma_iv=lemma_iv_holds(f) if t == "IV" else None,
    )


# law results -----------------------------------------------------------------


@dataclass
class LawResult:
    law: str
    verdict: str
    witness: dict | None = None
    instances_checked: int = 0
    reason: str = ""
    values: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == "pass"

    @property
    def failed(self):
        return self.verdict == "fail"

    def __str__(self):
        if self.verdict == "skipped":
            return f"{self.law}: skipped: {self.reason}"
        return f"{self.law}: {self.verdict}"

    def to_json(self):
        out = {
            "law": self.law,
            "verdict": self.verdict,
            "witness": self.witness,
            "instances_checked": self.instances_checked,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def _skip(law, reason):
    return LawResult(law, "skipped", reason=reason)


def _scan(items, test):
    """Run ``test`` (None on success, witness otherwise) until the first failure.

    Returns (holds, witness, number_checked).
    """
    n = 0
    for item in items:
        n += 1
        w = test(item)
        if w is not None:
            return False, w, n
    return True, None, n


def _equivalent(law, conditions, checked, target=None):
    """Pass when every named condition (and ``target`` if given) has one value."""
    vals = {k: v[0] for k, v in conditions.items()}
    if target is not None:
        vals = {target[0]: target[1], **vals}
    if len(set(vals.values())) <= 1:
        return LawResult(law, "pass", instances_checked=checked, values=vals)
    w = {"values": vals}
    for k, v in conditions.items():
        if v[1] is not None:
            w[k] = v[1]
    return LawResult(law, "fail", witness=w, instances_checked=checked, values=vals)


def _all_ab(f, test):
    L, M = f.source, f.target
    return _scan(((a, b) for a in range(L.n) for b in range(M.n)), lambda ab: test(*ab))


def _ab_w(f, a, b):
    return {"a": f.source.labels[a], "b": f.target.labels[b]}


# type chains -----------------------------------------------------------------


def _sublocale_poset(frame, masks, name):
    """The family ``masks`` (indexed by element) ordered by inclusion, as a poset view."""

    class _View:
        pass

    v = _View()
    v.n = len(masks)
    v.labels = frame.labels
    v.name = name
    v.leq_table = tuple(tuple(_sub(x, y) for y in masks) for x in masks)
    return v


def law_type_I(f):
    """Galois on c L x c M equals meet preservation; Cor: f^-1[c(b)] = c(f*(b))."""
    L, M = f.source, f.target
    c = classify_map(f)
    legs = _legs(f, "I")
    adj = legs.first_failure()
    vals = {"adjoint_pair": adj is None, "meet_preserving": c.meet_preserving}
    checked = L.n * M.n
    if vals["adjoint_pair"] != vals["meet_preserving"]:
        return LawResult("type-I", "fail", {"values": vals, "pair": adj}, checked, values=vals)
    if c.meet_preserving:
        h = f.adjoint_values()
        ok, w, n = _scan(
            range(M.n),
            lambda b: None
            if f.preimage_mask(M.closed_masks[b]) == L.closed_masks[h[b]]
            else {"b": M.labels[b], "check": "preimage of c(b) is c(f*(b))"},
        )
        checked += n
        if not ok:
            return LawResult("type-I", "fail", w, checked, values=vals)
    return LawResult("type-I", "pass", None, checked, values=vals)


def law_closed_galois_forms(f):
    """The equivalent forms of the type I Galois condition, eight when f is monotone."""
    L, M = f.source, f.target
    legs = _legs(f, "I")
    pre = [f.preimage_mask(M.closed_masks[b]) for b in range(M.n)]
    clpre = legs.backward
    Lc, Mc = L.closed_masks, M.closed_masks
    img_c = [f.image_mask(Lc[a]) for a in range(L.n)]
    v = f.values
    # (i) through the generic checker on the two inclusion-ordered families
    cL = _sublocale_poset(L, Lc, "cL")
    cM = _sublocale_poset(M, Mc, "cM")
    fwd = [M.closed_of(m) for m in legs.forward]
    bwd = [L.closed_of(m) for m in clpre]
    g = check_galois(fwd, bwd, cL, cM)
    conds = {"i": (g.is_adjunction, g.failure_witness and {"a": g.failure_witness[0], "b": g.failure_witness[1]})}
    tests = {
        "ii": lambda a, b: _sub(legs.forward[a], Mc[b]) == _sub(Lc[a], clpre[b]),
        "iii": lambda a, b: _sub(img_c[a], Mc[b]) == _sub(Lc[a], clpre[b]),
        "iv": lambda a, b: _sub(Lc[a], pre[b]) == _sub(Lc[a], clpre[b]),
    }
    if classify_map(f).monotone:
        tests.update(
            {
                "v": lambda a, b: M.leq(b, v[a]) == _sub(Lc[a], clpre[b]),
                "vi": lambda a, b: M.leq(b, v[a]) == bool(clpre[b] >> a & 1),
                "vii": lambda a, b: bool(pre[b] >> a & 1) == bool(clpre[b] >> a & 1),
                "viii": lambda a, b: not (clpre[b] >> a & 1) or bool(pre[b] >> a & 1),
            }
        )
    checked = g.pairs_checked
    for k, t in tests.items():
        ok, w, n = _all_ab(f, lambda a, b, t=t: None if t(a, b) else _ab_w(f, a, b))
        conds[k] = (ok, w)
        checked += n
    return _equivalent("closed-galois-forms", conds, checked)


def law_localic_closed_preimage(f):
    """Localic iff type I adjoint, cl f^-1[O] = O, and (cl f^-1[c(b)])^c inside f^-1[o(b)]."""
    L, M = f.source, f.target
    lat = enumerate_sublocales(L)
    legs = _legs(f, "I")
    c1 = (legs.first_failure() is None, legs.first_failure())
    top_pre = L.closed_masks[L.meet_of(f.preimage_mask(1 << M.top))]
    c2 = (top_pre == 1 << L.top, None if top_pre == 1 << L.top else {"cl_preimage_of_O": L.format_set(top_pre)})

    def t3(b):
        comp = lat.complement_mask(legs.backward[b])
        return None if _sub(comp, f.preimage_mask(M.open_masks[b])) else {"b": M.labels[b]}

    ok3, w3, n = _scan(range(M.n), t3)
    combined = c1[0] and c2[0] and ok3
    vals = {"localic": classify_map(f).localic, "conditions": combined}
    if vals["localic"] == combined:
        return LawResult("localic-closed-preimage", "pass", None, L.n * M.n + 1 + n, values=vals)
    return LawResult(
        "localic-closed-preimage", "fail", {"values": vals, "1": c1[1], "2": c2[1], "3": w3}, L.n * M.n + 1 + n, values=vals
    )


def law_localic_interior_test(f):
    """The interior test for being localic agrees with the L1/L2 definition."""
    v = localic_via_interior(f)
    loc = classify_map(f).localic
    vals = {"localic": loc, "interior_test": v.ok}
    if v.ok == loc:
        return LawResult("localic-interior-test", "pass", None, f.target.n, values=vals)
    return LawResult("localic-interior-test", "fail", {"values": vals, "interior": v.witness}, f.target.n, values=vals)


def _int_pre_open(f):
    L, M = f.source, f.target
    return [L.open_masks[interior_index(L, f.preimage_mask(M.open_masks[b]))] for b in range(M.n)]


def law_open_preimage_void(f):
    """For meet-preserving f: f^-1[O] = O iff f^-1[c(b)] is inside (int f^-1[o(b)])^c."""
    if not classify_map(f).meet_preserving:
        return _skip("open-preimage-void", "needs a meet-preserving map")
    L, M = f.source, f.target
    lat = enumerate_sublocales(L)
    ipo = _int_pre_open(f)
    lhs = f.preimage_mask(1 << M.top) == 1 << L.top
    ok, w, n = _scan(
        range(M.n),
        lambda b: None
        if _sub(f.preimage_mask(M.closed_masks[b]), lat.complement_mask(ipo[b]))
        else {"b": M.labels[b]},
    )
    return _equivalent("open-preimage-void", {"preimage_of_O": (lhs, None), "containment": (ok, w)}, n + 1)


def law_interior_preimage_void(f):
    """For meet-preserving f: int f^-1[O] = O iff int f^-1[c(b)] is inside (int f^-1[o(b)])^c."""
    if not classify_map(f).meet_preserving:
        return _skip("interior-preimage-void", "needs a meet-preserving map")
    L, M = f.source, f.target
    lat = enumerate_sublocales(L)
    ipo = _int_pre_open(f)
    lhs = L.open_masks[interior_index(L, f.preimage_mask(1 << M.top))] == 1 << L.top
    ok, w, n = _scan(
        range(M.n),
        lambda b: None
        if _sub(
            L.open_masks[interior_index(L, f.preimage_mask(M.closed_masks[b]))],
            lat.complement_mask(ipo[b]),
        )
        else {"b": M.labels[b]},
    )
    return _equivalent("interior-preimage-void", {"int_preimage_of_O": (lhs, None), "containment": (ok, w)}, n + 1)


def law_type(f, type_id):
    """Adjoint pair verdict equals the characterized property, within the type's precondition."""
    t = _norm_type(type_id)
    c = classify_map(f)
    if t == "II" and not c.monotone:
        return _skip("type-II", "needs an order-preserving map")
    if t in ("III", "IV") and not c.meet_preserving:
        return _skip(f"type-{t}", "needs a meet-preserving map")
    if t == "I":
        return law_type_I(f)
    rep = adjunction_type(f, t)
    n = f.source.n * f.target.n
    vals = {"adjoint_pair": rep.is_adjoint_pair, _PREDICATES[t][0]: rep.theorem_predicate}
    if rep.lemma_iv is not None:
        vals["lemma_iv"] = rep.lemma_iv
    if rep.agreement:
        return LawResult(f"type-{t}", "pass", None, n, values=vals)
    return LawResult(f"type-{t}", "fail", {"values": vals, "pair": rep.witness}, n, values=vals)


def law_localic_plain_map(f):
    """Plain map: localic iff monotone and the type II pair is adjoint."""
    c = classify_map(f)
    rhs = c.monotone and _is_adjoint(f, "II")
    return _equivalent("localic-plain-map", {"monotone_and_II": (rhs, None)}, f.source.n * f.target.n, ("localic", c.localic))


def law_open_galois_forms(f):
    """The four equivalent forms of the type III Galois condition for meet-preserving f."""
    if not classify_map(f).meet_preserving:
        return _skip("open-galois-forms", "needs a meet-preserving map")
    L, M = f.source, f.target
    legs = _legs(f, "III")
    Lo, Mo = L.open_masks, M.open_masks
    img_o = [f.image_mask(Lo[a]) for a in range(L.n)]
    pre_o = [f.preimage_mask(Mo[b]) for b in range(M.n)]
    oL = _sublocale_poset(L, Lo, "oL")
    oM = _sublocale_poset(M, Mo, "oM")
    g = check_galois([M.open_of(m) for m in legs.forward], [L.open_of(m) for m in legs.backward], oL, oM)
    conds = {"i": (g.is_adjunction, g.failure_witness and {"a": g.failure_witness[0], "b": g.failure_witness[1]})}
    tests = {
        "ii": lambda a, b: _sub(legs.forward[a], Mo[b]) == _sub(Lo[a], legs.backward[b]),
        "iii": lambda a, b: _sub(legs.forward[a], Mo[b]) == _sub(Lo[a], pre_o[b]),
        "iv": lambda a, b: _sub(legs.forward[a], Mo[b]) == _sub(img_o[a], Mo[b]),
    }
    checked = g.pairs_checked
    for k, t in tests.items():
        ok, w, n = _all_ab(f, lambda a, b, t=t: None if t(a, b) else _ab_w(f, a, b))
        conds[k] = (ok, w)
        checked += n
    return _equivalent("open-galois-forms", conds, checked)


def law_triple_open(f):
    """Order-preserving f: open localic iff types III and II are both adjoint."""
    c = classify_map(f)
    if not c.monotone:
        return _skip("triple-open", "needs an order-preserving map")
    rhs = _is_adjoint(f, "III") and _is_adjoint(f, "II")
    return _equivalent(
        "triple-open", {"III_and_II": (rhs, None)}, 2 * f.source.n * f.target.n, ("open_localic", c.open and c.localic)
    )


def law_triple_closed(f):
    """Plain f: open localic iff types I and IV are both adjoint."""
    c = classify_map(f)
    rhs = _is_adjoint(f, "I") and _is_adjoint(f, "IV")
    return _equivalent(
        "triple-closed", {"I_and_IV": (rhs, None)}, 2 * f.source.n * f.target.n, ("open_localic", c.open and c.localic)
    )


# preimage commutativity --------------------------------------------------------


def _int_open(frame, mask):
    return frame.open_masks[interior_index(frame, mask)]


def _cl(frame, mask):
    return frame.closed_masks[frame.meet_of(mask)]


def _fmt(frame, **masks):
    return {k: frame.format_set(m) for k, m in masks.items()}


def _law_preimage_interior(f, Ts):
    L, M = f.source, f.target

    def t(T):
        lhs = localic_preimage_mask(f, _int_open(M, T))
        rhs = _int_open(L, localic_preimage_mask(f, T))
        return None if _sub(lhs, rhs) else {"T": M.format_set(T), **_fmt(L, lhs=lhs, rhs=rhs)}

    return _scan(Ts, t)


def _law_preimage_closure(f, Ts):
    L, M = f.source, f.target

    def t(T):
        lhs = _cl(L, localic_preimage_mask(f, T))
        rhs = localic_preimage_mask(f, _cl(M, T))
        return None if _sub(lhs, rhs) else {"T": M.format_set(T), **_fmt(L, lhs=lhs, rhs=rhs)}

    return _scan(Ts, t)


def _from_scan(law, scan):
    ok, w, n = scan
    return LawResult(law, "pass" if ok else "fail", w, n)


def law_preimage_containments(f):
    """Both containments, for every sublocale T of the target (localic f)."""
    if not classify_map(f).localic:
        return [_skip("preimage-interior", "needs a localic map"), _skip("preimage-closure", "needs a localic map")]
    Ts = enumerate_sublocales(f.target).masks
    return [_from_scan("preimage-interior", _law_preimage_interior(f, Ts)), _from_scan("preimage-closure", _law_preimage_closure(f, Ts))]


def law_open_interior_preimage(f):
    """Meet-preserving f is open iff int f_{-1}[T] is inside f_{-1}[int T] for every meet-subset T."""
    c = classify_map(f)
    if not c.meet_preserving:
        return _skip("open-interior-preimage", "needs a meet-preserving map")
    L, M = f.source, f.target

    def t(T):
        lhs = _int_open(L, localic_preimage_mask(f, T))
        rhs = localic_preimage_mask(f, _int_open(M, T))
        return None if _sub(lhs, rhs) else {"T": M.format_set(T), **_fmt(L, lhs=lhs, rhs=rhs)}

    ok, w, n = _scan(enumerate_meet_subsets(M), t)
    return _equivalent("open-interior-preimage", {"interior_commutes": (ok, w)}, n, ("open", c.open))


def law_interior_commutes(f):
    """Localic f: (a) open iff (b) interior commutes with f_{-1}; (a) implies (c) closure commutes."""
    c = classify_map(f)
    if not c.localic:
        return _skip("interior-commutes", "needs a localic map")
    L, M = f.source, f.target
    Ts = enumerate_sublocales(M).masks

    def tb(T):
        lhs = _int_open(L, localic_preimage_mask(f, T))
        rhs = localic_preimage_mask(f, _int_open(M, T))
        return None if lhs == rhs else {"T": M.format_set(T), **_fmt(L, int_of_preimage=lhs, preimage_of_int=rhs)}

    def tc(T):
        lhs = _cl(L, localic_preimage_mask(f, T))
        rhs = localic_preimage_mask(f, _cl(M, T))
        return None if lhs == rhs else {"T": M.format_set(T), **_fmt(L, cl_of_preimage=lhs, preimage_of_cl=rhs)}

    b_ok, b_w, nb = _scan(Ts, tb)
    c_ok, c_w, nc = _scan(Ts, tc)
    vals = {"a": c.open, "b": b_ok, "c": c_ok}
    ok = (c.open == b_ok) and (not c.open or c_ok)
    res = LawResult("interior-commutes", "pass" if ok else "fail", None, nb + nc, values=vals)
    res.values["b_witness"] = b_w
    res.values["c_witness"] = c_w
    if not ok:
        res.witness = {"values": vals, "b": b_w, "c": c_w}
    return res


def law_interior_preimages_agree(f):
    """Meet-preserving f: int f^-1[T] = int f_{-1}[T] for every meet-subset T."""
    if not classify_map(f).meet_preserving:
        return _skip("interior-preimages-agree", "needs a meet-preserving map")
    L, M = f.source, f.target

    def t(T):
        lhs = _int_open(L, f.preimage_mask(T))
        rhs = _int_open(L, localic_preimage_mask(f, T))
        return None if lhs == rhs else {"T": M.format_set(T), **_fmt(L, lhs=lhs, rhs=rhs)}

    return _from_scan("interior-preimages-agree", _scan(enumerate_meet_subsets(M), t))


def law_interior_preimage_complement(f):
    """Plain f: open localic iff (int f^-1[T])^c = f^-1[(int T)^c] for all sublocales T."""
    c = classify_map(f)
    L, M = f.source, f.target
    latL, latM = enumerate_sublocales(L), enumerate_sublocales(M)

    def t(T):
        lhs = latL.complement_mask(_int_open(L, f.preimage_mask(T)))
        rhs = f.preimage_mask(latM.complement_mask(_int_open(M, T)))
        return None if lhs == rhs else {"T": M.format_set(T), **_fmt(L, lhs=lhs, rhs=rhs)}

    ok, w, n = _scan(latM.masks, t)
    return _equivalent("interior-preimage-complement", {"complement_identity": (ok, w)}, n, ("open_localic", c.open and c.localic))


def law_hereditary_conditions(f):
    """Localic f: the three sublocale conditions coincide with the Johnstone identity."""
    if not classify_map(f).localic:
        return _skip("hereditary-conditions", "needs a localic map")
    rep = skeletal_hierarchy(f)
    conds = {k: (v, rep.witnesses.get(f"hereditary_conditions_{k}")) for k, v in rep.hereditary_conditions.items()}
    n = len(enumerate_sublocales(f.target))
    return _equivalent(
        "hereditary-conditions", conds, n, ("hereditarily_skeletal", rep.hereditarily_skeletal)
    )


def law_join_identity(f):
    """Localic f: open iff join{f*(b) : o(b) in T} = join{a : f[o(a)] in T} for all sublocales T."""
    c = classify_map(f)
    if not c.localic:
        return _skip("join-identity", "needs a localic map")
    L, M = f.source, f.target
    h = f.adjoint_values()
    img_o = [f.image_mask(L.open_masks[a]) for a in range(L.n)]

    def t(T):
        lhs = L.join_of(reduce(or_, (1 << h[b] for b in range(M.n) if _sub(M.open_masks[b], T)), 0))
        rhs = L.join_of(reduce(or_, (1 << a for a in range(L.n) if _sub(img_o[a], T)), 0))
        return None if lhs == rhs else {"T": M.format_set(T), "lhs": L.labels[lhs], "rhs": L.labels[rhs]}

    ok, w, n = _scan(enumerate_sublocales(M).masks, t)
    return _equivalent("join-identity", {"identity": (ok, w)}, n, ("open", c.open))


# image commutativity ---------------------------------------------------------


def _subset_meets(f):
    """Per subset X of the source: (meet X, meet f[X]) by a low-bit recurrence."""
    L, M, v = f.source, f.target, f.values
    size = 1 << L.n
    lm = [L.top] * size
    fm = [M.top] * size
    lt, mt = L.meet_table, M.meet_table
    for X in range(1, size):
        low = X & -X
        i = low.bit_length() - 1
        lm[X] = lt[lm[X ^ low]][i]
        fm[X] = mt[fm[X ^ low]][v[i]]
    return lm, fm


def _subset_scan(f, test):
    lm, fm = _subset_meets(f)
    L = f.source
    return _scan(
        range(1 << L.n),
        lambda X: None if test(lm[X], fm[X]) else {"X": L.format_set(X)},
    )


def law_closure_image_subsets(f, cap=SUBSET_LAW_CAP):
    """Plain f: f[cl X] inside cl f[X] for every subset X iff f preserves meets."""
    L, M = f.source, f.target
    if L.n > cap:
        return _skip("closure-image-subsets", f"source has {L.n} elements; subset laws are capped at {cap}")
    img_c = [f.image_mask(L.closed_masks[a]) for a in range(L.n)]
    scan = _subset_scan(f, lambda a, b: _sub(img_c[a], M.closed_masks[b]))
    return _equivalent("closure-image-subsets", {"image_of_closure": scan[:2]}, scan[2], ("meet_preserving", classify_map(f).meet_preserving))


def law_closure_image_sublocales(f):
    """Monotone f: f[cl S] inside cl f[S] for all sublocales S iff f(meet S) = meet f[S]."""
    c = classify_map(f)
    if not c.monotone:
        return _skip("closure-image-sublocales", "needs an order-preserving map")
    L, M = f.source, f.target
    Ss = enumerate_sublocales(L).masks
    lhs = _scan(
        Ss, lambda S: None if _sub(f.image_mask(_cl(L, S)), _cl(M, f.image_mask(S))) else {"S": L.format_set(S)}
    )
    rhs = _scan(
        Ss,
        lambda S: None if f(L.meet_of(S)) == M.meet_of(f.image_mask(S)) else {"S": L.format_set(S)},
    )
    return _equivalent("closure-image-sublocales", {"containment": lhs[:2], "meets_of_sublocales": rhs[:2]}, lhs[2] + rhs[2])


def law_closed_image_closure(f, cap=SUBSET_LAW_CAP):
    """Plain f: cl f[S] inside f[cl S] over sublocales, over subsets, and closedness coincide."""
    L, M = f.source, f.target
    if L.n > cap:
        return _skip("closed-image-closure", f"source has {L.n} elements; subset laws are capped at {cap}")
    c = classify_map(f)
    img_c = [f.image_mask(L.closed_masks[a]) for a in range(L.n)]
    i = _scan(
        enumerate_sublocales(L).masks,
        lambda S: None if _sub(_cl(M, f.image_mask(S)), img_c[L.meet_of(S)]) else {"S": L.format_set(S)},
    )
    ii = _subset_scan(f, lambda a, b: _sub(M.closed_masks[b], img_c[a]))
    return _equivalent("closed-image-closure", {"i": i[:2], "ii": ii[:2]}, i[2] + ii[2], ("iii", c.closed))


def law_closure_image_equality(f, cap=SUBSET_LAW_CAP):
    """Plain f: f[cl X] = cl f[X] for every subset X iff f is closed and preserves meets."""
    L, M = f.source, f.target
    if L.n > cap:
        return _skip("closure-image-equality", f"source has {L.n} elements; subset laws are capped at {cap}")
    c = classify_map(f)
    img_c = [f.image_mask(L.closed_masks[a]) for a in range(L.n)]
    scan = _subset_scan(f, lambda a, b: img_c[a] == M.closed_masks[b])
    return _equivalent("closure-image-equality", {"equality": scan[:2]}, scan[2], ("closed_and_meet_preserving", c.closed and c.meet_preserving))


def law_closed_image_equality(f, cap=SUBSET_LAW_CAP):
    """Meet-preserving f: cl f[S] = f[cl S] over sublocales, over subsets, and closedness coincide."""
    c = classify_map(f)
    if not c.meet_preserving:
        return _skip("closed-image-equality", "needs a meet-preserving map")
    L, M = f.source, f.target
    if L.n > cap:
        return _skip("closed-image-equality", f"source has {L.n} elements; subset laws are capped at {cap}")
    img_c = [f.image_mask(L.closed_masks[a]) for a in range(L.n)]
    i = _scan(
        enumerate_sublocales(L).masks,
        lambda S: None if _cl(M, f.image_mask(S)) == img_c[L.meet_of(S)] else {"S": L.format_set(S)},
    )
    ii = _subset_scan(f, lambda a, b: M.closed_masks[b] == img_c[a])
    return _equivalent("closed-image-equality", {"i": i[:2], "ii": ii[:2]}, i[2] + ii[2], ("iii", c.closed))


def law_image_interior(f):
    """Meet-preserving f is open iff f[int S] inside int f[S] for every sublocale S."""
    c = classify_map(f)
    if not c.meet_preserving:
        return _skip("image-interior", "needs a meet-preserving map")
    L, M = f.source, f.target

    def t(S):
        lhs = f.image_mask(_int_open(L, S))
        rhs = _int_open(M, f.image_mask(S))
        return None if _sub(lhs, rhs) else {"S": L.format_set(S)}

    scan = _scan(enumerate_sublocales(L).masks, t)
    return _equivalent("image-interior", {"containment": scan[:2]}, scan[2], ("open", c.open))


def law_closed_conditions(f):
    """Meet-preserving f: the four closed-map conditions coincide with closedness."""
    c = classify_map(f)
    if not c.meet_preserving:
        return _skip("closed-conditions", "needs a meet-preserving map")
    conds = {k: (v, None) for k, v in closed_conditions(f).items()}
    L, M = f.source, f.target
    return _equivalent("closed-conditions", conds, L.n * M.n * (2 + 2 * M.n), ("closed", c.closed))


def image_laws(f, cap=SUBSET_LAW_CAP):
    """Every image/closure/interior law whose precondition the map meets."""
    return [
        law_closure_image_subsets(f, cap),
        law_closure_image_sublocales(f),
        law_closed_image_closure(f, cap),
        law_closure_image_equality(f, cap),
        law_closed_image_equality(f, cap),
        law_image_interior(f),
        law_closed_conditions(f),
    ]


@dataclass
class CommutativityReport:
    laws: list

    def __getitem__(self, law):
        for r in self.laws:
            if r.law == law:
                return r
        raise KeyError(law)

    @property
    def ok(self):
        return not any(r.failed for r in self.laws)

    def failures(self):
        return [r for r in self.laws if r.failed]

    def to_json(self):
        return [r.to_json() for r in self.laws]


def commutativity_report(f, cap=SUBSET_LAW_CAP):
    """Closure/interior against localic preimages and images, law by law."""
    require_meet_preserving(f)
    laws = [
        *law_preimage_containments(f),
        law_open_interior_preimage(f),
        law_interior_commutes(f),
        law_interior_preimages_agree(f),
        law_interior_preimage_complement(f),
        law_hereditary_conditions(f),
        law_join_identity(f),
        *image_laws(f, cap),
    ]
    return CommutativityReport(laws)


# dissolution -----------------------------------------------------------------


@dataclass
class DissolutionReport:
    naturality: bool
    inequality: bool
    equality: bool
    open_inequality: bool | None
    hereditarily_skeletal: bool
    witnesses: dict = field(default_factory=dict)
    instances_checked: int = 0

    @property
    def equality_matches(self):
        return self.equality == self.hereditarily_skeletal

    @property
    def ok(self):
        return self.naturality and self.inequality and self.equality_matches and self.open_inequality is not False


def dissolution_report(f):
    """The square f(meet S) = meet f[S] over S(L), and meet f_{-1}[T] against f*(meet T) over S(M)."""
    require_localic(f)
    L, M = f.source, f.target
    SL, SM = enumerate_sublocales(L), enumerate_sublocales(M)
    h = f.adjoint_values()
    w = {}
    nat = True
    for S in SL.masks:
        if f(L.meet_of(S)) != M.meet_of(f.image_mask(S)):
            nat = False
            w["naturality"] = {"S": L.format_set(S)}
            break
    ineq = eq = True
    is_open = classify_map(f).open
    shriek, exists = shriek_candidate(f)
    open_ineq = True if is_open and exists else None
    for T in SM.masks:
        g_pre = L.meet_of(localic_preimage_mask(f, T))
        rhs = h[M.meet_of(T)]
        if ineq and not L.leq(rhs, g_pre):
            ineq = False
            w["inequality"] = {"T": M.format_set(T)}
        if eq and g_pre != rhs:
            eq = False
            w["equality"] = {"T": M.format_set(T), "meet_of_preimage": L.labels[g_pre], "adjoint_of_meet": L.labels[rhs]}
        if open_ineq and not M.leq(shriek[g_pre], M.meet_of(T)):
            open_ineq = False
            w["open_inequality"] = {"T": M.format_set(T)}
    hs = skeletal_hierarchy(f).hereditarily_skeletal
    return DissolutionReport(nat, ineq, eq, open_ineq, hs, w, len(SL) + len(SM))
