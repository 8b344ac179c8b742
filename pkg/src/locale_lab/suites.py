"""Frame-level and map-level law checks used by the theorem registry.

Every function returns a list of ``LawResult``. Frame checks recompute what
they can from the order relation alone, so a corrupted meet, join or arrow
table shows up as a failure rather than silently feeding later checks.
"""

from __future__ import annotations

from .adjunctions import LawResult, _equivalent, _scan, _skip, check_galois
from .errors import FrameTooLarge
from .lattice import bits
from .maps import (
    LatticeMap,
    _subset_join_witness,
    _subset_meet_witness,
    classify_map,
    joyal_tierney,
    open_image_meet_witness,
    localic_preimage_mask,
    localic_via_interior,
    skeletal_hierarchy,
)
from .sublocales import (
    booleanization,
    enumerate_meet_subsets,
    enumerate_sublocales,
    interior_index,
    interior_via_supplement,
    is_subfit,
    least_sublocale_mask,
    Sublocale,
)

FAMILY_CAP = 16


def _result(law, scan, **extra):
    ok, w, n = scan
    return LawResult(law, "pass" if ok else "fail", witness=w, instances_checked=n, **extra)


def _pairs(n):
    return ((a, b) for a in range(n) for b in range(n))


def _triples(n):
    return ((a, b, c) for a in range(n) for b in range(n) for c in range(n))


# frame tables ----------------------------------------------------------------


def _greatest(fr, cands):
    """The element of ``cands`` above all others, or None."""
    leq = fr.leq_table
    for c in cands:
        if all(leq[d][c] for d in cands):
            return c
    return None


def _brute_meet(fr, a, b):
    leq = fr.leq_table
    return _greatest(fr, [c for c in range(fr.n) if leq[c][a] and leq[c][b]])


def _brute_join(fr, a, b):
    leq = fr.leq_table
    ups = [c for c in range(fr.n) if leq[a][c] and leq[b][c]]
    for c in ups:
        if all(leq[c][d] for d in ups):
            return c
    return None


def law_frame_tables(fr):
    """meet, join and arrow tables against values recomputed from the order."""
    lab = fr.labels
    meets = {(a, b): _brute_meet(fr, a, b) for a, b in _pairs(fr.n)}
    joins = {(a, b): _brute_join(fr, a, b) for a, b in _pairs(fr.n)}

    def entry(table, recorded, expected, a, b):
        if recorded == expected:
            return None
        return {
            "table": table,
            "a": lab[a],
            "b": lab[b],
            "recorded": lab[recorded] if 0 <= recorded < fr.n else recorded,
            "expected": None if expected is None else lab[expected],
        }

    def arrow_expected(a, b):
        return _greatest(fr, [c for c in range(fr.n) if meets[c, a] is not None and fr.leq_table[meets[c, a]][b]])

    def distributive(abc):
        a, b, c = abc
        j = joins[b, c]
        m1, m2 = meets[a, b], meets[a, c]
        if None in (j, m1, m2) or meets[a, j] != joins[m1, m2]:
            return {"a": lab[a], "b": lab[b], "c": lab[c]}
        return None

    return [
        _result("meet-table", _scan(_pairs(fr.n), lambda ab: entry("meet", fr.meet_table[ab[0]][ab[1]], meets[ab], *ab))),
        _result("join-table", _scan(_pairs(fr.n), lambda ab: entry("join", fr.join_table[ab[0]][ab[1]], joins[ab], *ab))),
        _result(
            "arrow-table",
            _scan(_pairs(fr.n), lambda ab: entry("arrow", fr.arrow_table[ab[0]][ab[1]], arrow_expected(*ab), *ab)),
        ),
        _result("distributivity", _scan(_triples(fr.n), distributive)),
    ]


# Heyting rules ---------------------------------------------------------------


def law_heyting(fr):
    """H1-H4, residuation and a <= a** over all element tuples and families."""
    n, lab = fr.n, fr.labels
    ar, mt, leq, top = fr.arrow_table, fr.meet_table, fr.leq_table, fr.top

    def h1(ab):
        a, b = ab
        if ar[top][a] != a:
            return {"rule": "1 -> a = a", "a": lab[a]}
        if (ar[a][b] == top) != leq[a][b]:
            return {"rule": "a -> b = 1 iff a <= b", "a": lab[a], "b": lab[b]}
        return None

    def h3(abc):
        a, b, c = abc
        x, y, z = ar[a][ar[b][c]], ar[mt[a][b]][c], ar[b][ar[a][c]]
        return None if x == y == z else {"a": lab[a], "b": lab[b], "c": lab[c]}

    def residuation(abc):
        a, b, c = abc
        return None if leq[mt[a][b]][c] == leq[a][ar[b][c]] else {"a": lab[a], "b": lab[b], "c": lab[c]}

    def double_neg(a):
        return None if leq[a][fr.neg(fr.neg(a))] else {"a": lab[a]}

    out = [
        _result("H1", _scan(_pairs(n), h1)),
        _result("H3", _scan(_triples(n), h3)),
        _result("residuation", _scan(_triples(n), residuation)),
        _result("double-negation", _scan(range(n), double_neg)),
    ]
    if n > FAMILY_CAP:
        out.insert(1, _skip("H2", f"families over more than {FAMILY_CAP} elements"))
        out.insert(3, _skip("H4", f"families over more than {FAMILY_CAP} elements"))
        return out

    def fold_meet(vals):
        acc = top
        for v in vals:
            acc = mt[acc][v]
        return acc

    def h2(aB):
        a, B = aB
        if ar[a][fr.meet_of(B)] != fold_meet(ar[a][b] for b in bits(B)):
            return {"a": lab[a], "family": [lab[b] for b in bits(B)]}
        return None

    def h4(Ab):
        A, b = Ab
        if ar[fr.join_of(A)][b] != fold_meet(ar[a][b] for a in bits(A)):
            return {"family": [lab[a] for a in bits(A)], "b": lab[b]}
        return None

    fams = range(1 << n)
    out.insert(1, _result("H2", _scan(((a, B) for a in range(n) for B in fams), h2)))
    out.insert(3, _result("H4", _scan(((A, b) for A in fams for b in range(n)), h4)))
    return out


# sublocales ------------------------------------------------------------------


def _sublocales_or_skip(fr, law):
    try:
        return enumerate_sublocales(fr), None
    except FrameTooLarge as e:
        return None, _skip(law, str(e))


def law_sublocale_structure(fr):
    SL, skipped = _sublocales_or_skip(fr, "sublocale-structure")
    if SL is None:
        return [skipped]
    fmt = fr.format_set
    idx = SL.index

    def open_closed(a):
        o, c = fr.open_masks[a], fr.closed_masks[a]
        if o not in idx or c not in idx:
            return {"a": fr.labels[a], "reason": "o(a) or c(a) is not a sublocale"}
        if SL.complement_mask(c) != o:
            return {"a": fr.labels[a], "reason": "o(a) is not the complement of c(a)"}
        if SL.supplement_mask(o) != c:
            return {"a": fr.labels[a], "reason": "supplement of o(a) is not c(a)"}
        return None

    def closure(X):
        cl = fr.closed_masks[fr.meet_of(X)]
        if X & ~cl:
            return {"X": fmt(X), "reason": "X not inside cl X"}
        for a in range(fr.n):
            if X & ~fr.closed_masks[a] == 0 and cl & ~fr.closed_masks[a]:
                return {"X": fmt(X), "reason": f"c({fr.labels[a]}) contains X but not cl X"}
        return None

    def interior(S):
        o = fr.open_masks[interior_index(fr, S)]
        if o & ~S:
            return {"S": fmt(S), "reason": "int S not inside S"}
        if interior_via_supplement(Sublocale(fr, S)).members != o:
            return {"S": fmt(S), "reason": "int S differs from o(meet of the supplement)"}
        return None

    def difference(RS):
        R, S = RS
        D = SL.difference_mask(R, S)
        if D not in idx or R & ~SL.join_mask(S, D):
            return {"R": fmt(R), "S": fmt(S)}
        return None

    B = booleanization(fr).members

    def boolean_least_dense(T):
        if T >> fr.bottom & 1 and B & ~T:
            return {"T": fmt(T), "reason": "dense sublocale missing part of B(L)"}
        return None

    cof = SL.is_coframe()
    out = [
        _result("open-closed-complements", _scan(range(fr.n), open_closed)),
        LawResult("coframe", "pass" if cof.ok else "fail", witness=cof.witness, instances_checked=len(SL) ** 3),
        _result("closure", _scan(range(1 << fr.n), closure)),
        _result("interior", _scan(SL.masks, interior)),
        _result("difference", _scan(((R, S) for R in SL.masks for S in SL.masks), difference)),
    ]
    dense = B in idx and B >> fr.bottom & 1
    if not dense:
        out.append(LawResult("booleanization", "fail", witness={"B": fmt(B)}, reason="B(L) is not a dense sublocale"))
    else:
        out.append(_result("booleanization", _scan(SL.masks, boolean_least_dense)))
    return out


def law_oracles_frame(fr):
    """Arrow table against brute-force max; least sublocale against intersections."""
    lab, mt, leq = fr.labels, fr.meet_table, fr.leq_table

    def arrow(ab):
        a, b = ab
        best = _greatest(fr, [c for c in range(fr.n) if leq[mt[c][a]][b]])
        if fr.arrow_table[a][b] != best:
            return {"a": lab[a], "b": lab[b]}
        return None

    out = [_result("arrow-brute-force", _scan(_pairs(fr.n), arrow))]
    SL, skipped = _sublocales_or_skip(fr, "least-sublocale")
    if SL is None:
        return out + [skipped]

    def least(X):
        acc = fr.full
        for S in SL.masks:
            if X & ~S == 0:
                acc &= S
        if least_sublocale_mask(fr, X) != acc:
            return {"X": fr.format_set(X), "pruned": fr.format_set(least_sublocale_mask(fr, X)), "enumerated": fr.format_set(acc)}
        return None

    return out + [_result("least-sublocale", _scan(range(1 << fr.n), least))]


# maps ------------------------------------------------------------------------


def law_preimage_oracle(f):
    """localic_preimage pruning against the join of enumerated sublocales inside f^-1[T]."""
    if not classify_map(f).meet_preserving:
        return [_skip("preimage-oracle", "needs a meet-preserving map")]
    L, M = f.source, f.target
    try:
        SL = enumerate_sublocales(L)
        Ts = enumerate_meet_subsets(M)
    except FrameTooLarge as e:
        return [_skip("preimage-oracle", str(e))]

    def check(T):
        raw = f.preimage_mask(T)
        acc = 1 << L.top
        for S in SL.masks:
            if S & ~raw == 0:
                acc = SL.join_mask(acc, S)
        got = localic_preimage_mask(f, T)
        if got != acc:
            return {"T": M.format_set(T), "pruned": L.format_set(got), "enumerated": L.format_set(acc)}
        return None

    return [_result("preimage-oracle", _scan(Ts, check))]


def law_preimage(f):
    """Preimages of closed/open sublocales, O, and the image/preimage adjunction."""
    c = classify_map(f)
    if not c.meet_preserving:
        return [_skip("closed-preimage", "needs a meet-preserving map")]
    L, M = f.source, f.target
    h = f.adjoint_values()

    def closed_pre(b):
        if f.preimage_mask(M.closed_masks[b]) != L.closed_masks[h[b]]:
            return {"b": M.labels[b]}
        return None

    via = localic_via_interior(f)
    out = [
        _result("closed-preimage", _scan(range(M.n), closed_pre)),
        _equivalent("localic-via-interior", {"interior_test": (via.ok, via.witness)}, M.n, ("localic", c.localic)),
    ]
    if not c.localic:
        return out
    try:
        SL, SM = enumerate_sublocales(L), enumerate_sublocales(M)
    except FrameTooLarge as e:
        return out + [_skip("localic-preimage", str(e))]

    def principal(b):
        if localic_preimage_mask(f, M.closed_masks[b]) != L.closed_masks[h[b]]:
            return {"b": M.labels[b], "kind": "closed"}
        if localic_preimage_mask(f, M.open_masks[b]) != L.open_masks[h[b]]:
            return {"b": M.labels[b], "kind": "open"}
        return None

    def adjunction(ST):
        S, T = ST
        img = f.image_mask(S)
        if img not in SM.index:
            return {"S": L.format_set(S), "reason": "f[S] is not a sublocale"}
        if (img & ~T == 0) != (S & ~localic_preimage_mask(f, T) == 0):
            return {"S": L.format_set(S), "T": M.format_set(T)}
        return None

    void_ok = localic_preimage_mask(f, 1 << M.top) == 1 << L.top
    out += [
        _result("localic-preimage-principal", _scan(range(M.n), principal)),
        LawResult("preimage-of-void", "pass" if void_ok else "fail", instances_checked=1),
        _result("image-preimage-adjunction", _scan(((S, T) for S in SL.masks for T in SM.masks), adjunction)),
    ]
    return out


def law_map_cache(f):
    """Declared f*/f_! tables, the two meet-preservation routes, and f* -| f."""
    v = f.check_cache()
    out = [LawResult("declared-tables", "pass" if v.ok else "fail", witness=v.witness, instances_checked=1, reason=v.reason or "")]
    c = classify_map(f)
    out.append(
        _equivalent(
            "meet-routes",
            {"closed_route": (c.meet_preserving_closed_route, c.witnesses.get("meet_preserving_closed_route"))},
            f.target.n,
            ("meet_preserving", c.meet_preserving),
        )
    )
    if c.meet_preserving:
        g = LatticeMap(f.target, f.source, f.adjoint_values(), name=f"{f.name}*")
        gr = check_galois(g, f)
        w = None if gr.is_adjunction else {"x": gr.failure_witness[0], "y": gr.failure_witness[1]}
        out.append(LawResult("adjoint-galois", "pass" if gr.is_adjunction else "fail", witness=w, instances_checked=gr.pairs_checked))
    return out


def law_jt(f):
    r = joyal_tierney(f)
    w = r.witnesses
    conds = {k: (getattr(r, k), w.get(k)) for k in ("heyting_hom", "frobenius", "arrow_identity")}
    L, M = f.source, f.target
    return [_equivalent("joyal-tierney", conds, L.n * M.n, ("open", r.open))]


def law_open_image_meet(f):
    w = open_image_meet_witness(f)
    return [LawResult("open-image-meet", "pass" if w is None else "fail", witness=w, instances_checked=f.source.n * f.target.n)]


def law_adjoint_image_in_preimage(f):
    """For open localic f: f*[T] lies inside f_{-1}[T] for every sublocale T."""
    if not classify_map(f).open:
        return [_skip("adjoint-image-in-preimage", "needs an open map")]
    L, M = f.source, f.target
    try:
        SM = enumerate_sublocales(M)
    except FrameTooLarge as e:
        return [_skip("adjoint-image-in-preimage", str(e))]
    h = f.adjoint_values()

    def check(T):
        img = 0
        for b in bits(T):
            img |= 1 << h[b]
        pre = localic_preimage_mask(f, T)
        if img & ~pre:
            return {"T": M.format_set(T), "f*[T]": L.format_set(img), "preimage": L.format_set(pre)}
        least = least_sublocale_mask(L, img)
        if least & ~pre:
            return {"T": M.format_set(T), "reason": "least sublocale containing f*[T] leaves the preimage"}
        return None

    return [_result("adjoint-image-in-preimage", _scan(SM.masks, check))]


def law_hierarchy(f):
    r = skeletal_hierarchy(f)
    v = r.chain_violation()
    w = None if v is None else {"stronger": v[0], "weaker": v[1], "flags": r.flags(), **r.witnesses}
    return [LawResult("hierarchy-chain", "pass" if v is None else "fail", witness=w, instances_checked=len(r.flags()) - 1, values=r.flags())]


def law_dissolution(f):
    from .adjunctions import dissolution_report

    try:
        r = dissolution_report(f)
    except FrameTooLarge as e:
        return [_skip("dissolution", str(e))]
    vals = {
        "naturality": r.naturality,
        "inequality": r.inequality,
        "equality": r.equality,
        "hereditarily_skeletal": r.hereditarily_skeletal,
        "open_inequality": r.open_inequality,
    }
    w = None if r.ok else {"values": vals, **r.witnesses}
    return [LawResult("dissolution", "pass" if r.ok else "fail", witness=w, instances_checked=r.instances_checked, values=vals)]


def law_subfit_open(f):
    """On a subfit target: open iff f* preserves every meet and every join."""
    M = f.target
    if not is_subfit(M).ok:
        return [_skip("subfit-open", "target is not subfit")]
    L = f.source
    h = f.adjoint_values()
    mw = _subset_meet_witness(M, L, h)
    jw = _subset_join_witness(M, L, h) if mw is None else None
    hom_w = mw or jw
    c = classify_map(f)
    return [
        _equivalent(
            "subfit-open",
            {"complete_hom": (hom_w is None, hom_w)},
            (1 << M.n) * 2,
            ("open", c.open),
        )
    ]

