"""Vectorized evaluation of map laws over many plain functions at once.

A block of maps L -> M is an int array ``F`` of shape (K, |L|); row k is the
value table of one map. Subsets are bit masks (frames here have at most a few
dozen elements, far below 63 bits).

Closed and open sublocales are compared through their indices:
c(x) <= c(y) iff y <= x, o(x) <= o(y) iff x <= y, and c(x), o(x) are mutual
complements in S(L). The per-map route in ``adjunctions`` compares masks
instead and is the independent side of the cross-check tests.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .sublocales import enumerate_sublocales, interior_index


def _all_masks_table(frame, fn):
    return np.array([fn(frame, mask) for mask in range(1 << frame.n)], dtype=np.int64)


class PairTables:
    """Constant tables for one ordered frame pair."""

    def __init__(self, L, M):
        self.L, self.M = L, M
        self.n, self.m = L.n, M.n
        self.leqL = np.array(L.leq_table, dtype=bool)
        self.leqM = np.array(M.leq_table, dtype=bool)
        self.meetL = np.array(L.meet_table, dtype=np.int64)
        self.meetM = np.array(M.meet_table, dtype=np.int64)
        self.arrowL = np.array(L.arrow_table, dtype=np.int64)
        self.arrowM = np.array(M.arrow_table, dtype=np.int64)
        self.Lc = np.array(L.closed_masks, dtype=np.int64)
        self.Lo = np.array(L.open_masks, dtype=np.int64)
        self.Mc = np.array(M.closed_masks, dtype=np.int64)
        self.Mo = np.array(M.open_masks, dtype=np.int64)
        self.meetL_of = _all_masks_table(L, lambda fr, s: fr.meet_of(s))
        self.meetM_of = _all_masks_table(M, lambda fr, s: fr.meet_of(s))
        self.intL = _all_masks_table(L, interior_index)
        self.intM = _all_masks_table(M, interior_index)
        self.openM = _all_masks_table(M, lambda fr, s: -1 if fr.open_of(s) is None else fr.open_of(s))
        self.closedM = _all_masks_table(M, lambda fr, s: -1 if fr.closed_of(s) is None else fr.closed_of(s))
        self.SL = np.array(enumerate_sublocales(L).masks, dtype=np.int64)
        self.SM = np.array(enumerate_sublocales(M).masks, dtype=np.int64)
        self.shift = np.arange(self.n, dtype=np.int64)
        self.less_pairs = [(x, y) for x in range(self.n) for y in range(self.n) if x != y and L.leq_table[x][y]]


def product_rows(n, m, start, stop):
    """Rows ``start..stop`` of the itertools.product order (element 0 most significant)."""
    idx = np.arange(start, stop, dtype=np.int64)
    F = np.empty((stop - start, n), dtype=np.int64)
    for pos in range(n - 1, -1, -1):
        F[:, pos] = idx % m
        idx //= m
    return F


def _sub(a, b):
    return (a & ~b) == 0


class BatchEval:
    """Lazily computed per-row quantities for one block of maps."""

    def __init__(self, pt, F):
        self.pt = pt
        self.F = np.asarray(F, dtype=np.int64).reshape(-1, pt.n)
        self.K = self.F.shape[0]

    # primitives ---------------------------------------------------------

    @cached_property
    def P(self):
        return np.left_shift(np.int64(1), self.F)

    def img(self, mask):
        cols = [x for x in range(self.pt.n) if mask >> x & 1]
        if not cols:
            return np.zeros(self.K, dtype=np.int64)
        return np.bitwise_or.reduce(self.P[:, cols], axis=1)

    def pre(self, tmask):
        t = np.asarray(tmask, dtype=np.int64)
        if t.ndim == 1:
            t = t[:, None]
        return (((t >> self.F) & 1) << self.pt.shift).sum(axis=1)

    def _true(self):
        return np.ones(self.K, dtype=bool)

    # flags ----------------------------------------------------------------

    @cached_property
    def monotone(self):
        pt, F = self.pt, self.F
        ok = self._true()
        for x, y in pt.less_pairs:
            ok &= pt.leqM[F[:, x], F[:, y]]
        return ok

    @cached_property
    def meet_preserving(self):
        pt, F, L = self.pt, self.F, self.pt.L
        ok = F[:, L.top] == pt.M.top
        for x in range(pt.n):
            for y in range(x + 1, pt.n):
                ok &= F[:, pt.meetL[x, y]] == pt.meetM[F[:, x], F[:, y]]
        return ok

    @cached_property
    def L1(self):
        pt, F = self.pt, self.F
        ok = self._true()
        for a in range(pt.n):
            if a != pt.L.top:
                ok &= F[:, a] != pt.M.top
        return ok

    @cached_property
    def preC(self):
        return np.stack([self.pre(int(self.pt.Mc[b])) for b in range(self.pt.m)], axis=1)

    @cached_property
    def preO(self):
        return np.stack([self.pre(int(self.pt.Mo[b])) for b in range(self.pt.m)], axis=1)

    @cached_property
    def h(self):
        """b -> meet{a : b <= f(a)}; also the index of cl f^-1[c(b)]."""
        return self.pt.meetL_of[self.preC]

    @cached_property
    def L2(self):
        pt, F, h = self.pt, self.F, self.h
        ok = self._true()
        for a in range(pt.m):
            for b in range(pt.n):
                idx = pt.arrowL[h[:, a], b]
                lhs = np.take_along_axis(F, idx[:, None], axis=1)[:, 0]
                ok &= lhs == pt.arrowM[a, F[:, b]]
        return ok

    @cached_property
    def localic(self):
        return self.meet_preserving & self.L1 & self.L2

    @cached_property
    def imgC(self):
        return np.stack([self.img(int(self.pt.Lc[a])) for a in range(self.pt.n)], axis=1)

    @cached_property
    def imgO(self):
        return np.stack([self.img(int(self.pt.Lo[a])) for a in range(self.pt.n)], axis=1)

    @cached_property
    def open(self):
        return (self.pt.openM[self.imgO] >= 0).all(axis=1)

    @cached_property
    def closed(self):
        return (self.pt.closedM[self.imgC] >= 0).all(axis=1)

    @cached_property
    def open_localic(self):
        return self.open & self.localic

    # adjunction legs as indices ---------------------------------------------

    @cached_property
    def kI(self):
        """cl f[c(a)] = c(kI[a])."""
        return self.pt.meetM_of[self.imgC]

    @cached_property
    def iB(self):
        """int f^-1[o(b)] = o(iB[b])."""
        return self.pt.intL[self.preO]

    @cached_property
    def phi(self):
        """int f[o(a)] = o(phi[a])."""
        return self.pt.intM[self.imgO]

    def _all_ab(self, cond):
        ok = self._true()
        for a in range(self.pt.n):
            for b in range(self.pt.m):
                ok &= cond(a, b)
        return ok

    @cached_property
    def adj_I(self):
        pt, kI, h = self.pt, self.kI, self.h
        return self._all_ab(lambda a, b: pt.leqM[b, kI[:, a]] == pt.leqL[h[:, b], a])

    @cached_property
    def adj_II(self):
        pt, kI, iB = self.pt, self.kI, self.iB
        return self._all_ab(lambda a, b: pt.leqL[iB[:, b], a] == pt.leqM[b, kI[:, a]])

    @cached_property
    def adj_III(self):
        pt, phi, iB = self.pt, self.phi, self.iB
        return self._all_ab(lambda a, b: pt.leqM[phi[:, a], b] == pt.leqL[a, iB[:, b]])

    @cached_property
    def adj_IV(self):
        pt, phi, h = self.pt, self.phi, self.h
        return self._all_ab(lambda a, b: pt.leqL[a, h[:, b]] == pt.leqM[phi[:, a], b])

    @cached_property
    def preimage_of_closed_is_principal(self):
        pt = self.pt
        return (self.preC == pt.Lc[self.h]).all(axis=1)

    # subset recurrences -----------------------------------------------------

    @cached_property
    def subset_meets(self):
        """(meet X, meet f[X]) for every subset X of the source: shapes (2^n,), (K, 2^n)."""
        pt, F = self.pt, self.F
        size = 1 << pt.n
        fm = np.empty((self.K, size), dtype=np.int64)
        fm[:, 0] = pt.M.top
        for X in range(1, size):
            low = X & -X
            i = low.bit_length() - 1
            fm[:, X] = pt.meetM[fm[:, X ^ low], F[:, i]]
        return pt.meetL_of, fm


# laws: each returns (domain, holds) boolean rows --------------------------------


def _eq_all(*arrays):
    first = arrays[0]
    ok = np.ones_like(first, dtype=bool)
    for a in arrays[1:]:
        ok &= a == first
    return ok


def law_type_I(ev):
    holds = (ev.adj_I == ev.meet_preserving) & (~ev.meet_preserving | ev.preimage_of_closed_is_principal)
    return ev._true(), holds


def law_closed_galois_forms(ev):
    pt, F, h = ev.pt, ev.F, ev.h
    conds = {
        "i": ev.adj_I,
        "iii": ev._all_ab(lambda a, b: _sub(ev.imgC[:, a], pt.Mc[b]) == pt.leqL[h[:, b], a]),
        "iv": ev._all_ab(lambda a, b: _sub(pt.Lc[a], ev.preC[:, b]) == pt.leqL[h[:, b], a]),
    }
    base = _eq_all(*conds.values())
    mono = {
        "v": ev._all_ab(lambda a, b: pt.leqM[b, F[:, a]] == pt.leqL[h[:, b], a]),
        "vi": ev._all_ab(lambda a, b: pt.leqM[b, F[:, a]] == ((pt.Lc[h[:, b]] >> a) & 1).astype(bool)),
        "vii": ev._all_ab(
            lambda a, b: ((ev.preC[:, b] >> a) & 1).astype(bool) == ((pt.Lc[h[:, b]] >> a) & 1).astype(bool)
        ),
        "viii": ev._all_ab(lambda a, b: ~((pt.Lc[h[:, b]] >> a) & 1).astype(bool) | ((ev.preC[:, b] >> a) & 1).astype(bool)),
    }
    full = base & _eq_all(conds["i"], *mono.values())
    return ev._true(), np.where(ev.monotone, full, base)


def law_localic_closed_preimage(ev):
    pt = ev.pt
    c2 = pt.meetL_of[ev.pre(1 << pt.M.top)] == pt.L.top
    c3 = np.ones(ev.K, dtype=bool)
    for b in range(pt.m):
        c3 &= _sub(pt.Lo[ev.h[:, b]], ev.preO[:, b])
    return ev._true(), ev.localic == (ev.adj_I & c2 & c3)


def law_localic_interior_test(ev):
    pt = ev.pt
    test = (pt.Lc[ev.iB] == ev.preC).all(axis=1)
    return ev._true(), test == ev.localic


def law_localic_plain_map(ev):
    return ev._true(), ev.localic == (ev.monotone & ev.adj_II)


def law_type_II(ev):
    return ev.monotone, ev.adj_II == ev.localic


def law_type_III(ev):
    return ev.meet_preserving, ev.adj_III == ev.open


def law_type_IV(ev):
    return ev.meet_preserving, ev.adj_IV == ev.open_localic


def law_triple_open(ev):
    return ev.monotone, ev.open_localic == (ev.adj_III & ev.adj_II)


def law_triple_closed(ev):
    return ev._true(), ev.open_localic == (ev.adj_I & ev.adj_IV)


def law_closure_image_subsets(ev):
    pt = ev.pt
    aX, fm = ev.subset_meets
    cond = _sub(ev.imgC[:, aX], pt.Mc[fm]).all(axis=1)
    return ev._true(), cond == ev.meet_preserving


def law_closure_image_sublocales(ev):
    pt, F = ev.pt, ev.F
    lhs = np.ones(ev.K, dtype=bool)
    rhs = np.ones(ev.K, dtype=bool)
    for S in pt.SL:
        s_meet = pt.meetL_of[S]
        imgS = ev.img(int(S))
        fmeet = pt.meetM_of[imgS]
        lhs &= _sub(ev.imgC[:, s_meet], pt.Mc[fmeet])
        rhs &= F[:, s_meet] == fmeet
    return ev.monotone, lhs == rhs


def law_closed_image_closure(ev):
    pt = ev.pt
    aX, fm = ev.subset_meets
    i = np.ones(ev.K, dtype=bool)
    for S in pt.SL:
        i &= _sub(pt.Mc[pt.meetM_of[ev.img(int(S))]], ev.imgC[:, pt.meetL_of[S]])
    ii = _sub(pt.Mc[fm], ev.imgC[:, aX]).all(axis=1)
    return ev._true(), (i == ii) & (ii == ev.closed)


def law_closure_image_equality(ev):
    pt = ev.pt
    aX, fm = ev.subset_meets
    eq = (ev.imgC[:, aX] == pt.Mc[fm]).all(axis=1)
    return ev._true(), eq == (ev.closed & ev.meet_preserving)


def law_interior_preimage_complement(ev):
    pt = ev.pt
    ident = np.ones(ev.K, dtype=bool)
    for T in pt.SM:
        lhs = pt.Lc[pt.intL[ev.pre(int(T))]]
        rhs = ev.pre(int(pt.Mc[pt.intM[T]]))
        ident &= lhs == rhs
    return ev._true(), ident == ev.open_localic


BATCH_LAWS = {
    "type-I": law_type_I,
    "closed-galois-forms": law_closed_galois_forms,
    "localic-closed-preimage": law_localic_closed_preimage,
    "localic-interior-test": law_localic_interior_test,
    "localic-plain-map": law_localic_plain_map,
    "type-II": law_type_II,
    "type-III": law_type_III,
    "type-IV": law_type_IV,
    "triple-open": law_triple_open,
    "triple-closed": law_triple_closed,
    "closure-image-subsets": law_closure_image_subsets,
    "closure-image-sublocales": law_closure_image_sublocales,
    "closed-image-closure": law_closed_image_closure,
    "closure-image-equality": law_closure_image_equality,
    "interior-preimage-complement": law_interior_preimage_complement,
}


def tiers(ev):
    """Strongest class of each row: 0 localic, 1 meet-preserving, 2 monotone, 3 other."""
    t = np.full(ev.K, 3, dtype=np.int64)
    t[ev.monotone] = 2
    t[ev.meet_preserving] = 1
    t[ev.localic] = 0
    return t


def chunk_size(n):
    return max(1024, 2_000_000 // (1 << n))
