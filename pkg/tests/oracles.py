"""Brute-force reference computations used to derive expected values.

Nothing here calls into locale_lab's algorithms: every quantity is recomputed
from the order relation by exhaustive search.
"""

from itertools import permutations, product


def glb(leq, xs):
    n = len(leq)
    lower = [c for c in range(n) if all(leq[c][x] for x in xs)]
    for c in lower:
        if all(leq[d][c] for d in lower):
            return c
    return None


def lub(leq, xs):
    n = len(leq)
    upper = [c for c in range(n) if all(leq[x][c] for x in xs)]
    for c in upper:
        if all(leq[c][d] for d in upper):
            return c
    return None


def arrow(leq, a, b):
    """max{c : c ^ a <= b}, by search."""
    n = len(leq)
    cands = [c for c in range(n) if leq[glb(leq, [c, a])][b]]
    best = lub(leq, cands)
    return best if best in cands else None


def subsets(n):
    for mask in range(1 << n):
        yield [i for i in range(n) if mask >> i & 1], mask


def is_sublocale(leq, members):
    """S1: every family's meet inside (the empty family included); S2: x -> s inside."""
    n = len(leq)
    S = set(members)
    for fam_mask in range(1 << len(members)):
        fam = [members[i] for i in range(len(members)) if fam_mask >> i & 1]
        if glb(leq, fam) not in S:
            return False
    return all(arrow(leq, x, s) in S for s in members for x in range(n))


def sublocales(leq):
    return [mask for members, mask in subsets(len(leq)) if is_sublocale(leq, members)]


def booleanization(leq):
    n = len(leq)
    bot = glb(leq, list(range(n)))
    neg = [arrow(leq, a, bot) for a in range(n)]
    return sorted(b for b in range(n) if neg[neg[b]] == b)


def count_posets(n):
    """Isomorphism classes of partial orders on n points, by filtering every relation."""
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    classes = set()
    for bits in product((0, 1), repeat=len(off)):
        rel = [[i == j for j in range(n)] for i in range(n)]
        for (i, j), b in zip(off, bits):
            rel[i][j] = bool(b)
        if any(rel[i][j] and rel[j][i] for i, j in off):
            continue
        if any(rel[i][j] and rel[j][k] and not rel[i][k] for i in range(n) for j in range(n) for k in range(n)):
            continue
        key = min(tuple(rel[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))
        classes.add(key)
    return len(classes)


def map_classes(L_leq, M_leq):
    """Counts of (all, monotone, meet-preserving, localic) functions between two frames.

    Meet preservation is tested over every subset (empty one included); localic
    adds f(a) = 1 => a = 1 and f(h(a) -> b) = a -> f(b) with h the left adjoint
    computed as min{x : a <= f(x)}.
    """
    n, m = len(L_leq), len(M_leq)
    topL, topM = lub(L_leq, range(n)), lub(M_leq, range(m))
    counts = [0, 0, 0, 0]
    fams = [list(s) for s, _ in subsets(n)]
    for f in product(range(m), repeat=n):
        counts[0] += 1
        if not all(M_leq[f[x]][f[y]] for x in range(n) for y in range(n) if L_leq[x][y]):
            continue
        counts[1] += 1
        if any(f[glb(L_leq, s)] != glb(M_leq, [f[x] for x in s]) for s in fams):
            continue
        counts[2] += 1
        if any(f[a] == topM for a in range(n) if a != topL):
            continue
        h = [glb(L_leq, [x for x in range(n) if M_leq[a][f[x]]]) for a in range(m)]
        if all(f[arrow(L_leq, h[a], b)] == arrow(M_leq, a, f[b]) for a in range(m) for b in range(n)):
            counts[3] += 1
    return tuple(counts)
