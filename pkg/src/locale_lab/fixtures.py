"""Small named frames and maps used in docs, tests and mutation runs."""

from .lattice import frame_check, lattice_from_order


def chain(n, labels=None, name=None):
    """The n-element chain C_n."""
    if labels is None:
        labels = ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"] if n > 1 else ["0"]
    pairs = list(zip(labels, labels[1:]))
    return frame_check(lattice_from_order(labels, pairs), name=name or f"C{n}")


def C1():
    return chain(1)


def C2():
    return chain(2)


def C3():
    return chain(3)


def C4():
    return chain(4)


def B2():
    lat = lattice_from_order(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    return frame_check(lat, name="B2")


def M5():
    """{0, p, q, p v q, 1} with p ^ q = 0: B2 with a new top."""
    lat = lattice_from_order(
        ["0", "p", "q", "pq", "1"],
        [("0", "p"), ("0", "q"), ("p", "pq"), ("q", "pq"), ("pq", "1")],
    )
    return frame_check(lat, name="M5")


def M3_lattice():
    """The diamond with three atoms: a lattice that is not a frame."""
    return lattice_from_order(
        ["0", "p", "q", "r", "1"],
        [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")],
    )


def frames():
    return {"C1": C1(), "C2": C2(), "C3": C3(), "C4": C4(), "B2": B2(), "M5": M5()}


def f_surj():
    """C4 -> C3 sending 0->0, a->c, b->c, 1->1 (open, closed, localic)."""
    from .maps import LatticeMap

    src = C4()
    tgt = chain(3, labels=["0", "c", "1"], name="C3")
    return LatticeMap.from_assignments(src, tgt, {"0": "0", "a": "c", "b": "c", "1": "1"}, name="f_surj")


def j_closed():
    """The inclusion of the closed sublocale c(a) = {a, 1} into C3."""
    from .maps import LatticeMap

    src = chain(2, labels=["a", "1"], name="c(a)")
    return LatticeMap.from_assignments(src, C3(), {"a": "a", "1": "1"}, name="j_closed")


def g_top():
    """Constant 1 on C3: meet-preserving but not localic."""
    from .maps import LatticeMap

    L = C3()
    return LatticeMap.from_assignments(L, L, {"0": "1", "a": "1", "1": "1"}, name="g_top")


def h_b2_c3():
    """B2 -> C3 with p, q -> a: monotone, not meet-preserving."""
    from .maps import LatticeMap

    return LatticeMap.from_assignments(B2(), C3(), {"0": "0", "p": "a", "q": "a", "1": "1"}, name="h")


def identity(frame):
    from .maps import LatticeMap

    return LatticeMap(frame, frame, tuple(range(frame.n)), name=f"id_{frame.name}")


def maps():
    return {
        "f_surj": f_surj(),
        "j_closed": j_closed(),
        "g_top": g_top(),
        "h": h_b2_c3(),
        "id_C3": identity(C3()),
    }
