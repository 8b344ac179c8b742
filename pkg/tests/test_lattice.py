import pytest
from hypothesis import given, settings, strategies as st

import oracles
from locale_lab import fixtures as fx
from locale_lab.errors import (
    CycleDetected,
    DuplicateLabel,
    FrameViolation,
    MissingJoin,
    NotATopology,
    UnknownElement,
)
from locale_lab.lattice import (
    FiniteSpace,
    Poset,
    downset_frame,
    frame_check,
    frame_from_topology,
    heyting_arrow,
    lattice_from_order,
)


def test_chain_meet_is_min_join_is_max():
    L = lattice_from_order(["0", "a", "1"], [("0", "a"), ("a", "1")])
    for x in range(3):
        for y in range(3):
            assert L.meet_table[x][y] == min(x, y)
            assert L.join_table[x][y] == max(x, y)


def test_diamond_has_meet_zero_and_join_one():
    L = lattice_from_order(["0", "p", "q", "1"], [("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")])
    p, q = L.poset.index("p"), L.poset.index("q")
    assert L.poset.labels[L.meet_table[p][q]] == "0"
    assert L.poset.labels[L.join_table[p][q]] == "1"


def test_antichain_without_bounds_is_rejected():
    with pytest.raises(MissingJoin):
        lattice_from_order(["x", "y"], [])


def test_order_input_errors():
    with pytest.raises(DuplicateLabel):
        lattice_from_order(["a", "a"], [])
    with pytest.raises(UnknownElement):
        lattice_from_order(["0", "1"], [("0", "z")])
    with pytest.raises(CycleDetected):
        lattice_from_order(["0", "a", "1"], [("0", "a"), ("a", "0"), ("a", "1")])


def test_leq_mode_matches_covers_mode():
    a = lattice_from_order(["0", "a", "1"], [("0", "a"), ("a", "1")])
    b = lattice_from_order(["0", "a", "1"], [("0", "a"), ("a", "1"), ("0", "1")], mode="leq")
    assert a.poset.leq_table == b.poset.leq_table


def test_b2_is_a_frame_and_m3_is_not():
    frame_check(fx.B2().lattice)
    with pytest.raises(FrameViolation) as e:
        frame_check(fx.M3_lattice())
    a, b, c = e.value.witness
    labels = fx.M3_lattice().poset.labels
    assert len({a, b, c}) == 3
    assert {labels[x] for x in (a, b, c)} <= {"p", "q", "r"}


def test_one_element_frame_is_accepted():
    fr = fx.C1()
    assert fr.n == 1 and fr.top == fr.bottom


def test_c3_arrows(C3):
    assert heyting_arrow(C3, "1", "a") == C3.index("a")
    assert heyting_arrow(C3, "a", "a") == C3.index("1")
    assert heyting_arrow(C3, "a", "0") == C3.index("0")


def _shape(fr):
    """Order table up to relabeling, as a canonical tuple."""
    from itertools import permutations

    n = fr.n
    return min(tuple(fr.leq_table[p[i]][p[j]] for i in range(n) for j in range(n)) for p in permutations(range(n)))


def test_topology_frames():
    sier = frame_from_topology(FiniteSpace(["x", "y"], [[], ["x"], ["x", "y"]]))
    disc = frame_from_topology(FiniteSpace(["x", "y"], [[], ["x"], ["y"], ["x", "y"]]))
    indisc = frame_from_topology(FiniteSpace(["x", "y"], [[], ["x", "y"]]))
    assert _shape(sier) == _shape(fx.C3())
    assert _shape(disc) == _shape(fx.B2())
    assert _shape(indisc) == _shape(fx.C2())


def test_topology_must_be_closed_under_union():
    with pytest.raises(NotATopology):
        FiniteSpace(["x", "y"], [[], ["x"], ["y"]])


def test_downset_frames():
    chain3 = Poset(["a", "b", "c"], [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    anti2 = Poset(["a", "b"], [[1, 0], [0, 1]])
    assert _shape(downset_frame(chain3)) == _shape(fx.C4())
    assert _shape(downset_frame(anti2)) == _shape(fx.B2())
    assert downset_frame(Poset([], [])).n == 1


def test_arrow_table_matches_brute_force_on_fixtures():
    for fr in fx.frames().values():
        for a in range(fr.n):
            for b in range(fr.n):
                assert fr.arrow_table[a][b] == oracles.arrow(fr.leq_table, a, b)


@st.composite
def posets(draw, max_size=4):
    n = draw(st.integers(0, max_size))
    # a random order: i <= j only for i < j, then closed transitively
    rel = [[i == j or (i < j and draw(st.booleans())) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if rel[i][k] and rel[k][j]:
                    rel[i][j] = True
    return Poset([f"p{i}" for i in range(n)], rel)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_downset_frames_satisfy_heyting_rules(p):
    fr = downset_frame(p)
    top, ar, mt = fr.top, fr.arrow_table, fr.meet_table
    for a in range(fr.n):
        assert ar[top][a] == a
        assert fr.leq(a, fr.neg(fr.neg(a)))
        for b in range(fr.n):
            assert (ar[a][b] == top) == fr.leq(a, b)
            assert ar[a][b] == oracles.arrow(fr.leq_table, a, b)
            for c in range(fr.n):
                assert ar[a][ar[b][c]] == ar[mt[a][b]][c] == ar[b][ar[a][c]]


@settings(max_examples=60, deadline=None)
@given(posets())
def test_downset_frame_tables_match_order(p):
    fr = downset_frame(p)
    for a in range(fr.n):
        for b in range(fr.n):
            assert fr.meet_table[a][b] == oracles.glb(fr.leq_table, [a, b])
            assert fr.join_table[a][b] == oracles.lub(fr.leq_table, [a, b])
