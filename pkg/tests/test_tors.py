import pytest

from binuc.binuclear import check_bez, is_binuclear_lattice
from binuc.errors import NotATorsionClass, NotBinuclear, TooLarge
from binuc.lattice import Interval, is_lattice
from binuc.semidistrib import check_semidistributivity
from binuc.torsion import (
    bricks_and_kappa,
    cw_partition,
    enumerate_tors,
    gen_linear_An,
    heart,
    is_torsion_class,
    left_perp,
    res_interval,
    right_perp,
    star,
    tors_closure,
    tors_to_json,
)
from conftest import tors_of
from oracles import brute_force_tors


def ids(spec, mask):
    return set(spec.ids(mask))


@pytest.mark.parametrize(
    "n,orientation", [(1, None), (2, None), (3, None), (4, None), (5, None), (3, "><"), (4, "<><")]
)
def test_enumeration_matches_brute_force(n, orientation):
    T = tors_of(n, orientation)
    expected = {T.spec.mask(sorted(S)) for S in brute_force_tors(T.spec)}
    assert set(T.class_of) == expected
    assert len(T.class_of) == len(expected)


def test_catalan_counts():
    assert [len(tors_of(n).lattice) for n in range(1, 6)] == [2, 5, 14, 42, 132]


def test_a2_shape(A2):
    L = A2.lattice
    assert L.labels == ("0", "T(M[1,1])", "T(M[2,2])", "T(M[1,2],M[2,2])", "mod")
    assert len(L.covers) == 5
    # a chain of four and a chain of three sharing their ends
    assert [len(L.upper_covers[x]) for x in L.elements] == [2, 1, 1, 1, 0]


def test_lattice_order_is_inclusion(A3):
    L = A3.lattice
    for x in L.elements:
        for y in L.elements:
            assert L.le(x, y) == (A3.class_of[x] & ~A3.class_of[y] == 0)
    assert A3.class_of[L.bottom] == 0 and A3.class_of[L.top] == A3.spec.full


def test_sink_orientation_hasse_diagram(A3_sink):
    spec, L = A3_sink.spec, A3_sink.lattice
    perp = lambda x: left_perp(spec, spec.mask([x]))  # noqa: E731
    gen = lambda x: tors_closure(spec, spec.mask([x]))  # noqa: E731
    node = {
        "mod": spec.full, "0": 0,
        "perp P2": perp("P(2)"), "perp S1": perp("S(1)"), "perp S3": perp("S(3)"),
        "perp P1": perp("P(1)"), "perp P3": perp("P(3)"), "perp I2": perp("I(2)"),
        "T(I2)": gen("I(2)"), "T(P3)": gen("P(3)"), "T(P1)": gen("P(1)"), "T(P2)": gen("P(2)"),
        "T(S1)": gen("S(1)"), "T(S3)": gen("S(3)"),
    }
    edges = {
        "mod": ["perp P2", "perp S1", "perp S3"],
        "perp P2": ["perp P1", "perp P3"],
        "perp S1": ["T(P3)", "T(P2)"],
        "perp P1": ["T(P3)", "T(I2)"],
        "perp P3": ["T(I2)", "T(P1)"],
        "perp S3": ["T(P1)", "T(P2)"],
        "T(I2)": ["perp I2"],
        "T(P3)": ["T(S3)"],
        "perp I2": ["T(S1)", "T(S3)"],
        "T(P1)": ["T(S1)"],
        "T(S3)": ["0"],
        "T(P2)": ["0"],
        "T(S1)": ["0"],
    }
    assert len(set(node.values())) == 14
    expected = {
        (A3_sink.element_of(node[lo]), A3_sink.element_of(node[hi]))
        for hi, los in edges.items() for lo in los
    }
    assert len(expected) == 21
    assert set(L.covers) == expected


def test_closures(A2):
    spec = A2.spec
    S2 = spec.mask(["S(2)"])
    assert tors_closure(spec, S2) == S2
    assert tors_closure(spec, 0) == 0
    assert tors_closure(spec, spec.full) == spec.full
    assert ids(spec, tors_closure(spec, spec.mask(["P(2)"]))) == {"M[1,2]", "M[2,2]"}
    assert is_torsion_class(spec, S2) and not is_torsion_class(spec, spec.mask(["P(2)"]))


@pytest.mark.parametrize("n", range(1, 5))
def test_closure_is_least(n):
    T = tors_of(n)
    spec = T.spec
    for x in range(len(spec)):
        closed = tors_closure(spec, 1 << x)
        containing = [S for S in T.class_of if S >> x & 1]
        assert closed in containing
        assert all(closed & ~S == 0 for S in containing)


def test_perps(A2):
    spec = A2.spec
    assert left_perp(spec, 0) == spec.full
    assert ids(spec, left_perp(spec, spec.mask(["S(1)"]))) == {"M[1,2]", "M[2,2]"}
    assert right_perp(spec, 0) == spec.full
    for n in range(1, 5):
        S = gen_linear_An(n)
        simples = S.mask([f"S({i})" for i in range(1, n + 1)])
        assert left_perp(S, simples) == 0


@pytest.mark.parametrize("n", range(1, 5))
def test_perps_give_torsion_pairs(n):
    T = tors_of(n)
    for S in T.class_of:
        F = right_perp(T.spec, S)
        assert left_perp(T.spec, F) == S
        assert S & F == 0


def test_hearts(A2, A3_sink):
    L = A2.lattice
    assert heart(A2, Interval(L.bottom, L.top)) == A2.spec.full
    for x in L.elements:
        assert heart(A2, Interval(x, x)) == 0
    spec = A3_sink.spec
    lo = A3_sink.element_of(left_perp(spec, spec.mask(["P(1)"])))
    hi = A3_sink.element_of(left_perp(spec, spec.mask(["P(2)"])))
    assert ids(spec, heart(A3_sink, Interval(lo, hi))) == {"M[1,2]"}
    assert spec.resolve("P(1)") == spec.index["M[1,2]"]


def test_res_interval_examples(A2, A3_sink):
    L = A2.lattice
    v = res_interval(A2, Interval(L.bottom, L.top))
    assert v.ok and len(v.info["image"]) == len(L)
    v = res_interval(A2, Interval(L.top, L.top))
    assert v.ok and len(v.info["image"]) == 1
    spec = A3_sink.spec
    lo = A3_sink.element_of(left_perp(spec, spec.mask(["P(1)"])))
    hi = A3_sink.element_of(left_perp(spec, spec.mask(["P(2)"])))
    v = res_interval(A3_sink, Interval(lo, hi))
    assert v.ok and len(v.info["image"]) == 2 and v.info["heart"] == ["M[1,2]"]


def test_res_interval_requires_binuclear(A2):
    L = A2.lattice
    with pytest.raises(NotBinuclear):
        res_interval(A2, Interval(L.bottom, L["T(M[1,2],M[2,2])"]))


@pytest.mark.parametrize("n,orientation", [(2, None), (3, None), (3, "><"), (4, None)])
def test_res_interval_on_every_binuclear_interval(n, orientation):
    T = tors_of(n, orientation)
    for I in T.order.intervals:
        assert res_interval(T, I).ok


def test_star_inverts_restriction(A3):
    spec = A3.spec
    for I in A3.order.intervals:
        W = heart(A3, I)
        for x in A3.lattice.interval_elements(I):
            assert star(spec, A3.class_of[I.lo], A3.class_of[x] & W) == A3.class_of[x]


def test_sink_orientation_add_p1_block(A3_sink):
    v = cw_partition(A3_sink)
    assert v.ok and v.info["total"] == 45
    block = v.info["blocks"]["M[1,2]"]
    assert block["size"] == 3
    spec = A3_sink.spec
    el = lambda S: A3_sink.element_of(S)  # noqa: E731
    perp = lambda x: left_perp(spec, spec.mask([x]))  # noqa: E731
    gen = lambda x: tors_closure(spec, spec.mask([x]))  # noqa: E731
    chain = [
        Interval(el(gen("S(1)")), el(gen("P(1)"))),
        Interval(el(gen("I(2)")), el(perp("P(3)"))),
        Interval(el(perp("P(1)")), el(perp("P(2)"))),
    ]
    assert block["intervals"] == [A3_sink.fmt(I) for I in chain]
    order = A3_sink.order
    assert order.le(chain[0], chain[1]) and order.le(chain[1], chain[2])


def test_empty_heart_block_is_tors(A2, A3):
    for T in (A2, A3):
        entry = cw_partition(T).info["blocks"]["0"]
        assert entry["size"] == len(T.lattice)
        assert entry["tors_isomorphic"]


def test_a2_partition(A2):
    v = cw_partition(A2)
    sizes = {k: e["size"] for k, e in v.info["blocks"].items()}
    assert sizes == {"0": 5, "M[1,1]": 2, "M[1,2]": 1, "M[2,2]": 2, "M[1,1],M[1,2],M[2,2]": 1}
    assert sum(sizes.values()) == 11


def test_blocks_are_convex_only_through_their_closure(A2):
    # the intervals whose heart contains W form a convex set; the block alone need not
    blocks = cw_partition(A2).info["blocks"]
    assert all(e["closure_convex"] for e in blocks.values())
    assert not blocks["M[1,1]"]["convex"]


@pytest.mark.parametrize("n,orientation", [(1, None), (2, None), (3, None), (3, "><"), (4, None)])
def test_partition_passes(n, orientation):
    v = cw_partition(tors_of(n, orientation))
    assert v.ok, v.witness
    assert v.info["total"] == len(tors_of(n, orientation).order)


@pytest.mark.parametrize("n,bricks", [(1, 1), (2, 3), (3, 6), (4, 10)])
def test_bricks_and_kappa(n, bricks):
    v = bricks_and_kappa(tors_of(n))
    assert v.ok and len(v.info["bricks"]) == bricks


def test_brick_kappa_is_left_perp_a2(A2):
    v = bricks_and_kappa(A2)
    assert v.info["T"] == {"M[1,1]": "T(M[1,1])", "M[1,2]": "T(M[1,2],M[2,2])", "M[2,2]": "T(M[2,2])"}
    assert v.info["perp"] == {"M[1,1]": "T(M[1,2],M[2,2])", "M[1,2]": "T(M[2,2])", "M[2,2]": "T(M[1,1])"}


@pytest.mark.parametrize("n", range(1, 5))
def test_tors_lattice_properties(n):
    T = tors_of(n)
    assert is_binuclear_lattice(T.lattice).ok
    assert check_semidistributivity(T.lattice).ok
    assert is_lattice(T.order.poset).ok
    assert check_bez(T.order).ok
    assert check_semidistributivity(T.order.poset).ok


def test_too_large(monkeypatch):
    spec = gen_linear_An(4)
    with pytest.raises(TooLarge):
        enumerate_tors(spec, max_indec=9)
    monkeypatch.setenv("BINUC_MAX_INDEC", "5")
    with pytest.raises(TooLarge):
        enumerate_tors(spec)
    monkeypatch.setenv("BINUC_MAX_INDEC", "10")
    assert len(enumerate_tors(spec).lattice) == 42


def test_element_of_rejects_non_classes(A2):
    with pytest.raises(NotATorsionClass):
        A2.element_of(A2.spec.mask(["P(2)"]))


def test_tors_json(A2):
    data = tors_to_json(A2)
    assert data["classes"]["T(M[1,2],M[2,2])"] == ["M[1,2]", "M[2,2]"]
    assert data["classes"]["0"] == []
