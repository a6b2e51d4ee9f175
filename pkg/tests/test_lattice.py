import math

import pytest

from binuc.errors import (
    BadParams,
    CycleDetected,
    DuplicateLabel,
    NotALattice,
    NotBounded,
    NotComparable,
    UnknownFamily,
    UnknownLabel,
)
from binuc.lattice import (
    build_lattice,
    build_poset,
    export_dot,
    generate,
    inversion_set,
    is_lattice,
    join,
    lattice_from_json,
    lattice_to_json,
    meet,
    parse_dot_edges,
)
from oracles import NaivePoset


def test_fig1_meets_and_joins():
    L = generate("fig1")
    assert len(L) == 7 and len(L.covers) == 9
    assert L.label(join(L, [L["w"], L["v"]])) == "y"
    assert L.label(meet(L, [L["x"], L["y"], L["z"]])) == "bot"


def test_fig2_meet_of_g_and_h():
    L = generate("fig2")
    assert L.label(meet(L, [L["g"], L["h"]])) == "i"
    assert L.label(join(L, [L["g"], L["h"]])) == "f"


def test_canonical_order_is_linear_extension():
    L = generate("fig2")
    assert L.labels == ("bot", "i", "j", "g", "h", "d", "e", "f", "c", "a", "b", "top")
    for lo, hi in L.covers:
        assert lo < hi


@pytest.mark.parametrize("n", range(1, 6))
def test_weak_order_sizes(n):
    L = generate("weak_order", n)
    assert len(L) == math.factorial(n)
    assert is_lattice(L)


def test_inversion_set():
    assert inversion_set((2, 1, 3)) == {(1, 2)}
    assert inversion_set((3, 2, 1)) == {(1, 2), (1, 3), (2, 3)}


@pytest.mark.parametrize("n", range(0, 5))
def test_boolean_sizes(n):
    L = generate("boolean", n)
    assert len(L) == 2 ** n
    assert len(L.covers) == n * 2 ** (n - 1) if n else len(L.covers) == 0


def test_meet_join_agree_with_naive():
    for fam, n in [("fig1", None), ("fig2", None), ("weak_order", 3), ("N5", None)]:
        L = generate(fam, n)
        P = NaivePoset.of(L)
        for x in L.elements:
            for y in L.elements:
                assert L.label(meet(L, [x, y])) == P.meet([L.label(x), L.label(y)])
                assert L.label(join(L, [x, y])) == P.join([L.label(x), L.label(y)])


def test_build_errors():
    with pytest.raises(DuplicateLabel):
        build_poset(["a", "a"], [])
    with pytest.raises(UnknownLabel):
        build_poset(["a", "b"], [("a", "c")])
    with pytest.raises(CycleDetected):
        build_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(CycleDetected):
        build_poset(["a"], [("a", "a")])
    with pytest.raises(NotBounded):
        build_poset(["a", "b"], [])


def test_not_a_lattice_witness():
    labels = ["0", "a", "b", "c", "d", "1"]
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    P = build_poset(labels, covers)
    v = is_lattice(P)
    assert not v.ok
    assert set(v.witness) in ({"a", "b"}, {"c", "d"})
    with pytest.raises(NotALattice):
        build_lattice(labels, covers)


def test_interval_requires_order():
    L = generate("fig1")
    with pytest.raises(NotComparable):
        L.interval(L["x"], L["z"])


def test_generate_errors():
    with pytest.raises(UnknownFamily):
        generate("nope")
    with pytest.raises(BadParams):
        generate("chain", 0)
    with pytest.raises(BadParams):
        generate("weak_order", 7)


def test_json_round_trip():
    L = generate("fig2")
    M = lattice_from_json(lattice_to_json(L))
    assert M.labels == L.labels and M.covers == L.covers


def test_json_schema_errors():
    with pytest.raises(BadParams):
        lattice_from_json({"elements": []})
    with pytest.raises(BadParams):
        lattice_from_json({"elements": ["a"], "covers": [["a"]]})


def test_dot_round_trip():
    L = generate("chain", 2)
    text = export_dot(L)
    assert '"1" -> "0";' in text
    assert parse_dot_edges(text) == [("0", "1")]
    L = generate("fig1")
    edges = parse_dot_edges(export_dot(L))
    assert sorted(edges) == sorted((L.label(a), L.label(b)) for a, b in L.covers)


def test_dual_reverses_order():
    L = generate("fig1")
    D = L.dual()
    assert D.label(D.bottom) == "top"
    assert D.le(D["y"], D["w"])
