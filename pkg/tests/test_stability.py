import itertools
from fractions import Fraction

import pytest

from binuc.errors import NotBinuclear
from binuc.lattice import Interval
from binuc.torsion import (
    cone_data,
    fss_cover_check,
    hasse_vs_incidence,
    interval_dim,
    is_torsion_class,
    sample_thetas,
    semistable_classes,
    tau_rigid_pairs,
    tf_interval,
)
from a2_fixture import A2_ARROWS, A2_TABLE, a2_interval, a2_pair
from conftest import pairs_of, tors_of
from oracles import rational_rank

def brute_force_pairs(spec):
    """Every (M, P) checked directly against the defining conditions."""
    n = len(spec)
    projectives = [x for x in range(n) if spec.indecs[x].projective]
    tau = {x: spec.index.get(spec.indecs[x].tau) for x in range(n)}
    out = set()
    for r in range(n + 1):
        for M in itertools.combinations(range(n), r):
            if any(tau[y] is not None and spec.has_hom(x, tau[y]) for x in M for y in M):
                continue
            for s in range(len(projectives) + 1):
                for P in itertools.combinations(projectives, s):
                    if set(P) & set(M) or any(spec.has_hom(q, x) for q in P for x in M):
                        continue
                    out.add((sum(1 << x for x in M), sum(1 << q for q in P)))
    return out


def test_a1_pairs():
    T = tors_of(1)
    got = {(p.modules, p.shifted_projectives): T.fmt(I) for p, I in pairs_of(1)}
    assert got == {(0, 0): "[0,mod]", (1, 0): "[mod,mod]", (0, 1): "[0,0]"}


def test_a2_table():
    T = tors_of(2)
    pairs = pairs_of(2)
    assert len(pairs) == 11
    got = {p: I for p, I in pairs}
    for key in A2_TABLE:
        assert got[a2_pair(T.spec, key)] == a2_interval(T, key), key


def test_a2_hasse_arrows():
    T = tors_of(2)
    expected = {
        (T.order.index[a2_interval(T, lower)], T.order.index[a2_interval(T, upper)])
        for upper, lower in A2_ARROWS
    }
    assert set(T.order.covers_ni) == expected


@pytest.mark.parametrize("n,orientation", [(1, None), (2, None), (3, None), (3, "><"), (4, None)])
def test_pairs_match_brute_force(n, orientation):
    spec = tors_of(n, orientation).spec
    ours = [(p.modules, p.shifted_projectives) for p in tau_rigid_pairs(spec)]
    assert len(ours) == len(set(ours))
    assert set(ours) == brute_force_pairs(spec)


@pytest.mark.parametrize("n,count", [(1, 3), (2, 11), (3, 45), (4, 197)])
def test_pair_counts(n, count):
    assert len(pairs_of(n)) == count == len(tors_of(n).order)


@pytest.mark.parametrize("n,orientation", [(2, None), (3, None), (3, "><")])
def test_g_vector_recovers_interval(n, orientation):
    T = tors_of(n, orientation)
    for pair, I in pairs_of(n, orientation):
        gens = cone_data(T, I, pairs_of(n, orientation)).generators
        theta = [sum(col) for col in zip(*gens)] if gens else [0] * n
        assert tf_interval(T, theta) == I


def test_tf_examples():
    T = tors_of(2)
    L = T.lattice
    assert tf_interval(T, (0, 0)) == Interval(L.bottom, L.top)
    assert tf_interval(T, (1, 1)) == Interval(L.top, L.top)
    g_p2 = T.spec.indecs[T.spec.resolve("P(2)")].g
    assert T.fmt(tf_interval(T, g_p2)) == "[T(M[1,2],M[2,2]),mod]"
    assert interval_dim(T, tf_interval(T, g_p2)) == 1


def test_semistable_is_exact():
    spec = tors_of(2).spec
    third = Fraction(1, 3)
    # M[2,2] pairs to exactly zero, so it is weakly but not strictly positive
    strict, weak = semistable_classes(spec, (third, Fraction(0)))
    assert spec.ids(strict) == ["M[1,1]"]
    assert spec.ids(weak) == ["M[1,1]", "M[1,2]", "M[2,2]"]
    strict, weak = semistable_classes(spec, (third, -third))
    assert spec.ids(strict) == spec.ids(weak) == ["M[1,1]"]
    with pytest.raises(ValueError):
        semistable_classes(spec, (1,))


@pytest.mark.parametrize("n", [2, 3])
def test_random_thetas_give_torsion_classes(n):
    T = tors_of(n)
    for theta in sample_thetas(n, 200, seed=7):
        lo, hi = semistable_classes(T.spec, theta)
        assert is_torsion_class(T.spec, lo) and is_torsion_class(T.spec, hi)
        assert lo & ~hi == 0
        tf_interval(T, theta)


def test_sample_thetas_is_seeded():
    assert sample_thetas(3, 5, seed=1) == sample_thetas(3, 5, seed=1)
    assert sample_thetas(3, 5, seed=1) != sample_thetas(3, 5, seed=2)
    assert all(isinstance(t, Fraction) for theta in sample_thetas(2, 5) for t in theta)


def test_cone_examples():
    T = tors_of(2)
    L = T.lattice
    assert cone_data(T, Interval(L.bottom, L.top)).dim == 0
    assert cone_data(T, Interval(L.bottom, L.top)).generators == ()
    for x in L.elements:
        assert cone_data(T, Interval(x, x)).dim == 2
    ray = cone_data(T, a2_interval(T, ("S2", "")))
    assert ray.dim == 1 and ray.generators == ((-1, 1),)
    with pytest.raises(NotBinuclear):
        cone_data(T, Interval(L.bottom, L["T(M[1,2],M[2,2])"]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cone_generators_independent(n):
    T = tors_of(n)
    pairs = pairs_of(n)
    for pair, I in pairs:
        cone = cone_data(T, I, pairs)
        assert cone.dim == pair.size() == len(cone.generators)
        assert rational_rank(cone.generators) == cone.dim


@pytest.mark.parametrize("n,covers", [(1, 2), (2, 14), (3, 84), (4, 484)])
def test_cover_classification(n, covers):
    v = fss_cover_check(tors_of(n), pairs_of(n))
    assert v.ok
    assert v.info["covers"] == covers
    assert v.info["same_top"] == v.info["same_bottom"] == covers // 2


def test_a2_side_cover_is_same_top():
    T = tors_of(2)
    side = T.lattice["T(M[1,1])"]
    lower, upper = Interval(T.lattice.bottom, side), Interval(side, side)
    assert (T.order.index[lower], T.order.index[upper]) in T.order.covers_ni
    assert (interval_dim(T, lower), interval_dim(T, upper)) == (1, 2)


def test_cover_classification_other_orientation():
    assert fss_cover_check(tors_of(3, "><"), pairs_of(3, "><")).ok


def test_hasse_vs_incidence():
    assert hasse_vs_incidence(tors_of(1))["symmetric_difference"] == []
    d = hasse_vs_incidence(tors_of(2))
    assert d["symmetric_difference"] == [["[0,mod]", "[T(M[2,2]),T(M[1,2],M[2,2])]"]]
    assert d["only_incidence"] == d["symmetric_difference"] and d["only_hasse"] == []
    assert len(hasse_vs_incidence(tors_of(3))["symmetric_difference"]) == 9
