"""Stability intervals, support tau-rigid pairs, cones and cover classification."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import (
    ClosureViolation,
    CounterexampleFound,
    DependentGenerators,
    Mismatch,
    NotBijective,
    NotATorsionClass,
    NotBinuclear,
)
from ..lattice import Interval, Verdict, _bits
from .algebra import AlgebraSpec, Subcat
from .tors import TorsData, left_perp, right_perp, tors_closure


def _pairing(theta: Sequence[Fraction], dim: Sequence[int]) -> Fraction:
    return sum((t * d for t, d in zip(theta, dim)), Fraction(0))


def semistable_classes(spec: AlgebraSpec, theta: Sequence) -> tuple[Subcat, Subcat]:
    """Modules all of whose nonzero quotients pair positively (resp. nonnegatively)."""
    theta = [Fraction(t) for t in theta]
    if len(theta) != spec.rank:
        raise ValueError(f"theta needs {spec.rank} entries")
    values = [_pairing(theta, X.dim) for X in spec.indecs]
    strict = weak = 0
    for x in range(len(spec)):
        qs = _bits(spec.quot_mask[x])
        if all(values[q] > 0 for q in qs):
            strict |= 1 << x
        if all(values[q] >= 0 for q in qs):
            weak |= 1 << x
    return strict, weak


def sample_thetas(rank: int, count: int, seed: int = 0, bound: int = 12) -> list[tuple[Fraction, ...]]:
    """Seeded rational stability vectors with small numerators and denominators."""
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(rank))
        for _ in range(count)
    ]


def tf_interval(T: TorsData, theta: Sequence) -> Interval:
    lo, hi = semistable_classes(T.spec, theta)
    I = Interval(T.element_of(lo), T.element_of(hi))
    if I not in T.order:
        raise NotBinuclear(f"stability interval {T.fmt(I)} is not binuclear")
    return I


@dataclass(frozen=True)
class TauRigidPair:
    modules: Subcat
    shifted_projectives: Subcat

    def size(self) -> int:
        return bin(self.modules).count("1") + bin(self.shifted_projectives).count("1")

    def summand_of(self, other: "TauRigidPair") -> bool:
        return (
            self.modules & ~other.modules == 0
            and self.shifted_projectives & ~other.shifted_projectives == 0
        )

    def fmt(self, spec: AlgebraSpec) -> str:
        m = "+".join(spec.ids(self.modules)) or "0"
        p = "+".join(spec.ids(self.shifted_projectives)) or "0"
        return f"({m}, {p})"


def _compatibility(spec: AlgebraSpec) -> tuple[list[int], list[tuple[str, int]]]:
    """Adjacency masks on modules followed by shifted projectives."""
    n = len(spec)
    vertices: list[tuple[str, int]] = []
    for x in range(n):
        t = spec.tau_index[x]
        if t is None or not spec.has_hom(x, t):
            vertices.append(("M", x))
    vertices.extend(("P", x) for x in _bits(spec.projectives))
    adj = [0] * len(vertices)
    for a, (ka, x) in enumerate(vertices):
        for b, (kb, y) in enumerate(vertices):
            if a == b:
                continue
            if ka == kb == "M":
                tx, ty = spec.tau_index[x], spec.tau_index[y]
                ok = (ty is None or not spec.has_hom(x, ty)) and (tx is None or not spec.has_hom(y, tx))
            elif ka == kb == "P":
                ok = x != y
            else:
                q, m = (x, y) if ka == "P" else (y, x)
                ok = not spec.has_hom(q, m)
            if ok:
                adj[a] |= 1 << b
    return adj, vertices


def tau_rigid_pairs(spec: AlgebraSpec) -> list[TauRigidPair]:
    adj, vertices = _compatibility(spec)
    out = []

    def extend(chosen: int, candidates: int) -> None:
        modules = shifted = 0
        for v in _bits(chosen):
            kind, x = vertices[v]
            if kind == "M":
                modules |= 1 << x
            else:
                shifted |= 1 << x
        if modules & shifted == 0:
            out.append(TauRigidPair(modules, shifted))
        for v in _bits(candidates):
            # only higher vertices, so each clique is produced once
            extend(chosen | 1 << v, candidates & adj[v] & ~((2 << v) - 1))

    extend(0, (1 << len(vertices)) - 1)
    return out


def pair_interval(spec: AlgebraSpec, pair: TauRigidPair) -> tuple[Subcat, Subcat]:
    lo = tors_closure(spec, pair.modules)
    hi = left_perp(spec, spec.tau_of(pair.modules)) & right_perp(spec, pair.shifted_projectives)
    return lo, hi


def enumerate_presilting(spec: AlgebraSpec, T: TorsData) -> list[tuple[TauRigidPair, Interval]]:
    """All support tau-rigid pairs with their intervals, in interval order.

    Raises :class:`NotBijective` unless the pairs match the binuclear
    intervals one to one.
    """
    out = []
    for pair in tau_rigid_pairs(spec):
        try:
            lo, hi = pair_interval(spec, pair)
            I = Interval(T.element_of(lo), T.element_of(hi))
        except (NotATorsionClass, ClosureViolation):
            raise NotBijective("pair does not give an interval of torsion classes", pair.fmt(spec)) from None
        out.append((pair, I))
    seen: dict[Interval, TauRigidPair] = {}
    for pair, I in out:
        if I not in T.order:
            raise NotBijective(f"{pair.fmt(spec)} gives non-binuclear {T.fmt(I)}", pair.fmt(spec))
        if I in seen:
            raise NotBijective(f"{pair.fmt(spec)} and {seen[I].fmt(spec)} share {T.fmt(I)}", T.fmt(I))
        seen[I] = pair
    missing = [I for I in T.order.intervals if I not in seen]
    if missing:
        raise NotBijective(f"no pair gives {T.fmt(missing[0])}", T.fmt(missing[0]))
    return sorted(out, key=lambda pi: T.order.index[pi[1]])


@dataclass(frozen=True)
class ConeData:
    dim: int
    generators: tuple[tuple[int, ...], ...]


def interval_dim(T: TorsData, I: Interval) -> int:
    """Rank minus the number of atoms of the interval."""
    L = T.lattice
    atoms = sum(1 for z in L.upper_covers[I.lo] if L.le(z, I.hi))
    return T.spec.rank - atoms


def cone_data(
    T: TorsData, I: Interval, pairs: list[tuple[TauRigidPair, Interval]] | None = None
) -> ConeData:
    I = Interval(*I)
    if I not in T.order:
        raise NotBinuclear(f"{T.fmt(I)} is not binuclear")
    spec = T.spec
    if pairs is None:
        pairs = enumerate_presilting(spec, T)
    pair = next(p for p, J in pairs if J == I)
    gens = [spec.indecs[x].g for x in _bits(pair.modules)]
    gens += [tuple(-c for c in spec.indecs[x].g) for x in _bits(pair.shifted_projectives)]
    dim = interval_dim(T, I)
    if len(gens) != dim:
        raise Mismatch(f"{T.fmt(I)}: {len(gens)} summands but {dim} from atoms")
    if gens and np.linalg.matrix_rank(np.array(gens)) != len(gens):
        raise DependentGenerators(f"{T.fmt(I)}: generators {gens} are dependent")
    return ConeData(dim, tuple(gens))


def _nested(J: Interval, I: Interval, L) -> bool:
    """J sits inside I as an interval."""
    return L.le(I.lo, J.lo) and L.le(J.hi, I.hi)


def fss_cover_check(T: TorsData, pairs: list[tuple[TauRigidPair, Interval]] | None = None) -> Verdict:
    """Covers of the interval order are exactly the face relations of codimension one.

    (1) same top, the upper interval nested in the lower, cone dimension up by one;
    (2) same bottom, the lower interval nested in the upper, cone dimension down by one.
    Also checks the two-of-three statements linking summands, completions and
    the order. Raises :class:`CounterexampleFound`.
    """
    spec, L, order = T.spec, T.lattice, T.order
    if pairs is None:
        pairs = enumerate_presilting(spec, T)
    dims = {I: interval_dim(T, I) for I in order.intervals}
    covers = set(order.cover_pairs())
    clause_count = [0, 0]
    for I in order.intervals:
        for J in order.intervals:
            if I == J or not order.le(I, J):
                continue
            c1 = I.hi == J.hi and _nested(J, I, L) and dims[J] - dims[I] == 1
            c2 = I.lo == J.lo and _nested(I, J, L) and dims[I] - dims[J] == 1
            is_cover = (I, J) in covers
            if is_cover and c1 == c2:
                raise CounterexampleFound(
                    f"cover {T.fmt(I)} < {T.fmt(J)} satisfies {'both' if c1 else 'neither'} clause",
                    (T.fmt(I), T.fmt(J)),
                )
            if not is_cover and (c1 or c2):
                raise CounterexampleFound(
                    f"{T.fmt(I)} < {T.fmt(J)} satisfies a clause but is not a cover",
                    (T.fmt(I), T.fmt(J)),
                )
            if is_cover:
                clause_count[0 if c1 else 1] += 1
    for U, I in pairs:
        for V, J in pairs:
            le = order.le(I, J)
            if (U.summand_of(V) + (I.hi == J.hi) + le) == 2:
                raise CounterexampleFound("two-of-three fails (summand, top, order)",
                                          (U.fmt(spec), V.fmt(spec)))
            if (V.summand_of(U) + (I.lo == J.lo) + le) == 2:
                raise CounterexampleFound("two-of-three fails (summand, bottom, order)",
                                          (U.fmt(spec), V.fmt(spec)))
            if U.summand_of(V) != _nested(J, I, L):
                raise CounterexampleFound("summand relation differs from nesting",
                                          (U.fmt(spec), V.fmt(spec)))
    return Verdict(True, None, {
        "covers": len(covers),
        "same_top": clause_count[0],
        "same_bottom": clause_count[1],
    })


def hasse_vs_incidence(T: TorsData) -> dict:
    """Compare the undirected Hasse graph with codimension-one face incidence.

    Returns the edges found only in one of the two graphs, as sorted label pairs.
    """
    L, order = T.lattice, T.order
    dims = {I: interval_dim(T, I) for I in order.intervals}
    hasse = {frozenset(p) for p in order.cover_pairs()}
    incidence = {
        frozenset((I, J))
        for I in order.intervals
        for J in order.intervals
        if I != J and _nested(J, I, L) and dims[J] - dims[I] == 1
    }

    def fmt(edges):
        return sorted(sorted(T.fmt(I) for I in e) for e in edges)

    only_hasse = hasse - incidence
    only_incidence = incidence - hasse
    return {
        "hasse_edges": len(hasse),
        "incidence_edges": len(incidence),
        "only_hasse": fmt(only_hasse),
        "only_incidence": fmt(only_incidence),
        "symmetric_difference": fmt(only_hasse | only_incidence),
    }
