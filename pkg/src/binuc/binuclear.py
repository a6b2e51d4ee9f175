"""Pop operators, binuclear intervals and the binuclear interval order."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    Mismatch,
    NoJoin,
    NoMeet,
    NotBinuclearInput,
    NotBinuclearLattice,
    NotComparable,
)
from .lattice import FinLattice, Interval, Verdict, _bits, lattice_to_json, meet, join


def pop_down(L: FinLattice, x: int, y: int) -> int:
    """Meet of ``y`` with every lower cover of ``y`` lying above ``x``."""
    if not L.le(x, y):
        raise NotComparable(f"pop_down needs {L.labels[x]} <= {L.labels[y]}")
    below = [z for z in L.lower_covers[y] if L.le(x, z)]
    return meet(L, [y, *below])


def pop_up(L: FinLattice, x: int, y: int) -> int:
    """Join of ``x`` with every upper cover of ``x`` lying below ``y``."""
    if not L.le(x, y):
        raise NotComparable(f"pop_up needs {L.labels[x]} <= {L.labels[y]}")
    above = [z for z in L.upper_covers[x] if L.le(z, y)]
    return join(L, [x, *above])


@dataclass(frozen=True)
class IntervalClass:
    nuclear: bool
    conuclear: bool

    @property
    def binuclear(self) -> bool:
        return self.nuclear and self.conuclear


def classify_interval(L: FinLattice, I: Interval) -> IntervalClass:
    lo, hi = I
    if not L.le(lo, hi):
        raise NotComparable(f"{L.labels[lo]} is not below {L.labels[hi]}")
    return IntervalClass(
        nuclear=pop_down(L, lo, hi) == lo,
        conuclear=pop_up(L, lo, hi) == hi,
    )


def all_intervals(L: FinLattice) -> list[Interval]:
    """Every interval of ``L`` in canonical (lo, hi) order."""
    return [Interval(lo, hi) for lo in L.elements for hi in _bits(L.up[lo])]


def binuclear_intervals(L: FinLattice) -> list[Interval]:
    return [I for I in all_intervals(L) if classify_interval(L, I).binuclear]


def is_binuclear_lattice(L: FinLattice) -> Verdict:
    """Nuclear and conuclear intervals coincide; witness is the first exception."""
    for I in all_intervals(L):
        c = classify_interval(L, I)
        if c.nuclear != c.conuclear:
            kind = "nuclear_not_conuclear" if c.nuclear else "conuclear_not_nuclear"
            return Verdict(False, I, {"kind": kind, "interval": L.fmt(I)})
    return Verdict(True)


def ice_intervals(L: FinLattice) -> list[Interval]:
    """Intervals [x, y] with y <= pop_up(x, top)."""
    out = []
    for x in L.elements:
        cap = pop_up(L, x, L.top)
        out.extend(Interval(x, y) for y in _bits(L.up[x] & L.down[cap]))
    return out


@dataclass(frozen=True, eq=False)
class BinucPoset:
    """Binuclear intervals of ``base`` under the componentwise order.

    ``poset`` is the same order as a :class:`FinLattice` whose element ``k``
    is ``intervals[k]``, labelled ``"[lo,hi]"``.
    """

    base: FinLattice
    intervals: tuple[Interval, ...]
    poset: FinLattice
    binuclear_lattice: bool

    @cached_property
    def index(self) -> dict[Interval, int]:
        return {I: k for k, I in enumerate(self.intervals)}

    @property
    def leq_ni(self) -> np.ndarray:
        return self.poset.leq

    @property
    def covers_ni(self) -> tuple[tuple[int, int], ...]:
        return self.poset.covers

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, I) -> bool:
        return I in self.index

    def le(self, I: Interval, J: Interval) -> bool:
        return self.base.le(I.lo, J.lo) and self.base.le(I.hi, J.hi)

    def fmt(self, I: Interval) -> str:
        return self.base.fmt(I)

    def cover_pairs(self) -> list[tuple[Interval, Interval]]:
        return [(self.intervals[a], self.intervals[b]) for a, b in self.poset.covers]


def build_ni_order(L: FinLattice) -> BinucPoset:
    """The binuclear interval order; works whether or not ``L`` is binuclear."""
    intervals = []
    binuclear_lattice = True
    for I in all_intervals(L):
        c = classify_interval(L, I)
        if c.nuclear != c.conuclear:
            binuclear_lattice = False
        if c.binuclear:
            intervals.append(I)
    # (lo, hi) order is a linear extension of the componentwise order
    down = []
    for k, J in enumerate(intervals):
        mask = 0
        lo_down, hi_down = L.down[J.lo], L.down[J.hi]
        for m in range(k + 1):
            I = intervals[m]
            if (lo_down >> I.lo) & 1 and (hi_down >> I.hi) & 1:
                mask |= 1 << m
        down.append(mask)
    poset = FinLattice([L.fmt(I) for I in intervals], down, f"binuc({L.name})")
    return BinucPoset(L, tuple(intervals), poset, binuclear_lattice)


def _resolve(L: FinLattice, order: BinucPoset | None, I: Interval, J: Interval) -> BinucPoset:
    if order is None:
        order = build_ni_order(L)
    elif order.base is not L:
        raise ValueError("order was built over a different lattice")
    if not order.binuclear_lattice:
        raise NotBinuclearLattice(f"{L.name!r} is not a binuclear lattice")
    for K in (I, J):
        if K not in order:
            raise NotBinuclearInput(f"{L.fmt(K)} is not a binuclear interval")
    return order


def ni_meet(L: FinLattice, I: Interval, J: Interval, order: BinucPoset | None = None) -> Interval:
    """Meet in the binuclear interval order, verified by exhaustive search.

    Raises :class:`NoMeet` when the meet does not exist.
    """
    I, J = Interval(*I), Interval(*J)
    order = _resolve(L, order, I, J)
    lo = meet(L, [I.lo, J.lo])
    candidate = Interval(lo, pop_up(L, lo, meet(L, [I.hi, J.hi])))
    P = order.poset
    common = P.down[order.index[I]] & P.down[order.index[J]]
    best = P.glb([order.index[I], order.index[J]])
    if candidate in order:
        if best is not None:
            if order.intervals[best] != candidate:
                raise Mismatch(f"meet formula gave {L.fmt(candidate)}, search gave {P.labels[best]}")
            return candidate
        outside = [m for m in _bits(common) if not order.le(order.intervals[m], candidate)]
        raise NoMeet(I, J, candidate, order.intervals[outside[-1]], True)
    if best is not None:
        raise Mismatch(f"meet {P.labels[best]} exists but formula candidate is not binuclear")
    outside = [m for m in _bits(common) if not order.le(order.intervals[m], candidate)]
    raise NoMeet(I, J, candidate, order.intervals[outside[-1]] if outside else None, False)


def ni_join(L: FinLattice, I: Interval, J: Interval, order: BinucPoset | None = None) -> Interval:
    """Join in the binuclear interval order; raises :class:`NoJoin` if absent."""
    I, J = Interval(*I), Interval(*J)
    order = _resolve(L, order, I, J)
    hi = join(L, [I.hi, J.hi])
    candidate = Interval(pop_down(L, join(L, [I.lo, J.lo]), hi), hi)
    P = order.poset
    common = P.up[order.index[I]] & P.up[order.index[J]]
    best = P.lub([order.index[I], order.index[J]])
    outside = [m for m in _bits(common) if not order.le(candidate, order.intervals[m])]
    if candidate in order:
        if best is not None:
            if order.intervals[best] != candidate:
                raise Mismatch(f"join formula gave {L.fmt(candidate)}, search gave {P.labels[best]}")
            return candidate
        raise NoJoin(I, J, candidate, order.intervals[outside[0]], True)
    if best is not None:
        raise Mismatch(f"join {P.labels[best]} exists but formula candidate is not binuclear")
    raise NoJoin(I, J, candidate, order.intervals[outside[0]] if outside else None, False)


def check_bez(P: FinLattice | BinucPoset) -> Verdict:
    """Every pair of elements covered by a common element has a meet.

    On success ``info["lattice_implied"]`` records that a finite bounded
    poset with this property is a lattice.
    """
    Q = P.poset if isinstance(P, BinucPoset) else P
    for z in Q.elements:
        for x, y in itertools.combinations(Q.lower_covers[z], 2):
            if Q.glb((x, y)) is None:
                return Verdict(False, (Q.labels[x], Q.labels[y], Q.labels[z]))
    return Verdict(True, info={"lattice_implied": True})


def binuc_to_json(order: BinucPoset) -> dict:
    return lattice_to_json(order.poset)
