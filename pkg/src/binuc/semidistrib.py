"""Irreducibles, kappa maps and semidistributivity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .binuclear import BinucPoset, build_ni_order
from .errors import (
    KappaUndefined,
    Mismatch,
    NotJoinIrreducible,
    NotMeetIrreducible,
    PreconditionFailed,
)
from .lattice import FinLattice, Interval, Verdict, _bits, is_lattice


@dataclass(frozen=True)
class IrreducibleData:
    cj_irr: tuple[tuple[int, int], ...]  # (j, j_star)
    cm_irr: tuple[tuple[int, int], ...]  # (m, m_star)

    @property
    def lower(self) -> dict[int, int]:
        return dict(self.cj_irr)

    @property
    def upper(self) -> dict[int, int]:
        return dict(self.cm_irr)


def irreducibles(L: FinLattice) -> IrreducibleData:
    cj = tuple((x, L.lower_covers[x][0]) for x in L.elements if len(L.lower_covers[x]) == 1)
    cm = tuple((x, L.upper_covers[x][0]) for x in L.elements if len(L.upper_covers[x]) == 1)
    return IrreducibleData(cj, cm)


def _meet2(L: FinLattice, x: int, y: int) -> int:
    m = L.glb((x, y))
    if m is None:
        raise PreconditionFailed(f"{L.name!r} is not a lattice")
    return m


def _join2(L: FinLattice, x: int, y: int) -> int:
    m = L.lub((x, y))
    if m is None:
        raise PreconditionFailed(f"{L.name!r} is not a lattice")
    return m


def _maximal(L: FinLattice, mask: int) -> list[int]:
    return [y for y in _bits(mask) if L.up[y] & mask == 1 << y]


def _minimal(L: FinLattice, mask: int) -> list[int]:
    return [y for y in _bits(mask) if L.down[y] & mask == 1 << y]


def kappa(L: FinLattice, j: int) -> int:
    """Largest y with j meet y equal to the unique lower cover of j."""
    if len(L.lower_covers[j]) != 1:
        raise NotJoinIrreducible(f"{L.labels[j]} is not join-irreducible")
    j_star = L.lower_covers[j][0]
    # {y : j ∧ y = j_*} = {y >= j_*, y not >= j}
    K = L.up[j_star] & ~L.up[j]
    top = _maximal(L, K)
    if len(top) != 1:
        raise KappaUndefined(j, top)
    return top[0]


def kappa_dual(L: FinLattice, m: int) -> int:
    """Smallest y with m join y equal to the unique upper cover of m."""
    if len(L.upper_covers[m]) != 1:
        raise NotMeetIrreducible(f"{L.labels[m]} is not meet-irreducible")
    m_star = L.upper_covers[m][0]
    K = L.down[m_star] & ~L.down[m]
    bottom = _minimal(L, K)
    if len(bottom) != 1:
        raise KappaUndefined(m, bottom)
    return bottom[0]


@dataclass
class KappaMap:
    forward: dict[int, int]
    backward: dict[int, int]
    undefined_forward: dict[int, list[int]] = field(default_factory=dict)
    undefined_backward: dict[int, list[int]] = field(default_factory=dict)

    @property
    def total(self) -> bool:
        return not self.undefined_forward and not self.undefined_backward

    @property
    def bijective(self) -> bool:
        return (
            self.total
            and len(set(self.forward.values())) == len(self.forward)
            and all(self.backward.get(m) == j for j, m in self.forward.items())
            and set(self.backward) == set(self.forward.values())
        )


def kappa_map(L: FinLattice) -> KappaMap:
    irr = irreducibles(L)
    km = KappaMap({}, {})
    for j, _ in irr.cj_irr:
        try:
            km.forward[j] = kappa(L, j)
        except KappaUndefined as e:
            km.undefined_forward[j] = e.maximal
    for m, _ in irr.cm_irr:
        try:
            km.backward[m] = kappa_dual(L, m)
        except KappaUndefined as e:
            km.undefined_backward[m] = e.maximal
    return km


def _meet_sd_witness(L: FinLattice) -> tuple[int, int, int] | None:
    """First (x, y, z) with x∧y = x∧z but x∧(y∨z) different, or None."""
    for x in L.elements:
        groups: dict[int, list[int]] = {}
        for y in L.elements:
            groups.setdefault(_meet2(L, x, y), []).append(y)
        for value, ys in groups.items():
            acc = ys[0]
            for y in ys[1:]:
                joined = _join2(L, acc, y)
                if _meet2(L, x, joined) != value:
                    return x, acc, y
                acc = joined
    return None


def check_semidistributivity(L: FinLattice) -> Verdict:
    """Meet and join semidistributivity; witnesses are label triples."""
    meet_w = _meet_sd_witness(L)
    join_w = _meet_sd_witness(L.dual())
    label = lambda t: None if t is None else tuple(L.labels[i] for i in t)  # noqa: E731
    info = {
        "meet_sd": meet_w is None,
        "join_sd": join_w is None,
        "meet_witness": label(meet_w),
        "join_witness": label(join_w),
    }
    return Verdict(meet_w is None and join_w is None, label(meet_w or join_w), info)


def _spatial(L: FinLattice) -> bool:
    cj = [j for j in L.elements if len(L.lower_covers[j]) == 1]
    for x in L.elements:
        below = [j for j in cj if L.le(j, x)]
        if (L.lub(below) if below else L.bottom) != x:
            return False
    return True


def _weak_meet_kappa(L: FinLattice) -> bool:
    irr = irreducibles(L)
    for j, j_star in irr.cj_irr:
        hits = [
            m for m, m_star in irr.cm_irr
            if _join2(L, m, j) == m_star and _meet2(L, m, j) == j_star
        ]
        if len(hits) != 1:
            return False
    return True


def _meet_kappa(L: FinLattice) -> bool:
    km = kappa_map(L)
    return not km.undefined_forward


def _well_separated(L: FinLattice, km: KappaMap) -> tuple[bool, tuple[str, str] | None]:
    for x in L.elements:
        for y in L.elements:
            if L.le(x, y):
                continue
            if not any(L.le(j, x) and L.le(y, k) for j, k in km.forward.items()):
                return False, (L.labels[x], L.labels[y])
    return True, None


def check_kappa_properties(L: FinLattice) -> Verdict:
    """Spatiality, weak and strong kappa properties on both sides, well-separation.

    Finite lattices are always spatial and co-spatial; both are computed and
    reported rather than assumed.
    """
    D = L.dual()
    flags = {
        "spatial": _spatial(L),
        "co_spatial": _spatial(D),
    }
    flags["weak_meet_kappa"] = flags["co_spatial"] and _weak_meet_kappa(L)
    flags["weak_join_kappa"] = flags["spatial"] and _weak_meet_kappa(D)
    flags["meet_kappa"] = flags["co_spatial"] and _meet_kappa(L)
    flags["join_kappa"] = flags["spatial"] and _meet_kappa(D)
    sd = check_semidistributivity(L)
    flags["meet_sd"] = sd.info["meet_sd"]
    flags["join_sd"] = sd.info["join_sd"]
    witnesses = []
    km = kappa_map(L)
    for j, maximal in km.undefined_forward.items():
        witnesses.append({"kappa_undefined": L.labels[j], "maximal": [L.labels[m] for m in maximal]})
    if flags["weak_meet_kappa"] and flags["weak_join_kappa"]:
        ok, w = _well_separated(L, km)
        flags["well_separated"] = ok
        if w:
            witnesses.append({"not_separated": list(w)})
    else:
        flags["well_separated"] = False
    if sd.witness:
        witnesses.append({"semidistributivity": list(sd.witness)})
    return Verdict(all(flags.values()), witnesses or None, {"flags": flags, "witnesses": witnesses})


def kappa_report(L: FinLattice) -> dict:
    v = check_kappa_properties(L)
    return {"lattice": L.name, "flags": v.info["flags"], "witnesses": v.info["witnesses"]}


def _require_binuc_lattice(L: FinLattice, order: BinucPoset | None) -> BinucPoset:
    if order is None:
        order = build_ni_order(L)
    if not is_lattice(order.poset):
        raise PreconditionFailed(f"binuclear interval order of {L.name!r} is not a lattice")
    return order


def kappa_ni(L: FinLattice, order: BinucPoset | None = None) -> KappaMap:
    """Kappa on the binuclear interval order, from the base lattice's kappa.

    Singletons [j, j] go to [k, k*] and covers [j_*, j] go to [k, k] where
    k = kappa(j). The result is compared against kappa computed directly on
    the interval order.
    """
    if not check_semidistributivity(L).ok:
        raise PreconditionFailed(f"{L.name!r} is not semidistributive")
    order = _require_binuc_lattice(L, order)
    P, idx = order.poset, order.index
    irr = irreducibles(L)
    upper = irr.upper
    formula: dict[int, int] = {}
    for j, j_star in irr.cj_irr:
        k = kappa(L, j)
        formula[idx[Interval(j, j)]] = idx[Interval(k, upper[k])]
        formula[idx[Interval(j_star, j)]] = idx[Interval(k, k)]
    direct = kappa_map(P)
    if not direct.total or direct.forward != formula:
        diff = sorted(set(formula.items()) ^ set(direct.forward.items()))
        raise Mismatch(
            "kappa on binuclear intervals disagrees with the formula: "
            + ", ".join(f"{P.labels[a]}->{P.labels[b]}" for a, b in diff)
        )
    return direct


def verify_cjirr_binuc(L: FinLattice, order: BinucPoset | None = None) -> Verdict:
    """Join/meet-irreducible binuclear intervals versus irreducibles of the base.

    An interval is join-irreducible in the order iff its top is join-irreducible
    in ``L``; it is then [j, j] or [j_*, j], with lower cover [j_*, j] or
    [j_*, j_*] respectively. The meet side is dual.
    """
    order = _require_binuc_lattice(L, order)
    P = order.poset
    base, top = irreducibles(L), irreducibles(P)
    lower_L, upper_L = base.lower, base.upper
    lower_P, upper_P = top.lower, top.upper
    for k, I in enumerate(order.intervals):
        name = order.fmt(I)
        if (k in lower_P) != (I.hi in lower_L):
            return Verdict(False, name, {"check": "join-irreducible iff top is"})
        if (k in upper_P) != (I.lo in upper_L):
            return Verdict(False, name, {"check": "meet-irreducible iff bottom is"})
        if k in lower_P:
            j_star = lower_L[I.hi]
            expected = Interval(j_star, I.hi) if I.lo == I.hi else Interval(I.lo, I.lo)
            if I.lo not in (I.hi, j_star) or order.intervals[lower_P[k]] != expected:
                return Verdict(False, name, {"check": "lower cover shape"})
        if k in upper_P:
            m_star = upper_L[I.lo]
            expected = Interval(I.lo, m_star) if I.lo == I.hi else Interval(I.hi, I.hi)
            if I.hi not in (I.lo, m_star) or order.intervals[upper_P[k]] != expected:
                return Verdict(False, name, {"check": "upper cover shape"})
    info = {
        "cj_irr": [P.labels[k] for k in lower_P],
        "cm_irr": [P.labels[k] for k in upper_P],
    }
    return Verdict(True, None, info)
