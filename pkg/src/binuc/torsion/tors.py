"""Torsion classes, perpendicular categories, hearts and their restrictions."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from ..binuclear import BinucPoset, build_ni_order
from ..errors import BijectionFailure, ClosureViolation, NotATorsionClass, NotBinuclear, TooLarge
from ..lattice import FinLattice, Interval, Verdict, _bits, from_leq_masks, is_lattice, lattice_to_json
from ..semidistrib import check_semidistributivity, irreducibles, kappa, kappa_dual
from .algebra import AlgebraSpec, Subcat

DEFAULT_MAX_INDEC = 20

# A closure rule: if every member of `premise` is present, add `conclusion`.
Rule = tuple[Subcat, Subcat]


def torsion_rules(spec: AlgebraSpec) -> list[Rule]:
    rules = [(1 << x, q) for x, q in enumerate(spec.quot_mask)]
    for s in spec.ses:
        premise = 0
        for i in s.sub + s.quot:
            premise |= 1 << i
        conclusion = 0
        for i in s.mid:
            conclusion |= 1 << i
        rules.append((premise, conclusion))
    return rules


def _close(rules: list[Rule], start: Subcat) -> Subcat:
    S = start
    changed = True
    while changed:
        changed = False
        for premise, conclusion in rules:
            if premise & S == premise and conclusion & ~S:
                S |= conclusion
                changed = True
    return S


def _is_closed(rules: list[Rule], S: Subcat) -> bool:
    return all(premise & S != premise or conclusion & ~S == 0 for premise, conclusion in rules)


def _closed_sets(rules: list[Rule], universe: Subcat) -> list[Subcat]:
    """All closed subsets of ``universe``, reached by adding one element at a time."""
    seen = {_close(rules, 0)}
    queue = deque(seen)
    while queue:
        S = queue.popleft()
        for x in _bits(universe & ~S):
            T = _close(rules, S | 1 << x)
            if T not in seen:
                seen.add(T)
                queue.append(T)
    return sorted(seen, key=lambda m: (bin(m).count("1"), m))


def tors_closure(spec: AlgebraSpec, S: Subcat) -> Subcat:
    """Smallest torsion class containing ``S``."""
    return _close(torsion_rules(spec), S)


def is_torsion_class(spec: AlgebraSpec, S: Subcat) -> bool:
    return _is_closed(torsion_rules(spec), S)


def left_perp(spec: AlgebraSpec, S: Subcat) -> Subcat:
    """Indecomposables with no nonzero map into ``S``."""
    out = sum(1 << x for x in range(len(spec)) if spec.hom_out[x] & S == 0)
    if not is_torsion_class(spec, out):
        raise ClosureViolation(f"left perpendicular of {spec.ids(S)} is not a torsion class")
    return out


def right_perp(spec: AlgebraSpec, S: Subcat) -> Subcat:
    """Indecomposables receiving no nonzero map from ``S``."""
    return sum(1 << x for x in range(len(spec)) if spec.hom_in[x] & S == 0)


def class_label(spec: AlgebraSpec, S: Subcat) -> str:
    if S == 0:
        return "0"
    if S == spec.full:
        return "mod"
    return "T(" + ",".join(spec.ids(S)) + ")"


@dataclass(frozen=True, eq=False)
class TorsData:
    spec: AlgebraSpec
    lattice: FinLattice
    class_of: tuple[Subcat, ...]

    @cached_property
    def element(self) -> dict[Subcat, int]:
        return {S: k for k, S in enumerate(self.class_of)}

    @cached_property
    def order(self) -> BinucPoset:
        return build_ni_order(self.lattice)

    def element_of(self, S: Subcat) -> int:
        try:
            return self.element[S]
        except KeyError:
            raise NotATorsionClass(f"{self.spec.ids(S)} is not a torsion class") from None

    def members(self, x: int) -> list[str]:
        return self.spec.ids(self.class_of[x])

    def fmt(self, I: Interval) -> str:
        return self.lattice.fmt(I)


def enumerate_tors(spec: AlgebraSpec, max_indec: int | None = None) -> TorsData:
    if max_indec is None:
        max_indec = int(os.environ.get("BINUC_MAX_INDEC", DEFAULT_MAX_INDEC))
    if len(spec) > max_indec:
        raise TooLarge(f"{spec.name} has {len(spec)} indecomposables, limit is {max_indec}")
    classes = _closed_sets(torsion_rules(spec), spec.full)
    labels = [class_label(spec, S) for S in classes]
    down = [sum(1 << m for m, U in enumerate(classes) if U & ~S == 0) for S in classes]
    L = from_leq_masks(labels, down, f"tors({spec.name})")
    by_label = dict(zip(labels, classes))
    return TorsData(spec, L, tuple(by_label[lab] for lab in L.labels))


def tors_to_json(T: TorsData) -> dict:
    data = lattice_to_json(T.lattice)
    data["classes"] = {T.lattice.labels[k]: T.members(k) for k in T.lattice.elements}
    return data


def heart(T: TorsData, I: Interval) -> Subcat:
    """Members of the top class receiving no map from the bottom class."""
    lo, hi = T.class_of[I.lo], T.class_of[I.hi]
    return hi & right_perp(T.spec, lo)


def _require_binuclear(T: TorsData, I: Interval) -> Interval:
    I = Interval(*I)
    if I not in T.order:
        raise NotBinuclear(f"{T.fmt(I)} is not a binuclear interval")
    return I


def _heart_rules(spec: AlgebraSpec, W: Subcat) -> list[Rule]:
    """Torsion-class rules inside W: quotients whose kernel lies in W, extensions in W."""
    rules = []
    for s in spec.ses:
        ends = sum(1 << i for i in s.sub + s.quot)
        mid = sum(1 << i for i in s.mid)
        if ends & ~W:
            continue
        if len(s.mid) == 1:
            rules.append((mid, sum(1 << i for i in s.quot)))
        rules.append((ends, mid))
    return rules


def star(spec: AlgebraSpec, lower: Subcat, upper: Subcat) -> Subcat:
    """Indecomposables that are extensions of something in ``upper`` by ``lower``."""
    out = lower | upper
    for s in spec.ses:
        if len(s.mid) != 1:
            continue
        if all(lower >> i & 1 for i in s.sub) and all(upper >> i & 1 for i in s.quot):
            out |= 1 << s.mid[0]
    return out


def res_interval(T: TorsData, I: Interval) -> Verdict:
    """Intersecting with the heart maps the interval isomorphically onto tors(heart).

    ``info["image"]`` is the image lattice.
    """
    I = _require_binuclear(T, I)
    spec, L = T.spec, T.lattice
    W = heart(T, I)
    inside = L.interval_elements(I)
    image = {x: T.class_of[x] & W for x in inside}
    heart_classes = _closed_sets(_heart_rules(spec, W), W)
    if sorted(image.values()) != sorted(heart_classes) or len(set(image.values())) != len(inside):
        missing = sorted(set(heart_classes) ^ set(image.values()))
        return Verdict(False, [spec.ids(m) for m in missing], {"check": "bijection"})
    for x in inside:
        for y in inside:
            if L.le(x, y) != (image[x] & ~image[y] == 0):
                return Verdict(False, (L.labels[x], L.labels[y]), {"check": "order"})
        if star(spec, T.class_of[I.lo], image[x]) != T.class_of[x]:
            return Verdict(False, L.labels[x], {"check": "star inverse"})
    labels = [class_label(spec, image[x]) for x in inside]
    down = [sum(1 << k for k, y in enumerate(inside) if L.le(y, x)) for x in inside]
    image_lattice = from_leq_masks(labels, down, f"tors({spec.ids(W)})")
    return Verdict(True, None, {"heart": spec.ids(W), "image": image_lattice})


@dataclass
class Block:
    heart: Subcat
    intervals: list[Interval]


def _subposet(order: BinucPoset, intervals: list[Interval], name: str) -> FinLattice:
    ks = sorted(order.index[I] for I in intervals)
    P = order.poset
    down = [sum(1 << a for a, m in enumerate(ks) if P.le(m, k)) for k in ks]
    return FinLattice([P.labels[k] for k in ks], down, name)


def cw_partition(T: TorsData) -> Verdict:
    """Group binuclear intervals by heart and check each group.

    Per block: the intervals whose heart contains it form a convex set; the
    block is closed under endpoint-wise meets and joins; the block is a
    semidistributive lattice. The empty-heart block must reproduce tors.
    """
    spec, L, order = T.spec, T.lattice, T.order
    blocks: dict[Subcat, list[Interval]] = {}
    for I in order.intervals:
        blocks.setdefault(heart(T, I), []).append(I)
    report: dict[str, dict] = {}
    failures = []
    P = order.poset
    for W, members in sorted(blocks.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0])):
        name = ",".join(spec.ids(W)) or "0"
        entry: dict = {"size": len(members)}
        wider = [k for k, I in enumerate(order.intervals) if heart(T, I) & W == W]
        wider_mask = sum(1 << k for k in wider)
        entry["closure_convex"] = all(
            P.up[a] & P.down[b] & ~wider_mask == 0 for a in wider for b in wider
        )
        own = sum(1 << order.index[I] for I in members)
        entry["convex"] = all(
            P.up[order.index[a]] & P.down[order.index[b]] & ~own == 0 for a in members for b in members
        )
        closed = True
        for a in members:
            for b in members:
                lo_m, hi_m = L.glb((a.lo, b.lo)), L.glb((a.hi, b.hi))
                lo_j, hi_j = L.lub((a.lo, b.lo)), L.lub((a.hi, b.hi))
                if Interval(lo_m, hi_m) not in members or Interval(lo_j, hi_j) not in members:
                    closed = False
        entry["endpoint_closed"] = closed
        sub = _subposet(order, members, f"C({name})")
        entry["lattice"] = bool(is_lattice(sub))
        entry["semidistributive"] = entry["lattice"] and bool(check_semidistributivity(sub))
        if W == 0:
            entry["tors_isomorphic"] = (
                sorted(members) == sorted(Interval(x, x) for x in L.elements)
                and all(
                    order.le(Interval(x, x), Interval(y, y)) == L.le(x, y)
                    for x in L.elements for y in L.elements
                )
            )
        if not all(v for k, v in entry.items() if k not in ("size", "convex")):
            failures.append(name)
        entry["intervals"] = [T.fmt(I) for I in members]
        report[name] = entry
    total = sum(len(m) for m in blocks.values())
    return Verdict(
        not failures and total == len(order),
        failures or None,
        {"blocks": report, "total": total},
    )


def bricks_and_kappa(T: TorsData) -> Verdict:
    """Bricks label join-irreducibles via T(X) and meet-irreducibles via the left perp.

    Also checks that kappa(T(X)) is the left perp of X, and that the heart of
    every cover interval holds exactly one brick.
    """
    spec, L = T.spec, T.lattice
    bricks = [x for x, X in enumerate(spec.indecs) if X.end_dim == 1]
    irr = irreducibles(L)
    cj = sorted(j for j, _ in irr.cj_irr)
    cm = sorted(m for m, _ in irr.cm_irr)
    gen = {x: T.element_of(tors_closure(spec, 1 << x)) for x in bricks}
    perp = {x: T.element_of(left_perp(spec, 1 << x)) for x in bricks}
    if sorted(gen.values()) != cj:
        raise BijectionFailure("bricks do not biject with join-irreducibles",
                               sorted(set(cj) ^ set(gen.values())))
    if sorted(perp.values()) != cm:
        raise BijectionFailure("bricks do not biject with meet-irreducibles",
                               sorted(set(cm) ^ set(perp.values())))
    for x in bricks:
        if kappa(L, gen[x]) != perp[x]:
            raise BijectionFailure(f"kappa(T({spec.indecs[x].id})) is not its left perp", spec.indecs[x].id)
        if kappa_dual(L, perp[x]) != gen[x]:
            raise BijectionFailure(f"dual kappa fails at {spec.indecs[x].id}", spec.indecs[x].id)
    brick_mask = sum(1 << x for x in bricks)
    for lo, hi in L.covers:
        W = heart(T, Interval(lo, hi)) & brick_mask
        if bin(W).count("1") != 1:
            raise BijectionFailure(f"cover {L.labels[lo]} < {L.labels[hi]} has heart bricks {spec.ids(W)}",
                                   (L.labels[lo], L.labels[hi]))
    info = {
        "bricks": [spec.indecs[x].id for x in bricks],
        "T": {spec.indecs[x].id: L.labels[gen[x]] for x in bricks},
        "perp": {spec.indecs[x].id: L.labels[perp[x]] for x in bricks},
    }
    return Verdict(True, None, info)
