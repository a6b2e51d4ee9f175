"""Finite bounded posets and lattices.

Elements are plain ``int`` indices into a :class:`FinLattice`.  Internally the
order is held as two tuples of bitmasks (``down[i]`` is the set of elements
below ``i``, ``up[i]`` the set above it); the dense boolean ``leq`` matrix is
derived from them.  Indices are always a linear extension of the order, which
lets the maximum of a down-closed set be read off its highest bit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadParams,
    CycleDetected,
    DuplicateLabel,
    NotALattice,
    NotBounded,
    NotComparable,
    UnknownFamily,
    UnknownLabel,
)


class Interval(NamedTuple):
    lo: int
    hi: int


@dataclass
class Verdict:
    """Outcome of a structural check; truthy iff the check passed."""

    ok: bool
    witness: Any = None
    info: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


class FinLattice:
    """A finite bounded poset, normally a lattice.

    Instances are immutable.  Use :func:`build_lattice` (validating) or
    :func:`build_poset` (no meet/join check) rather than the constructor.
    """

    __slots__ = (
        "name", "labels", "down", "up", "covers", "lower_covers",
        "upper_covers", "bottom", "top", "_index", "_leq", "_full",
    )

    def __init__(self, labels: Sequence[str], down: Sequence[int], name: str = ""):
        n = len(labels)
        self.name = name
        self.labels = tuple(labels)
        self.down = tuple(down)
        self._full = (1 << n) - 1
        up = [0] * n
        for i, d in enumerate(self.down):
            if not (d >> i) & 1:
                raise ValueError(f"order not reflexive at {labels[i]!r}")
            if d >> (i + 1):
                raise ValueError("element order is not a linear extension")
            for k in _bits(d):
                up[k] |= 1 << i
        self.up = tuple(up)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise DuplicateLabel("duplicate labels")

        lower = []
        for i in range(n):
            strict = self.down[i] & ~(1 << i)
            # z is a lower cover iff nothing strictly between z and i
            covs = []
            for z in reversed(_bits(strict)):
                if not any((self.down[c] >> z) & 1 for c in covs):
                    covs.append(z)
            lower.append(tuple(sorted(covs)))
        self.lower_covers = tuple(lower)
        upper: list[list[int]] = [[] for _ in range(n)]
        for i, covs in enumerate(lower):
            for z in covs:
                upper[z].append(i)
        self.upper_covers = tuple(tuple(u) for u in upper)
        self.covers = tuple((z, i) for i in range(n) for z in lower[i])

        mins = [i for i in range(n) if self.down[i] == 1 << i]
        maxs = [i for i in range(n) if self.up[i] == 1 << i]
        if n == 0 or len(mins) != 1 or len(maxs) != 1:
            raise NotBounded(
                f"poset {name!r} has minimal elements {[labels[i] for i in mins]}"
                f" and maximal elements {[labels[i] for i in maxs]}"
            )
        self.bottom = mins[0]
        self.top = maxs[0]
        self._leq = None

    # basic access

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"FinLattice({self.name!r}, {len(self)} elements, {len(self.covers)} covers)"

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    @property
    def leq(self) -> np.ndarray:
        """Read-only boolean matrix with ``leq[i, j]`` iff element i <= element j."""
        if self._leq is None:
            n = len(self)
            mat = np.zeros((n, n), dtype=bool)
            for j, d in enumerate(self.down):
                for i in _bits(d):
                    mat[i, j] = True
            mat.flags.writeable = False
            self._leq = mat
        return self._leq

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"no element labelled {label!r}") from None

    def __getitem__(self, label: str) -> int:
        return self.index(label)

    def label(self, x: int) -> str:
        return self.labels[x]

    def le(self, x: int, y: int) -> bool:
        return bool((self.down[y] >> x) & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.le(x, y)

    def is_cover(self, x: int, y: int) -> bool:
        return x in self.lower_covers[y]

    def interval(self, lo: int, hi: int) -> Interval:
        if not self.le(lo, hi):
            raise NotComparable(f"{self.labels[lo]} is not below {self.labels[hi]}")
        return Interval(lo, hi)

    def interval_elements(self, iv: Interval) -> list[int]:
        return _bits(self.up[iv.lo] & self.down[iv.hi])

    def fmt(self, iv: Interval) -> str:
        return f"[{self.labels[iv.lo]},{self.labels[iv.hi]}]"

    def heights(self) -> list[int]:
        h = [0] * len(self)
        for i in range(len(self)):
            h[i] = max((h[z] + 1 for z in self.lower_covers[i]), default=0)
        return h

    # bounds over arbitrary sets; None when the bound does not exist

    def glb(self, elems: Iterable[int]) -> int | None:
        mask = self._full
        for s in elems:
            mask &= self.down[s]
        if not mask:
            return None
        m = mask.bit_length() - 1
        return m if self.down[m] == mask else None

    def lub(self, elems: Iterable[int]) -> int | None:
        mask = self._full
        for s in elems:
            mask &= self.up[s]
        if not mask:
            return None
        m = (mask & -mask).bit_length() - 1
        return m if self.up[m] == mask else None

    def dual(self, name: str | None = None) -> "FinLattice":
        """The order-dual, with the same labels."""
        n = len(self)
        rev = list(range(n - 1, -1, -1))
        down = []
        for i in rev:
            mask = 0
            for k in _bits(self.up[i]):
                mask |= 1 << (n - 1 - k)
            down.append(mask)
        return FinLattice([self.labels[i] for i in rev], down, name or f"dual({self.name})")


def meet(L: FinLattice, S: Iterable[int]) -> int:
    """Greatest lower bound of ``S``; the empty meet is the top."""
    S = list(S)
    m = L.glb(S)
    if m is None:
        raise NotALattice(
            f"{[L.labels[s] for s in S]} has no meet in {L.name!r}",
            witness=tuple(L.labels[s] for s in S[:2]),
        )
    return m


def join(L: FinLattice, S: Iterable[int]) -> int:
    """Least upper bound of ``S``; the empty join is the bottom."""
    S = list(S)
    m = L.lub(S)
    if m is None:
        raise NotALattice(
            f"{[L.labels[s] for s in S]} has no join in {L.name!r}",
            witness=tuple(L.labels[s] for s in S[:2]),
        )
    return m


def _canonical_order(labels: Sequence[str], down: list[int]) -> tuple[list[str], list[int]]:
    """Relabel so that indices are sorted by (height, label)."""
    n = len(labels)
    height = [-1] * n
    # a strict predecessor always has a smaller down-set
    order = sorted(range(n), key=lambda i: _popcount(down[i]))
    for i in order:
        strict = down[i] & ~(1 << i)
        height[i] = max((height[z] + 1 for z in _bits(strict)), default=0)
    perm = sorted(range(n), key=lambda i: (height[i], labels[i]))
    pos = {old: new for new, old in enumerate(perm)}
    new_down = []
    for old in perm:
        mask = 0
        for k in _bits(down[old]):
            mask |= 1 << pos[k]
        new_down.append(mask)
    return [labels[i] for i in perm], new_down


def build_poset(
    labels: Sequence[str], cover_pairs: Iterable[tuple[str, str]], name: str = ""
) -> FinLattice:
    """Bounded poset generated by ``cover_pairs`` (lower, upper); no lattice check."""
    labels = list(labels)
    if len(set(labels)) != len(labels):
        dup = next(lab for lab in labels if labels.count(lab) > 1)
        raise DuplicateLabel(f"label {dup!r} occurs twice")
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    succ: list[set[int]] = [set() for _ in range(n)]
    for lo, hi in cover_pairs:
        if lo not in idx or hi not in idx:
            missing = lo if lo not in idx else hi
            raise UnknownLabel(f"cover pair ({lo!r}, {hi!r}) uses unknown label {missing!r}")
        if lo == hi:
            raise CycleDetected(f"self-loop at {lo!r}")
        succ[idx[lo]].add(idx[hi])

    # Kahn's algorithm; leftover vertices lie on a cycle
    indeg = [0] * n
    for s in succ:
        for t in s:
            indeg[t] += 1
    queue = [i for i in range(n) if indeg[i] == 0]
    topo = []
    while queue:
        v = queue.pop()
        topo.append(v)
        for t in succ[v]:
            indeg[t] -= 1
            if indeg[t] == 0:
                queue.append(t)
    if len(topo) != n:
        stuck = sorted(labels[i] for i in range(n) if indeg[i] > 0)
        raise CycleDetected(f"cover relation has a cycle through {stuck}")

    down = [1 << i for i in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for t in succ[v]:
            pred[t].append(v)
    for v in topo:
        for p in pred[v]:
            down[v] |= down[p]

    sorted_labels, sorted_down = _canonical_order(labels, down)
    return FinLattice(sorted_labels, sorted_down, name)


def is_lattice(P: FinLattice) -> Verdict:
    """Check that every pair of elements has a meet and a join."""
    for x, y in itertools.combinations(P.elements, 2):
        if P.glb((x, y)) is None:
            return Verdict(False, (P.labels[x], P.labels[y]), {"missing": "meet"})
        if P.lub((x, y)) is None:
            return Verdict(False, (P.labels[x], P.labels[y]), {"missing": "join"})
    return Verdict(True)


def build_lattice(
    labels: Sequence[str], cover_pairs: Iterable[tuple[str, str]], name: str = ""
) -> FinLattice:
    P = build_poset(labels, cover_pairs, name)
    verdict = is_lattice(P)
    if not verdict:
        a, b = verdict.witness
        raise NotALattice(
            f"{a!r} and {b!r} have no {verdict.info['missing']} in {name!r}",
            witness=verdict.witness,
        )
    return P


def from_leq_masks(labels: Sequence[str], down: Sequence[int], name: str = "") -> FinLattice:
    """Build from transitively closed down-set masks, canonically sorted."""
    sorted_labels, sorted_down = _canonical_order(list(labels), list(down))
    return FinLattice(sorted_labels, sorted_down, name)


# built-in corpus

FIG1_ELEMENTS = ["bot", "w", "v", "x", "y", "z", "top"]
FIG1_COVERS = [
    ("bot", "w"), ("bot", "v"), ("w", "x"), ("w", "y"), ("v", "y"), ("v", "z"),
    ("x", "top"), ("y", "top"), ("z", "top"),
]

FIG2_ELEMENTS = ["bot", "i", "j", "g", "h", "f", "d", "e", "c", "a", "b", "top"]
FIG2_COVERS = [
    ("bot", "i"), ("bot", "j"), ("i", "g"), ("i", "h"), ("g", "f"), ("h", "f"),
    ("g", "d"), ("h", "e"), ("f", "c"), ("j", "c"), ("c", "a"), ("c", "b"),
    ("d", "a"), ("e", "b"), ("a", "top"), ("b", "top"),
]


def _chain(n: int) -> FinLattice:
    if n < 1:
        raise BadParams("chain needs n >= 1")
    labels = [str(i) for i in range(n)]
    return build_lattice(labels, [(str(i), str(i + 1)) for i in range(n - 1)], f"chain{n}")


def _subset_label(mask: int, n: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(n) if (mask >> i) & 1) + "}"


def _boolean(n: int) -> FinLattice:
    if n < 0:
        raise BadParams("boolean needs n >= 0")
    labels = [_subset_label(m, n) for m in range(1 << n)]
    covers = [
        (labels[m], labels[m | (1 << i)])
        for m in range(1 << n) for i in range(n) if not (m >> i) & 1
    ]
    return build_lattice(labels, covers, f"boolean{n}")


def inversion_set(perm: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Value pairs (a, b) with a < b and b placed before a."""
    return frozenset(
        (perm[j], perm[i])
        for i in range(len(perm)) for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )


def _weak_order(n: int) -> FinLattice:
    if n < 1:
        raise BadParams("weak_order needs n >= 1")
    if n > 6:
        raise BadParams("weak_order is limited to n <= 6")
    perms = list(itertools.permutations(range(1, n + 1)))
    label = lambda p: "".join(map(str, p))  # noqa: E731
    covers = []
    for p in perms:
        for i in range(n - 1):
            if p[i] < p[i + 1]:
                q = list(p)
                q[i], q[i + 1] = q[i + 1], q[i]
                covers.append((label(p), label(q)))
    return build_lattice([label(p) for p in perms], covers, f"weak_order{n}")


def _diamond_m3() -> FinLattice:
    return build_lattice(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"), ("a", "top"), ("b", "top"), ("c", "top")],
        "M3",
    )


def _pentagon_n5() -> FinLattice:
    return build_lattice(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("a", "b"), ("b", "top"), ("bot", "c"), ("c", "top")],
        "N5",
    )


FAMILIES = ("fig1", "fig2", "chain", "boolean", "weak_order", "diamond_M3", "pentagon_N5")


def generate(family: str, n: int | None = None) -> FinLattice:
    """Named lattice from the built-in corpus.

    ``chain``, ``boolean`` and ``weak_order`` take the size parameter ``n``.
    """
    if family == "fig1":
        return build_lattice(FIG1_ELEMENTS, FIG1_COVERS, "fig1")
    if family == "fig2":
        return build_lattice(FIG2_ELEMENTS, FIG2_COVERS, "fig2")
    if family in ("diamond_M3", "M3"):
        return _diamond_m3()
    if family in ("pentagon_N5", "N5"):
        return _pentagon_n5()
    builders = {"chain": _chain, "boolean": _boolean, "weak_order": _weak_order}
    if family not in builders:
        raise UnknownFamily(f"unknown lattice family {family!r}")
    if n is None or isinstance(n, bool) or not isinstance(n, int):
        raise BadParams(f"family {family!r} needs an integer n")
    return builders[family](n)


# serialisation

def lattice_to_json(L: FinLattice) -> dict:
    return {
        "name": L.name,
        "elements": list(L.labels),
        "covers": [[L.labels[a], L.labels[b]] for a, b in L.covers],
    }


def lattice_from_json(data: dict, check: bool = True) -> FinLattice:
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise BadParams("lattice JSON needs 'elements' and 'covers'")
    elements = data["elements"]
    covers = data["covers"]
    if not isinstance(elements, list) or not elements:
        raise BadParams("'elements' must be a non-empty list")
    if not all(isinstance(e, str) for e in elements):
        raise BadParams("element labels must be strings")
    try:
        pairs = [(str(a), str(b)) for a, b in covers]
    except (TypeError, ValueError):
        raise BadParams("'covers' must be a list of [lower, upper] pairs") from None
    builder = build_lattice if check else build_poset
    return builder(elements, pairs, str(data.get("name", "")))


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj, name: str | None = None, annotations: dict[int, str] | None = None) -> str:
    """Graphviz digraph of the Hasse quiver: one edge upper -> lower per cover.

    Accepts a :class:`FinLattice` or anything with a ``poset`` attribute
    holding one (such as a binuclear interval order).  ``annotations`` maps
    element indices to extra text shown in the node label.
    """
    L = obj if isinstance(obj, FinLattice) else obj.poset
    title = name or L.name or "L"
    lines = [f"digraph {_dot_id(title)} {{", "  rankdir=BT;"]
    for i, lab in enumerate(L.labels):
        text = lab if not annotations or i not in annotations else f"{lab}\\n{annotations[i]}"
        lines.append(f"  {_dot_id(lab)} [label={_dot_id(text)}];")
    for lo, hi in L.covers:
        lines.append(f"  {_dot_id(L.labels[hi])} -> {_dot_id(L.labels[lo])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_EDGE_RE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"\s*;')


def parse_dot_edges(text: str) -> list[tuple[str, str]]:
    """Recover (lower, upper) cover pairs from :func:`export_dot` output."""
    unescape = lambda s: s.replace('\\"', '"').replace("\\\\", "\\")  # noqa: E731
    out = []
    for line in text.splitlines():
        m = _EDGE_RE.match(line)
        if m:
            out.append((unescape(m.group(2)), unescape(m.group(1))))
    return out
