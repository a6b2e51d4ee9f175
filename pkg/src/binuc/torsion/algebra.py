"""Combinatorial description of a representation-finite algebra.

Subcategories are additive closures of sets of indecomposables and are
stored as integer bitmasks over the indecomposable indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from ..errors import InvariantViolation, SchemaError
from ..lattice import _bits

Subcat = int


@dataclass(frozen=True)
class Indec:
    id: str
    dim: tuple[int, ...]
    projective: bool
    end_dim: int
    g: tuple[int, ...]
    quotients: tuple[str, ...]
    tau: str | None = None


@dataclass(frozen=True)
class Ses:
    """A short exact sequence; each term is a sorted tuple of summand indices."""

    sub: tuple[int, ...]
    mid: tuple[int, ...]
    quot: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    name: str
    rank: int
    indecs: tuple[Indec, ...]
    hom: frozenset[tuple[int, int]]
    ses: tuple[Ses, ...]

    def __len__(self) -> int:
        return len(self.indecs)

    @cached_property
    def index(self) -> dict[str, int]:
        return {X.id: i for i, X in enumerate(self.indecs)}

    @property
    def full(self) -> Subcat:
        return (1 << len(self.indecs)) - 1

    @cached_property
    def hom_out(self) -> tuple[Subcat, ...]:
        """``hom_out[x]``: indecomposables y with Hom(x, y) nonzero."""
        out = [0] * len(self.indecs)
        for x, y in self.hom:
            out[x] |= 1 << y
        return tuple(out)

    @cached_property
    def hom_in(self) -> tuple[Subcat, ...]:
        into = [0] * len(self.indecs)
        for x, y in self.hom:
            into[y] |= 1 << x
        return tuple(into)

    @cached_property
    def quot_mask(self) -> tuple[Subcat, ...]:
        return tuple(self.mask(X.quotients) for X in self.indecs)

    @cached_property
    def tau_index(self) -> tuple[int | None, ...]:
        return tuple(None if X.tau is None else self.index[X.tau] for X in self.indecs)

    @cached_property
    def projectives(self) -> Subcat:
        return sum(1 << i for i, X in enumerate(self.indecs) if X.projective)

    def has_hom(self, x: int, y: int) -> bool:
        return (self.hom_out[x] >> y) & 1 == 1

    def mask(self, ids) -> Subcat:
        m = 0
        for name in ids:
            m |= 1 << self.resolve(name)
        return m

    def ids(self, mask: Subcat) -> list[str]:
        return [self.indecs[i].id for i in _bits(mask)]

    def tau_of(self, mask: Subcat) -> Subcat:
        out = 0
        for i in _bits(mask):
            t = self.tau_index[i]
            if t is not None:
                out |= 1 << t
        return out

    def resolve(self, name: str) -> int:
        """Index of an indecomposable given by id or as P(i), S(i), I(i)."""
        if name in self.index:
            return self.index[name]
        m = re.fullmatch(r"\s*([PSI])\((\d+)\)\s*", name)
        if not m:
            raise KeyError(name)
        kind, i = m.group(1), int(m.group(2))
        if not 1 <= i <= self.rank:
            raise KeyError(name)
        unit = tuple(int(k == i - 1) for k in range(self.rank))
        if kind == "S":
            target = [k for k, X in enumerate(self.indecs) if X.dim == unit]
        elif kind == "P":
            target = [k for k, X in enumerate(self.indecs) if X.projective and X.g == unit]
        else:
            proj = {X.g.index(1): X for X in self.indecs if X.projective and sum(map(abs, X.g)) == 1}
            if len(proj) != self.rank:
                raise KeyError(name)
            # I(i) at vertex v has the multiplicity of vertex i in P(v)
            dim = tuple(proj[v].dim[i - 1] for v in range(self.rank))
            target = [k for k, X in enumerate(self.indecs) if X.dim == dim]
        if len(target) != 1:
            raise KeyError(name)
        return target[0]


def validate(spec: AlgebraSpec) -> AlgebraSpec:
    n = spec.rank
    if n < 1:
        raise InvariantViolation("rank must be positive", spec.rank)
    if len(spec.index) != len(spec.indecs):
        raise InvariantViolation("duplicate indecomposable ids")
    for X in spec.indecs:
        if len(X.dim) != n or len(X.g) != n:
            raise InvariantViolation(f"{X.id}: vector length differs from rank", X.id)
        if min(X.dim) < 0 or sum(X.dim) == 0:
            raise InvariantViolation(f"{X.id}: bad dimension vector", X.id)
        if X.end_dim < 1:
            raise InvariantViolation(f"{X.id}: end_dim must be positive", X.id)
        unknown = [q for q in X.quotients if q not in spec.index]
        if unknown:
            raise InvariantViolation(f"{X.id}: unknown quotients {unknown}", X.id)
        if X.id not in X.quotients:
            raise InvariantViolation(f"{X.id}: quotient list must contain the module itself", X.id)
        if X.projective != (X.tau is None):
            raise InvariantViolation(f"{X.id}: tau must be defined exactly on non-projectives", X.id)
        if X.tau is not None and X.tau not in spec.index:
            raise InvariantViolation(f"{X.id}: unknown tau {X.tau}", X.id)
    for x in range(len(spec.indecs)):
        if (x, x) not in spec.hom:
            raise InvariantViolation(f"hom is not reflexive at {spec.indecs[x].id}", spec.indecs[x].id)
    for s in spec.ses:
        total = [0] * n
        for i in s.sub + s.quot:
            total = [a + b for a, b in zip(total, spec.indecs[i].dim)]
        mid = [0] * n
        for i in s.mid:
            mid = [a + b for a, b in zip(mid, spec.indecs[i].dim)]
        if total != mid:
            raise InvariantViolation("dimension vectors are not additive", _ses_json(spec, s))
    return spec


def _ses_json(spec: AlgebraSpec, s: Ses) -> dict:
    return {k: [spec.indecs[i].id for i in getattr(s, k)] for k in ("sub", "mid", "quot")}


def to_json(spec: AlgebraSpec) -> dict:
    return {
        "name": spec.name,
        "rank": spec.rank,
        "indecomposables": [
            {
                "id": X.id,
                "dim": list(X.dim),
                "projective": X.projective,
                "end_dim": X.end_dim,
                "g": list(X.g),
                "quotients": list(X.quotients),
                "tau": X.tau,
            }
            for X in spec.indecs
        ],
        "hom": [[spec.indecs[x].id, spec.indecs[y].id] for x, y in sorted(spec.hom)],
        "ses": [_ses_json(spec, s) for s in spec.ses],
    }


def _int_list(value, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise SchemaError(f"{what} must be a list of integers")
    return tuple(value)


def _str_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaError(f"{what} must be a list of strings")
    return value


def load_algebra(data: dict) -> AlgebraSpec:
    """Parse and validate algebra JSON (already decoded)."""
    if not isinstance(data, dict):
        raise SchemaError("algebra JSON must be an object")
    for key in ("name", "rank", "indecomposables", "hom", "ses"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}")
    if not isinstance(data["rank"], int) or isinstance(data["rank"], bool):
        raise SchemaError("rank must be an integer")
    if not isinstance(data["indecomposables"], list) or not data["indecomposables"]:
        raise SchemaError("indecomposables must be a non-empty list")
    indecs = []
    for entry in data["indecomposables"]:
        if not isinstance(entry, dict):
            raise SchemaError("indecomposable entries must be objects")
        try:
            tau = entry.get("tau")
            if tau is not None and not isinstance(tau, str):
                raise SchemaError("tau must be a string or null")
            indecs.append(Indec(
                id=str(entry["id"]),
                dim=_int_list(entry["dim"], "dim"),
                projective=bool(entry["projective"]),
                end_dim=int(entry.get("end_dim", 1)),
                g=_int_list(entry["g"], "g"),
                quotients=tuple(_str_list(entry["quotients"], "quotients")),
                tau=tau,
            ))
        except KeyError as e:
            raise SchemaError(f"indecomposable entry missing {e.args[0]!r}") from None
    index = {X.id: i for i, X in enumerate(indecs)}

    def lookup(name):
        if name not in index:
            raise InvariantViolation(f"unknown module {name!r}", name)
        return index[name]

    hom = set()
    for pair in data["hom"]:
        pair = _str_list(pair, "hom entry")
        if len(pair) != 2:
            raise SchemaError("hom entries must be pairs")
        hom.add((lookup(pair[0]), lookup(pair[1])))
    ses = []
    for entry in data["ses"]:
        if not isinstance(entry, dict) or not {"sub", "mid", "quot"} <= entry.keys():
            raise SchemaError("ses entries need sub, mid and quot")
        parts = [tuple(sorted(lookup(i) for i in _str_list(entry[k], k))) for k in ("sub", "mid", "quot")]
        ses.append(Ses(*parts))
    spec = AlgebraSpec(str(data["name"]), data["rank"], tuple(indecs), frozenset(hom), tuple(ses))
    return validate(spec)
