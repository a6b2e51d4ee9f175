"""Path algebras of type A with any orientation.

Indecomposables are the interval modules ``M[a,b]``. Hom, quotients and
sequences with an indecomposable middle term follow from interval
combinatorics; extensions between indecomposables are built explicitly as
representations and decomposed through their Hom vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import BadRank, BinucError
from .algebra import AlgebraSpec, Indec, Ses, validate

MAX_RANK = 6


def parse_orientation(n: int, orientation: str | None) -> tuple[tuple[int, int], ...]:
    """Arrows as (source, target) on vertices 1..n.

    One character per edge {i, i+1}: ``<`` for i+1 -> i (the default) and
    ``>`` for i -> i+1.
    """
    orientation = "<" * (n - 1) if orientation is None else orientation
    if len(orientation) != n - 1 or set(orientation) - {"<", ">"}:
        raise BadRank(f"orientation needs {n - 1} characters from '<>', got {orientation!r}")
    return tuple((i + 1, i) if c == "<" else (i, i + 1) for i, c in enumerate(orientation, start=1))


def _successors(arrows) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for s, t in arrows:
        out.setdefault(s, []).append(t)
    return out


def _closed(vertices: frozenset[int], support: frozenset[int], succ) -> bool:
    """Closed under arrows inside ``support``, i.e. spans a submodule."""
    return all(w in vertices for v in vertices for w in succ.get(v, ()) if w in support)


def _components(vertices) -> list[tuple[int, int]]:
    out = []
    for v in sorted(vertices):
        if out and out[-1][1] == v - 1:
            out[-1] = (out[-1][0], v)
        else:
            out.append((v, v))
    return out


def _span(a: int, b: int) -> frozenset[int]:
    return frozenset(range(a, b + 1))


def module_id(a: int, b: int) -> str:
    return f"M[{a},{b}]"


# linear algebra on representations


@dataclass(frozen=True)
class Rep:
    dims: tuple[int, ...]
    maps: dict[tuple[int, int], np.ndarray]  # arrow -> matrix of shape (dims[t], dims[s])


def interval_rep(n: int, arrows, a: int, b: int) -> Rep:
    dims = tuple(int(a <= v <= b) for v in range(1, n + 1))
    maps = {(s, t): np.full((dims[t - 1], dims[s - 1]), 1.0) for s, t in arrows}
    return Rep(dims, maps)


def _hom_system(V: Rep, W: Rep, arrows) -> tuple[np.ndarray, int, int]:
    """Matrix of f -> (W_a f_s - f_t V_a)_a on families f_v: V_v -> W_v."""
    offsets, size = [], 0
    for dv, dw in zip(V.dims, W.dims):
        offsets.append(size)
        size += dv * dw
    blocks = []
    for s, t in arrows:
        rows = W.dims[t - 1] * V.dims[s - 1]
        block = np.zeros((rows, size))
        if rows:
            i, j = s - 1, t - 1
            # row-major vec: vec(A X B) = (A kron B^T) vec(X)
            block[:, offsets[i]:offsets[i] + V.dims[i] * W.dims[i]] += np.kron(W.maps[s, t], np.eye(V.dims[i]))
            block[:, offsets[j]:offsets[j] + V.dims[j] * W.dims[j]] -= np.kron(np.eye(W.dims[j]), V.maps[s, t].T)
        blocks.append(block)
    target = sum(b.shape[0] for b in blocks)
    matrix = np.vstack(blocks) if blocks else np.zeros((0, size))
    return matrix, size, target


def _rank(M: np.ndarray) -> int:
    return int(np.linalg.matrix_rank(M)) if M.size else 0


def hom_dim(V: Rep, W: Rep, arrows) -> int:
    M, size, _ = _hom_system(V, W, arrows)
    return size - _rank(M)


def ext_dim(Z: Rep, X: Rep, arrows) -> int:
    """dim Ext^1(Z, X) as the cokernel of the same system."""
    M, _, target = _hom_system(Z, X, arrows)
    return target - _rank(M)


def extension(X: Rep, Z: Rep, arrows) -> Rep | None:
    """Middle term of a non-split sequence 0 -> X -> E -> Z -> 0, or None."""
    M, _, target = _hom_system(Z, X, arrows)
    r = _rank(M)
    if target == r:
        return None
    for k in range(target):
        e = np.zeros((target, 1))
        e[k] = 1.0
        if _rank(np.hstack([M, e])) > r:
            break
    maps, pos = {}, 0
    for s, t in arrows:
        rows, cols = X.dims[t - 1], Z.dims[s - 1]
        eta = e[pos:pos + rows * cols, 0].reshape(rows, cols)
        pos += rows * cols
        top = np.hstack([X.maps[s, t], eta])
        bottom = np.hstack([np.zeros((Z.dims[t - 1], X.dims[s - 1])), Z.maps[s, t]])
        maps[s, t] = np.vstack([top, bottom])
    return Rep(tuple(x + z for x, z in zip(X.dims, Z.dims)), maps)


def decompose(E: Rep, reps: list[Rep], hom_matrix: np.ndarray, arrows) -> list[int]:
    """Multiplicity of each indecomposable in ``E``.

    Modules over a representation-finite algebra are determined by their Hom
    dimensions from indecomposables, and the Hom matrix is invertible.
    """
    h = np.array([hom_dim(M, E, arrows) for M in reps], dtype=float)
    mult = np.rint(np.linalg.solve(hom_matrix, h)).astype(int)
    if (mult < 0).any() or not np.array_equal(hom_matrix.astype(int) @ mult, h.astype(int)):
        raise BinucError("could not decompose extension module")
    return mult.tolist()


# combinatorial data


def euler_matrix(n: int, arrows) -> np.ndarray:
    E = np.eye(n, dtype=int)
    for s, t in arrows:
        E[s - 1, t - 1] -= 1
    return E


def coxeter_matrix(n: int, arrows) -> np.ndarray:
    E = euler_matrix(n, arrows)
    return -np.rint(np.linalg.inv(E) @ E.T).astype(int)


def gen_linear_An(n: int, orientation: str | None = None) -> AlgebraSpec:
    """Interval-module data for the path algebra of an A_n quiver, 1 <= n <= 6."""
    if not isinstance(n, int) or not 1 <= n <= MAX_RANK:
        raise BadRank(f"rank must be between 1 and {MAX_RANK}, got {n!r}")
    arrows = parse_orientation(n, orientation)
    succ = _successors(arrows)
    intervals = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    index = {iv: k for k, iv in enumerate(intervals)}
    support = {iv: _span(*iv) for iv in intervals}

    def is_quotient(J, X):
        return support[J] <= support[X] and _closed(support[X] - support[J], support[X], succ)

    def is_sub(J, X):
        return support[J] <= support[X] and _closed(support[J], support[X], succ)

    hom = set()
    for X in intervals:
        for Y in intervals:
            common = support[X] & support[Y]
            if common:
                J = (min(common), max(common))
                if is_quotient(J, X) and is_sub(J, Y):
                    hom.add((index[X], index[Y]))

    # projective covers: P(i) is supported on everything reachable from i
    proj_support = []
    for i in range(1, n + 1):
        seen, stack = {i}, [i]
        while stack:
            for w in succ.get(stack.pop(), ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        proj_support.append((min(seen), max(seen)))
    cartan = np.array([[int(v in support[P]) for P in proj_support] for v in range(1, n + 1)])
    cartan_inv = np.rint(np.linalg.inv(cartan)).astype(int)
    phi = coxeter_matrix(n, arrows)
    by_dim = {tuple(int(v in support[iv]) for v in range(1, n + 1)): iv for iv in intervals}

    indecs = []
    for iv in intervals:
        dim = tuple(int(v in support[iv]) for v in range(1, n + 1))
        projective = iv in proj_support
        tau = None
        if not projective:
            tau_dim = tuple(int(c) for c in phi @ np.array(dim))
            tau = module_id(*by_dim[tau_dim])
        indecs.append(Indec(
            id=module_id(*iv),
            dim=dim,
            projective=projective,
            end_dim=1,
            g=tuple(int(c) for c in cartan_inv @ np.array(dim)),
            quotients=tuple(module_id(*J) for J in intervals if is_quotient(J, iv)),
            tau=tau,
        ))

    seqs = set()
    for iv in intervals:
        full = support[iv]
        # proper nonzero submodules of an interval module
        verts = sorted(full)
        for bits in range(1, (1 << len(verts)) - 1):
            U = frozenset(v for k, v in enumerate(verts) if bits >> k & 1)
            if _closed(U, full, succ):
                sub = tuple(sorted(index[c] for c in _components(U)))
                quot = tuple(sorted(index[c] for c in _components(full - U)))
                seqs.add(Ses(sub, (index[iv],), quot))

    reps = [interval_rep(n, arrows, *iv) for iv in intervals]
    H = np.array([[float((x, y) in hom) for y in range(len(intervals))] for x in range(len(intervals))])
    for x, X in enumerate(reps):
        for z, Z in enumerate(reps):
            E = extension(X, Z, arrows)
            if E is None:
                continue
            mult = decompose(E, reps, H, arrows)
            mid = tuple(k for k, m in enumerate(mult) for _ in range(m))
            seqs.add(Ses((x,), mid, (z,)))

    name = f"A{n}" if orientation is None or set(orientation) <= {"<"} else f"A{n}{orientation}"
    ses = tuple(sorted(seqs, key=lambda s: (s.mid, s.sub, s.quot)))
    return validate(AlgebraSpec(name, n, tuple(indecs), frozenset(hom), ses))
