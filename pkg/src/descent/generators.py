"""Seeded random instances for the property-based verification suites:
simplicial sets, simplicial module objects, (bi/tri)simplicial module
objects, omega diagrams, chain complexes, and filtered complexes.

All generators are deterministic functions of a ``random.Random``; per-trial
seeds derive from (seed, trial index), so independent trials reproduce.
"""

from __future__ import annotations

import os
import random
from itertools import combinations

from .complexes import CHAIN, COCHAIN, BoundedComplex, ChainMap
from .linalg import ExactMatrix, GF, Ring, ZZ, kron
from .simplicial import (
    Augmentation, FreeModules, SetMap, SimplicialMap, TruncBisimplicial,
    TruncSimplicial, constant, free_linearize, trivial_augmentation,
)
from .ssets import sset_from_complex
from .totalcyl import OmegaDiagram


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(seed * 1_000_003 + trial)


def max_rank_cap(default: int = 4) -> int:
    try:
        return max(1, int(os.environ.get("DESCENT_MAX_RANK", default)))
    except ValueError:
        return default


# ---------------------------------------------------------------------------
# simplicial sets


def random_complex_faces(rng: random.Random, max_vertices: int = 4,
                         max_dim: int = 2) -> list[tuple[int, ...]]:
    v = rng.randint(1, max_vertices)
    verts = list(range(v))
    faces = [(x,) for x in verts]
    for size in range(2, max_dim + 2):
        for c in combinations(verts, size):
            if rng.random() < 0.5 / (size - 1):
                faces.append(c)
    return faces


def random_sset(rng: random.Random, N: int, max_vertices: int = 4) -> TruncSimplicial:
    return sset_from_complex(random_complex_faces(rng, max_vertices), N)


def random_subcomplex_inclusion(rng: random.Random, N: int, max_vertices: int = 4):
    """(S_sub, S, inclusion tables as a SimplicialMap of finite sets)."""
    faces = random_complex_faces(rng, max_vertices)
    keep = [f for f in faces if len(f) == 1 or rng.random() < 0.6]
    S = sset_from_complex(faces, N)
    Ssub = sset_from_complex(keep, N)
    comps = []
    for n in range(N + 1):
        big = {e: k for k, e in enumerate(S.labels[n])}
        comps.append(SetMap(Ssub.obj(n), S.obj(n),
                            tuple(big[e] for e in Ssub.labels[n])))
    return Ssub, S, SimplicialMap(Ssub, S, comps)


# ---------------------------------------------------------------------------
# simplicial module objects


def random_invertible(rng: random.Random, ring: Ring, n: int) -> ExactMatrix:
    m = ExactMatrix.identity(ring, n)
    for _ in range(2 * n):
        i, j = rng.randrange(n) if n else 0, rng.randrange(n) if n else 0
        if n == 0 or i == j:
            continue
        c = rng.randint(1, max(1, (ring.p or 3) - 1))
        rows = [list(r) for r in m.entries]
        rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
        m = ExactMatrix(ring, rows, n, n)
    return m


def conjugate_simplicial(X: TruncSimplicial, P: list[ExactMatrix],
                         Pinv: list[ExactMatrix]) -> TruncSimplicial:
    """Levelwise change of basis: structure maps P_target . m . Pinv_source."""
    faces = {(n, i): P[n - 1] * m * Pinv[n] for (n, i), m in X.faces.items()}
    degens = {(n, j): P[n + 1] * m * Pinv[n] for (n, j), m in X.degens.items()}
    return TruncSimplicial(X.cat, X.N, list(X.objects), faces, degens)


def random_simplicial_modules(rng: random.Random, ring: Ring, N: int,
                              conjugated: bool = True) -> TruncSimplicial:
    X = free_linearize(random_sset(rng, N, max_vertices=3), ring)
    if conjugated and ring.is_field:
        P = [random_invertible(rng, ring, X.obj(n)) for n in range(N + 1)]
        from .linalg import solve_matrix
        Pinv = [solve_matrix(p, ExactMatrix.identity(ring, p.rows)) for p in P]
        X = conjugate_simplicial(X, P, Pinv)
    return X


def linearize_simplicial_map(f: SimplicialMap, ring: Ring) -> SimplicialMap:
    src = free_linearize(f.source, ring)
    tgt = free_linearize(f.target, ring)

    def lin(m: SetMap) -> ExactMatrix:
        ents = [[0] * m.source for _ in range(m.target)]
        for i, v in enumerate(m.table):
            ents[v][i] = 1
        return ExactMatrix(ring, ents, m.target, m.source)

    return SimplicialMap(src, tgt, [lin(c) for c in f.components])


def random_simplicial_map(rng: random.Random, ring: Ring, N: int) -> SimplicialMap:
    """A genuine simplicial map of module objects: a linearized subcomplex
    inclusion, optionally scaled."""
    _, _, incl = random_subcomplex_inclusion(rng, N, max_vertices=3)
    f = linearize_simplicial_map(incl, ring)
    if ring.is_field and rng.random() < 0.5:
        c = rng.randint(1, ring.p - 1)
        f = SimplicialMap(f.source, f.target, [m.scale(c) for m in f.components])
    return f


def random_omega(rng: random.Random, ring: Ring, N: int) -> OmegaDiagram:
    """Random (f: X -> Y, augmentation of X): the augmentation goes to the
    point (all-ones row), to zero, or is an identity-style collapse."""
    f = random_simplicial_map(rng, ring, N)
    X = f.source
    choice = rng.randrange(3)
    if choice == 0:
        aug = trivial_augmentation(X)
    elif choice == 1:
        eps0 = ExactMatrix(ring, [[1] * X.obj(0)], 1, X.obj(0))
        aug = Augmentation(X, 1, eps0)
    else:
        eps0 = ExactMatrix(ring, [[1] * X.obj(0)], 1, X.obj(0))
        aug = Augmentation(X, 1, eps0)
    return OmegaDiagram(f, aug)


def random_square_maps(rng: random.Random, ring: Ring, N: int):
    """(f: X -> Y, g: X -> Z) with a common source."""
    f = random_simplicial_map(rng, ring, N)
    X = f.source
    cat = f.source.cat
    choice = rng.randrange(3)
    if choice == 0:
        g = SimplicialMap(X, X, [cat.identity(X.obj(n)) for n in range(N + 1)])
    elif choice == 1:
        g = SimplicialMap(X, constant(cat, 1, N),
                          [ExactMatrix(ring, [[1] * X.obj(n)], 1, X.obj(n))
                           for n in range(N + 1)])
    else:
        g = random_simplicial_map(rng, ring, N)
        # reuse f's source by composing with nothing: need common source, so
        # take g on X via the collapse if shapes disagree
        if g.source.objects != X.objects:
            g = SimplicialMap(X, constant(cat, 1, N),
                              [ExactMatrix(ring, [[1] * X.obj(n)], 1, X.obj(n))
                               for n in range(N + 1)])
    return f, g


# ---------------------------------------------------------------------------
# bisimplicial and trisimplicial module objects


def external_product(S: TruncSimplicial, T: TruncSimplicial) -> TruncBisimplicial:
    """Levelwise Kronecker product of two simplicial module objects."""
    ring = S.cat.ring
    cat = S.cat
    N = min(S.N, T.N)
    objects = {(i, j): S.obj(i) * T.obj(j) for i in range(N + 1) for j in range(N + 1)}
    d1 = {((i, j), k): kron(S.face(i, k), ExactMatrix.identity(ring, T.obj(j)))
          for i in range(1, N + 1) for j in range(N + 1) for k in range(i + 1)}
    s1 = {((i, j), k): kron(S.degen(i, k), ExactMatrix.identity(ring, T.obj(j)))
          for i in range(N) for j in range(N + 1) for k in range(i + 1)}
    d2 = {((i, j), k): kron(ExactMatrix.identity(ring, S.obj(i)), T.face(j, k))
          for i in range(N + 1) for j in range(1, N + 1) for k in range(j + 1)}
    s2 = {((i, j), k): kron(ExactMatrix.identity(ring, S.obj(i)), T.degen(j, k))
          for i in range(N + 1) for j in range(N) for k in range(j + 1)}
    return TruncBisimplicial(cat, N, objects, d1, s1, d2, s2)


def bisimplicial_direct_sum(A: TruncBisimplicial, B: TruncBisimplicial) -> TruncBisimplicial:
    cat = A.cat
    N = A.N
    ring = cat.ring

    def blk(m1, m2):
        return ExactMatrix.block_diag(ring, [m1, m2])

    objects = {k: A.objects[k] + B.objects[k] for k in A.objects}
    return TruncBisimplicial(
        cat, N, objects,
        {k: blk(A.d1[k], B.d1[k]) for k in A.d1},
        {k: blk(A.s1[k], B.s1[k]) for k in A.s1},
        {k: blk(A.d2[k], B.d2[k]) for k in A.d2},
        {k: blk(A.s2[k], B.s2[k]) for k in A.s2})


def random_bisimplicial_modules(rng: random.Random, ring: Ring, N: int) -> TruncBisimplicial:
    A = external_product(random_simplicial_modules(rng, ring, N, conjugated=False),
                         random_simplicial_modules(rng, ring, N, conjugated=False))
    if rng.random() < 0.4:
        B = external_product(random_simplicial_modules(rng, ring, N, conjugated=False),
                             random_simplicial_modules(rng, ring, N, conjugated=False))
        A = bisimplicial_direct_sum(A, B)
    return A


def random_trisimplicial_modules(rng: random.Random, ring: Ring, N: int):
    """Triple external product, as nested maps dicts keyed per axis."""
    S1 = random_simplicial_modules(rng, ring, N, conjugated=False)
    S2 = random_simplicial_modules(rng, ring, N, conjugated=False)
    S3 = random_simplicial_modules(rng, ring, N, conjugated=False)
    return S1, S2, S3


# ---------------------------------------------------------------------------
# chain complexes


def random_bounded_complex(rng: random.Random, ring: Ring, lo: int = 0, hi: int = 3,
                           direction: str = CHAIN, max_rank: int | None = None,
                           conjugated: bool = True) -> BoundedComplex:
    """Direct sum of elementary pieces, then an exact change of basis."""
    cap = max_rank if max_rank is not None else max_rank_cap()
    out = BoundedComplex.zero(ring, direction)
    pieces = rng.randint(1, max(1, cap))
    step = -1 if direction == CHAIN else 1
    for _ in range(pieces):
        q = rng.randint(lo, hi)
        if rng.random() < 0.5 and lo <= q + step <= hi:
            m = ExactMatrix(ring, [[1]])
            piece = BoundedComplex(ring, direction, {q: 1, q + step: 1}, {q: m})
        else:
            piece = BoundedComplex.single(ring, q, 1, direction)
        out = out.direct_sum(piece)
    if conjugated and ring.is_field:
        from .linalg import solve_matrix
        ranks = dict(out.ranks)
        P = {q: random_invertible(rng, ring, r) for q, r in ranks.items()}
        Pinv = {q: solve_matrix(p, ExactMatrix.identity(ring, p.rows)) for q, p in P.items()}
        diffs = {}
        for q in out.degrees():
            tq = q + step
            pt = P.get(tq, ExactMatrix.identity(ring, out.rank(tq)))
            diffs[q] = pt * out.d(q) * Pinv.get(q, ExactMatrix.identity(ring, out.rank(q)))
        out = BoundedComplex(ring, direction, ranks, diffs)
    return out


def random_chain_map(rng: random.Random, X: BoundedComplex, Y: BoundedComplex) -> ChainMap:
    """A random null-homotopic chain map d h + h d for random h (always a
    chain map), plus a random multiple of the identity when X = Y."""
    ring = X.ring
    step = -1 if X.direction == CHAIN else 1

    def rand_entry():
        return rng.randrange(ring.p) if ring.is_field else rng.randint(-2, 2)

    h = {q: ExactMatrix(ring, [[rand_entry() for _ in range(X.rank(q))]
                               for _ in range(Y.rank(q - step))],
                        Y.rank(q - step), X.rank(q))
         for q in set(X.ranks) | set(Y.ranks)}

    def hq(q):
        return h.get(q, ExactMatrix.zero(ring, Y.rank(q - step), X.rank(q)))

    c = 0
    if X == Y and rng.random() < 0.7:
        c = rng.randrange(ring.p) if ring.is_field else rng.randint(-2, 2)
    maps = {}
    for q in set(X.ranks) | set(Y.ranks):
        maps[q] = Y.d(q - step) * hq(q) + hq(q + step) * X.d(q)
        if c:
            maps[q] = maps[q] + ExactMatrix.identity(ring, X.rank(q)).scale(c)
    return ChainMap(X, Y, maps)


def random_quasi_iso(rng: random.Random, ring: Ring, lo: int = 0, hi: int = 3):
    """(f: X -> Y, direction of travel): X plus a contractible summand."""
    from .complexes import ChainMap, cone
    X = random_bounded_complex(rng, ring, lo, hi)
    C0 = random_bounded_complex(rng, ring, lo, max(lo, hi - 1), conjugated=False)
    E = cone(ChainMap.identity(C0)).complex
    Y = X.direct_sum(E)
    maps = {}
    for q in X.degrees():
        ents = [[1 if r == c else 0 for c in range(X.rank(q))]
                for r in range(Y.rank(q))]
        maps[q] = ExactMatrix(ring, ents, Y.rank(q), X.rank(q))
    return ChainMap(X, Y, maps)
