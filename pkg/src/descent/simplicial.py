"""Truncated simplicial and cosimplicial objects valued in free modules,
complexes, or finite sets.

A truncation at level N keeps objects O_0..O_N, faces d_i^n for 1 <= n <= N
and degeneracies s_j^n for 0 <= n < N.  Every operation documents its output
level; consumers must only request levels they possess.  Coproducts are
ordered (left-to-right injections) because the total-object and cylinder
formulas index components positionally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

from .complexes import CHAIN, BoundedComplex, ChainMap
from .linalg import ExactMatrix, Ring
from .simplexcat import (
    MonotoneMap, compose as cat_compose, epi_mono_factorize, face as delta_face,
    identity as delta_identity, surjections,
)


# ---------------------------------------------------------------------------
# value categories


@dataclass(frozen=True)
class SetMap:
    source: int
    target: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source:
            raise ValueError("table length mismatch")
        if any(not 0 <= v < self.target for v in self.table):
            raise ValueError("value out of range")


class ValueCategory:
    """Minimal interface every value category implements."""

    name = "abstract"

    def obj_eq(self, a, b) -> bool:
        return a == b

    def mor_eq(self, f, g) -> bool:
        return f == g

    def source(self, f):  # pragma: no cover - interface
        raise NotImplementedError

    def target(self, f):  # pragma: no cover - interface
        raise NotImplementedError

    def identity(self, obj):
        raise NotImplementedError

    def compose(self, f, g):
        """f after g."""
        raise NotImplementedError

    def coproduct(self, objs: Sequence[Any]):
        """(coproduct object, injection list)."""
        raise NotImplementedError

    def assemble(self, src_objs, tgt_objs, routes):
        """Morphism of coproducts from per-component routes.

        routes[i] = (j, f) sends source component i into target component j
        via f; every source component must be routed.
        """
        raise NotImplementedError

    def terminal(self):
        raise NotImplementedError

    def to_terminal(self, obj):
        raise NotImplementedError

    def is_zero_object(self, obj) -> bool:
        raise NotImplementedError


class FreeModules(ValueCategory):
    """Objects are ranks, morphisms are exact matrices."""

    name = "free-modules"

    def __init__(self, ring: Ring):
        self.ring = ring

    def source(self, f: ExactMatrix):
        return f.cols

    def target(self, f: ExactMatrix):
        return f.rows

    def identity(self, obj: int):
        return ExactMatrix.identity(self.ring, obj)

    def compose(self, f, g):
        return f * g

    def coproduct(self, objs):
        total = sum(objs)
        injections = []
        off = 0
        for r in objs:
            blocks = [[ExactMatrix.identity(self.ring, off) if False else None]]
            ents = [[0] * r for _ in range(total)]
            for k in range(r):
                ents[off + k][k] = 1
            injections.append(ExactMatrix(self.ring, ents, total, r))
            off += r
        return total, injections

    def assemble(self, src_objs, tgt_objs, routes):
        blocks = [[None] * len(src_objs) for _ in tgt_objs]
        for i, (j, f) in enumerate(routes):
            if blocks[j][i] is None:
                blocks[j][i] = f
            else:
                blocks[j][i] = blocks[j][i] + f
        return ExactMatrix.from_blocks(self.ring, blocks, list(tgt_objs), list(src_objs))

    def terminal(self):
        return 0

    def to_terminal(self, obj):
        return ExactMatrix.zero(self.ring, 0, obj)

    def is_zero_object(self, obj):
        return obj == 0

    def zero_mor(self, src, tgt):
        return ExactMatrix.zero(self.ring, tgt, src)


class ComplexesCat(ValueCategory):
    """Objects are bounded complexes, morphisms chain maps."""

    name = "complexes"

    def __init__(self, ring: Ring, direction: str = CHAIN):
        self.ring = ring
        self.direction = direction

    def source(self, f: ChainMap):
        return f.source

    def target(self, f: ChainMap):
        return f.target

    def identity(self, obj: BoundedComplex):
        return ChainMap.identity(obj)

    def compose(self, f, g):
        return f.compose(g)

    def coproduct(self, objs):
        total = BoundedComplex.zero(self.ring, self.direction)
        for o in objs:
            total = total.direct_sum(o)
        injections = []
        for k, o in enumerate(objs):
            maps = {}
            for q in o.degrees():
                pre = sum(objs[t].rank(q) for t in range(k))
                ents = [[0] * o.rank(q) for _ in range(total.rank(q))]
                for r in range(o.rank(q)):
                    ents[pre + r][r] = 1
                maps[q] = ExactMatrix(self.ring, ents, total.rank(q), o.rank(q))
            injections.append(ChainMap(o, total, maps, check=False))
        return total, injections

    def assemble(self, src_objs, tgt_objs, routes):
        total_src, _ = self.coproduct(src_objs)
        total_tgt, _ = self.coproduct(tgt_objs)
        maps = {}
        for q in total_src.degrees():
            blocks = [[None] * len(src_objs) for _ in tgt_objs]
            for i, (j, f) in enumerate(routes):
                blk = f.f(q)
                if blocks[j][i] is None:
                    blocks[j][i] = blk
                else:
                    blocks[j][i] = blocks[j][i] + blk
            maps[q] = ExactMatrix.from_blocks(self.ring, blocks,
                                              [t.rank(q) for t in tgt_objs],
                                              [s.rank(q) for s in src_objs])
        return ChainMap(total_src, total_tgt, maps, check=False)

    def terminal(self):
        return BoundedComplex.zero(self.ring, self.direction)

    def to_terminal(self, obj):
        return ChainMap.zero_map(obj, self.terminal())

    def is_zero_object(self, obj):
        return not obj.ranks

    def zero_mor(self, src, tgt):
        return ChainMap.zero_map(src, tgt)


class FiniteSets(ValueCategory):
    """Objects are cardinalities, morphisms tabulated functions."""

    name = "finite-sets"
    ring = None

    def source(self, f: SetMap):
        return f.source

    def target(self, f: SetMap):
        return f.target

    def identity(self, obj: int):
        return SetMap(obj, obj, tuple(range(obj)))

    def compose(self, f, g):
        if g.target != f.source:
            raise ValueError("set maps do not compose")
        return SetMap(g.source, f.target, tuple(f.table[v] for v in g.table))

    def coproduct(self, objs):
        total = sum(objs)
        injections = []
        off = 0
        for c in objs:
            injections.append(SetMap(c, total, tuple(range(off, off + c))))
            off += c
        return total, injections

    def assemble(self, src_objs, tgt_objs, routes):
        offs_t = []
        off = 0
        for c in tgt_objs:
            offs_t.append(off)
            off += c
        table = []
        for i, (j, f) in enumerate(routes):
            if f.source != src_objs[i] or f.target != tgt_objs[j]:
                raise ValueError("route shape mismatch")
            table.extend(offs_t[j] + v for v in f.table)
        return SetMap(sum(src_objs), sum(tgt_objs), tuple(table))

    def terminal(self):
        return 1

    def to_terminal(self, obj):
        return SetMap(obj, 1, (0,) * obj)

    def is_zero_object(self, obj):
        return obj == 0


# ---------------------------------------------------------------------------
# truncated simplicial objects


class TruncSimplicial:
    """Simplicial (or cosimplicial) object truncated at level N.

    Simplicial: faces[(n, i)]: O_n -> O_{n-1}, degens[(n, j)]: O_n -> O_{n+1}.
    Cosimplicial: faces[(n, i)]: O_{n-1} -> O_n, degens[(n, j)]: O_{n+1} -> O_n
    (keys name the higher level in both cases).
    """

    def __init__(self, cat: ValueCategory, N: int, objects: Sequence[Any],
                 faces: Mapping[tuple[int, int], Any],
                 degens: Mapping[tuple[int, int], Any],
                 cosimplicial: bool = False,
                 labels: Sequence[Sequence[Any]] | None = None):
        if len(objects) != N + 1:
            raise ValueError("need N+1 objects")
        self.cat = cat
        self.N = N
        self.objects = list(objects)
        self.faces = dict(faces)
        self.degens = dict(degens)
        self.cosimplicial = cosimplicial
        self.labels = [list(l) for l in labels] if labels is not None else None
        for n in range(1, N + 1):
            for i in range(n + 1):
                if (n, i) not in self.faces:
                    raise ValueError(f"missing face ({n},{i})")
        for n in range(N):
            for j in range(n + 1):
                if (n, j) not in self.degens:
                    raise ValueError(f"missing degeneracy ({n},{j})")

    def obj(self, n: int):
        return self.objects[n]

    def face(self, n: int, i: int):
        """d_i out of level n (simplicial) / coface into level n (cosimplicial)."""
        return self.faces[(n, i)]

    def degen(self, n: int, j: int):
        """s_j out of level n (simplicial) / codegeneracy into level n."""
        return self.degens[(n, j)] if not self.cosimplicial else self.degens[(n, j)]

    def __eq__(self, other):
        return (isinstance(other, TruncSimplicial) and self.N == other.N
                and self.cosimplicial == other.cosimplicial
                and all(self.cat.obj_eq(a, b) for a, b in zip(self.objects, other.objects))
                and self.faces.keys() == other.faces.keys()
                and all(self.cat.mor_eq(self.faces[k], other.faces[k]) for k in self.faces)
                and self.degens.keys() == other.degens.keys()
                and all(self.cat.mor_eq(self.degens[k], other.degens[k]) for k in self.degens))


@dataclass
class SimplicialMap:
    source: TruncSimplicial
    target: TruncSimplicial
    components: list  # per level 0..N

    def __post_init__(self):
        if self.source.N != self.target.N:
            raise ValueError("level mismatch")
        if len(self.components) != self.source.N + 1:
            raise ValueError("need a component per level")

    def validate(self) -> bool:
        return not simplicial_map_violations(self)

    def component(self, n: int):
        return self.components[n]


def simplicial_map_violations(f: SimplicialMap) -> list:
    cat = f.source.cat
    X, Y = f.source, f.target
    bad = []
    if X.cosimplicial:
        for (n, i), dX in X.faces.items():
            lhs = cat.compose(f.components[n], dX)
            rhs = cat.compose(Y.faces[(n, i)], f.components[n - 1])
            if not cat.mor_eq(lhs, rhs):
                bad.append(("face", n, i))
        for (n, j), sX in X.degens.items():
            lhs = cat.compose(f.components[n], sX)
            rhs = cat.compose(Y.degens[(n, j)], f.components[n + 1])
            if not cat.mor_eq(lhs, rhs):
                bad.append(("degen", n, j))
    else:
        for (n, i), dX in X.faces.items():
            lhs = cat.compose(f.components[n - 1], dX)
            rhs = cat.compose(Y.faces[(n, i)], f.components[n])
            if not cat.mor_eq(lhs, rhs):
                bad.append(("face", n, i))
        for (n, j), sX in X.degens.items():
            lhs = cat.compose(f.components[n + 1], sX)
            rhs = cat.compose(Y.degens[(n, j)], f.components[n])
            if not cat.mor_eq(lhs, rhs):
                bad.append(("degen", n, j))
    return bad


def check_identities(X: TruncSimplicial) -> list[tuple]:
    """Violated simplicial identities on the truncation, each as
    (family, n, i, j); empty iff X is valid."""
    cat = X.cat
    bad = []
    N = X.N
    if not X.cosimplicial:
        for n in range(2, N + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = cat.compose(X.face(n - 1, i), X.face(n, j))
                    rhs = cat.compose(X.face(n - 1, j - 1), X.face(n, i))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("dd", n, i, j))
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = cat.compose(X.degen(n + 1, i), X.degen(n, j))
                    rhs = cat.compose(X.degen(n + 1, j + 1), X.degen(n, i))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("ss", n, i, j))
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = cat.compose(X.face(n + 1, i), X.degen(n, j))
                    if i == j or i == j + 1:
                        rhs = cat.identity(X.obj(n))
                    elif i < j:
                        rhs = cat.compose(X.degen(n - 1, j - 1), X.face(n, i))
                    else:
                        rhs = cat.compose(X.degen(n - 1, j), X.face(n, i - 1))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("ds", n, i, j))
    else:
        for n in range(2, N + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = cat.compose(X.face(n, j), X.face(n - 1, i))
                    rhs = cat.compose(X.face(n, i), X.face(n - 1, j - 1))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("dd", n, i, j))
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = cat.compose(X.degen(n, j), X.degen(n + 1, i))
                    rhs = cat.compose(X.degen(n, i), X.degen(n + 1, j + 1))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("ss", n, i, j))
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = cat.compose(X.degen(n, j), X.face(n + 1, i))
                    if i == j or i == j + 1:
                        rhs = cat.identity(X.obj(n))
                    elif i < j:
                        rhs = cat.compose(X.face(n, i), X.degen(n - 1, j - 1))
                    else:
                        rhs = cat.compose(X.face(n, i - 1), X.degen(n - 1, j))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("ds", n, i, j))
    return bad


# ---------------------------------------------------------------------------
# bisimplicial objects


class TruncBisimplicial:
    """Bisimplicial object truncated at (N, N): objects O[i][j], direction-1
    structure maps move i, direction-2 maps move j; the directions commute."""

    def __init__(self, cat: ValueCategory, N: int, objects,
                 d1, s1, d2, s2):
        self.cat = cat
        self.N = N
        self.objects = {k: v for k, v in objects.items()} if isinstance(objects, dict) else \
            {(i, j): objects[i][j] for i in range(N + 1) for j in range(N + 1)}
        self.d1 = dict(d1)  # ((i,j), k): O_{i,j} -> O_{i-1,j}
        self.s1 = dict(s1)  # ((i,j), k): O_{i,j} -> O_{i+1,j}
        self.d2 = dict(d2)
        self.s2 = dict(s2)

    def obj(self, i: int, j: int):
        return self.objects[(i, j)]

    def row(self, j: int) -> TruncSimplicial:
        """The simplicial object i -> O_{i, j}."""
        return TruncSimplicial(
            self.cat, self.N, [self.obj(i, j) for i in range(self.N + 1)],
            {(i, k): self.d1[((i, j), k)] for i in range(1, self.N + 1) for k in range(i + 1)},
            {(i, k): self.s1[((i, j), k)] for i in range(self.N) for k in range(i + 1)})

    def col(self, i: int) -> TruncSimplicial:
        return TruncSimplicial(
            self.cat, self.N, [self.obj(i, j) for j in range(self.N + 1)],
            {(j, k): self.d2[((i, j), k)] for j in range(1, self.N + 1) for k in range(j + 1)},
            {(j, k): self.s2[((i, j), k)] for j in range(self.N) for k in range(j + 1)})

    def swap(self) -> "TruncBisimplicial":
        return TruncBisimplicial(
            self.cat, self.N,
            {(j, i): o for (i, j), o in self.objects.items()},
            {((j, i), k): m for ((i, j), k), m in self.d2.items()},
            {((j, i), k): m for ((i, j), k), m in self.s2.items()},
            {((j, i), k): m for ((i, j), k), m in self.d1.items()},
            {((j, i), k): m for ((i, j), k), m in self.s1.items()})


def check_bisimplicial(Z: TruncBisimplicial) -> list:
    """Each direction simplicial plus exact commutation of the directions."""
    cat = Z.cat
    bad = []
    for j in range(Z.N + 1):
        bad.extend(("row", j) + v for v in check_identities(Z.row(j)))
    for i in range(Z.N + 1):
        bad.extend(("col", i) + v for v in check_identities(Z.col(i)))
    for i in range(Z.N + 1):
        for j in range(Z.N + 1):
            for a in range(i + 1) if i >= 1 else []:
                for b in range(j + 1) if j >= 1 else []:
                    lhs = cat.compose(Z.d2[((i - 1, j), b)], Z.d1[((i, j), a)])
                    rhs = cat.compose(Z.d1[((i, j - 1), a)], Z.d2[((i, j), b)])
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("dd12", i, j, a, b))
            if i >= 1 and j < Z.N:
                for a in range(i + 1):
                    for b in range(j + 1):
                        lhs = cat.compose(Z.s2[((i - 1, j), b)], Z.d1[((i, j), a)])
                        rhs = cat.compose(Z.d1[((i, j + 1), a)], Z.s2[((i, j), b)])
                        if not cat.mor_eq(lhs, rhs):
                            bad.append(("ds12", i, j, a, b))
            if i < Z.N and j >= 1:
                for a in range(i + 1):
                    for b in range(j + 1):
                        lhs = cat.compose(Z.d2[((i + 1, j), b)], Z.s1[((i, j), a)])
                        rhs = cat.compose(Z.s1[((i, j - 1), a)], Z.d2[((i, j), b)])
                        if not cat.mor_eq(lhs, rhs):
                            bad.append(("sd12", i, j, a, b))
            if i < Z.N and j < Z.N:
                for a in range(i + 1):
                    for b in range(j + 1):
                        lhs = cat.compose(Z.s2[((i + 1, j), b)], Z.s1[((i, j), a)])
                        rhs = cat.compose(Z.s1[((i, j + 1), a)], Z.s2[((i, j), b)])
                        if not cat.mor_eq(lhs, rhs):
                            bad.append(("ss12", i, j, a, b))
    return bad


# ---------------------------------------------------------------------------
# constructors


def constant(cat: ValueCategory, X, N: int, cosimplicial: bool = False) -> TruncSimplicial:
    ident = cat.identity(X)
    return TruncSimplicial(
        cat, N, [X] * (N + 1),
        {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)},
        {(n, j): ident for n in range(N) for j in range(n + 1)},
        cosimplicial=cosimplicial)


def constant_map(cat: ValueCategory, f, N: int) -> SimplicialMap:
    src = constant(cat, cat.source(f), N)
    tgt = constant(cat, cat.target(f), N)
    return SimplicialMap(src, tgt, [f] * (N + 1))


def diagonal(Z: TruncBisimplicial) -> TruncSimplicial:
    cat = Z.cat
    N = Z.N
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = cat.compose(Z.d2[((n - 1, n), i)], Z.d1[((n, n), i)])
    for n in range(N):
        for j in range(n + 1):
            degens[(n, j)] = cat.compose(Z.s2[((n + 1, n), j)], Z.s1[((n, n), j)])
    return TruncSimplicial(cat, N, [Z.obj(n, n) for n in range(N + 1)], faces, degens)


def gamma_swap(Z: TruncBisimplicial) -> TruncBisimplicial:
    return Z.swap()


def upsilon(X: TruncSimplicial) -> TruncSimplicial:
    """Order reversal: d_i -> d_{n-i}, s_j -> s_{n-j}; an involution."""
    faces = {(n, i): X.face(n, n - i) for (n, i) in X.faces}
    degens = {(n, j): X.degen(n, n - j) for (n, j) in X.degens}
    return TruncSimplicial(X.cat, X.N, list(X.objects), faces, degens,
                           cosimplicial=X.cosimplicial)


def upsilon_map(f: SimplicialMap) -> SimplicialMap:
    return SimplicialMap(upsilon(f.source), upsilon(f.target), list(f.components))


@dataclass
class Augmentation:
    """(X_{-1}, eps0) with eps0 d_0 = eps0 d_1: O_1 -> X_{-1}."""

    X: TruncSimplicial
    X_minus1: Any
    eps0: Any

    def is_valid(self) -> bool:
        cat = self.X.cat
        if self.X.N < 1:
            return True
        lhs = cat.compose(self.eps0, self.X.face(1, 0))
        rhs = cat.compose(self.eps0, self.X.face(1, 1))
        return cat.mor_eq(lhs, rhs)

    def component(self, n: int):
        """eps_n = eps0 (d_0)^n : O_n -> X_{-1}."""
        cat = self.X.cat
        out = self.eps0
        for lvl in range(1, n + 1):
            out = cat.compose(out, self.X.face(lvl, 0))
        return out

    def as_map_to_constant(self) -> SimplicialMap:
        return SimplicialMap(self.X, constant(self.X.cat, self.X_minus1, self.X.N),
                             [self.component(n) for n in range(self.X.N + 1)])


def trivial_augmentation(X: TruncSimplicial) -> Augmentation:
    cat = X.cat
    return Augmentation(X, cat.terminal(), cat.to_terminal(X.obj(0)))


def dec_lower(X: TruncSimplicial):
    """(dec_1 X)_n = X_{n+1}, d_i -> d_{i+1}, s_j -> s_{j+1}; output at level
    N-1 with augmentation d_1: X_1 -> X_0 and lower extra degeneracy s_{-1}
    given by the forgotten s_0."""
    if X.N < 1:
        raise ValueError("dec needs at least one level")
    N = X.N - 1
    Y = TruncSimplicial(
        X.cat, N, [X.obj(n + 1) for n in range(N + 1)],
        {(n, i): X.face(n + 1, i + 1) for n in range(1, N + 1) for i in range(n + 1)},
        {(n, j): X.degen(n + 1, j + 1) for n in range(N) for j in range(n + 1)})
    aug = Augmentation(Y, X.obj(0), X.face(1, 1))
    extra = {n: X.degen(n + 1, 0) for n in range(N)}
    extra[-1] = X.degen(0, 0)
    return Y, aug, extra


def dec_upper(X: TruncSimplicial):
    """(dec^1 X)_n = X_{n+1}, d_i -> d_i, s_j -> s_j; augmentation d_0 and
    upper extra degeneracy from the forgotten top s."""
    if X.N < 1:
        raise ValueError("dec needs at least one level")
    N = X.N - 1
    Y = TruncSimplicial(
        X.cat, N, [X.obj(n + 1) for n in range(N + 1)],
        {(n, i): X.face(n + 1, i) for n in range(1, N + 1) for i in range(n + 1)},
        {(n, j): X.degen(n + 1, j) for n in range(N) for j in range(n + 1)})
    aug = Augmentation(Y, X.obj(0), X.face(1, 0))
    extra = {n: X.degen(n + 1, n + 1) for n in range(N)}
    extra[-1] = X.degen(0, 0)
    return Y, aug, extra


def has_extra_degeneracy(aug: Augmentation, side: str, extra: Mapping[int, Any]) -> bool:
    """Verify the extra-degeneracy identity families exactly.

    ``extra[n]`` maps level n to level n+1 for 0 <= n < N, and ``extra[-1]``
    maps X_{-1} to level 0.
    """
    X = aug.X
    cat = X.cat
    N = X.N
    if side == "lower":
        # d_0 s_{-1} = Id
        if not cat.mor_eq(cat.compose(aug.eps0, extra[-1]), cat.identity(aug.X_minus1)):
            return False
        for n in range(N):
            if not cat.mor_eq(cat.compose(X.face(n + 1, 0), extra[n]), cat.identity(X.obj(n))):
                return False
        # d_{i+1} s_{-1} = s_{-1} d_i  (d_0 at the bottom is the augmentation)
        for n in range(N):
            if n == 0:
                lhs = cat.compose(X.face(1, 1), extra[0])
                rhs = cat.compose(extra[-1], aug.eps0)
                if not cat.mor_eq(lhs, rhs):
                    return False
            else:
                for i in range(n + 1):
                    lhs = cat.compose(X.face(n + 1, i + 1), extra[n])
                    rhs = cat.compose(extra[n - 1], X.face(n, i))
                    if not cat.mor_eq(lhs, rhs):
                        return False
        # s_j s_{-1} = s_{-1} s_{j-1}; at j = 0 both sides are the doubled extra
        for n in range(N - 1):
            for j in range(n + 2):
                lhs = cat.compose(X.degen(n + 1, j), extra[n])
                if j == 0:
                    rhs = cat.compose(extra[n + 1], extra[n])
                else:
                    rhs = cat.compose(extra[n + 1], X.degen(n, j - 1))
                if not cat.mor_eq(lhs, rhs):
                    return False
        return True
    if side == "upper":
        if not cat.mor_eq(cat.compose(aug.eps0, extra[-1]), cat.identity(aug.X_minus1)):
            return False
        for n in range(N):
            if not cat.mor_eq(cat.compose(X.face(n + 1, n + 1), extra[n]), cat.identity(X.obj(n))):
                return False
        for n in range(N):
            if n == 0:
                lhs = cat.compose(X.face(1, 0), extra[0])
                rhs = cat.compose(extra[-1], aug.eps0)
                if not cat.mor_eq(lhs, rhs):
                    return False
            else:
                for i in range(n + 1):
                    lhs = cat.compose(X.face(n + 1, i), extra[n])
                    rhs = cat.compose(extra[n - 1], X.face(n, i))
                    if not cat.mor_eq(lhs, rhs):
                        return False
        for n in range(N - 1):
            for j in range(n + 2):
                lhs = cat.compose(X.degen(n + 1, j), extra[n])
                if j == n + 1:
                    rhs = cat.compose(extra[n + 1], extra[n])
                else:
                    rhs = cat.compose(extra[n + 1], X.degen(n, j))
                if not cat.mor_eq(lhs, rhs):
                    return False
        return True
    raise ValueError("side must be 'lower' or 'upper'")


# ---------------------------------------------------------------------------
# Dold-Puppe left adjoint of the forgetful functor


@dataclass
class StrictSimplicialData:
    """Face-only data A_0..A_N with the face-face identities."""

    cat: ValueCategory
    N: int
    objects: list
    faces: dict  # (n, i): A_n -> A_{n-1}

    def check(self) -> list:
        cat = self.cat
        bad = []
        for n in range(2, self.N + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = cat.compose(self.faces[(n - 1, i)], self.faces[(n, j)])
                    rhs = cat.compose(self.faces[(n - 1, j - 1)], self.faces[(n, i)])
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("dd", n, i, j))
        return bad

    def apply_injection(self, beta: MonotoneMap):
        """A(beta) for injective beta = face_{i_1}..face_{i_s}: the word acts
        contravariantly, largest face index first."""
        cat = self.cat
        word = epi_mono_factorize(beta)
        out = cat.identity(self.objects[beta.target])
        lvl = beta.target
        for i in word.faces:
            out = cat.compose(self.faces[(lvl, i)], out)
            lvl -= 1
        return out


def pi_components(n: int) -> list[MonotoneMap]:
    """Indexing surjections [n] ->> [m] of the Dold-Puppe coproduct, in a
    fixed deterministic order."""
    out = []
    for m in range(n + 1):
        out.extend(surjections(n, m))
    out.sort(key=lambda f: (f.target, f.values))
    return out


def dold_puppe_pi(A: StrictSimplicialData, N: int | None = None) -> TruncSimplicial:
    """(pi A)_n = coproduct over surjections theta: [n] ->> [m] of A_m; a map
    f acts componentwise through the unique epi-mono factorization of
    theta f."""
    cat = A.cat
    if N is None:
        N = A.N
    if N > A.N:
        raise ValueError("not enough strict levels")
    comps = {n: pi_components(n) for n in range(N + 1)}
    objects = []
    for n in range(N + 1):
        obj, _ = cat.coproduct([A.objects[t.target] for t in comps[n]])
        objects.append(obj)

    def action(f: MonotoneMap):
        """(pi A)(f): level f.target -> level f.source."""
        n, n2 = f.target, f.source
        src, tgt = comps[n], comps[n2]
        tpos = {(t.target, t.values): k for k, t in enumerate(tgt)}
        routes = []
        for theta in src:
            comp = cat_compose(theta, f)
            word = epi_mono_factorize(comp)
            alpha = MonotoneMap(
                comp.source, comp.source - len(word.degeneracies),
                _epi_values(comp))
            beta = _mono_part(comp)
            routes.append((tpos[(alpha.target, alpha.values)], A.apply_injection(beta)))
        return cat.assemble([A.objects[t.target] for t in src],
                            [A.objects[t.target] for t in tgt], routes)

    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = action(delta_face(n, i))
    from .simplexcat import degeneracy as delta_degeneracy
    for n in range(N):
        for j in range(n + 1):
            degens[(n, j)] = action(delta_degeneracy(n, j))
    return TruncSimplicial(cat, N, objects, faces, degens,
                           labels=[[t for t in comps[n]] for n in range(N + 1)])


def _epi_values(f: MonotoneMap) -> tuple[int, ...]:
    """Values of the epi part of the epi-mono factorization of f."""
    seen = sorted(set(f.values))
    pos = {v: k for k, v in enumerate(seen)}
    return tuple(pos[v] for v in f.values)


def _mono_part(f: MonotoneMap) -> MonotoneMap:
    seen = sorted(set(f.values))
    return MonotoneMap(len(seen) - 1, f.target, tuple(seen))


# ---------------------------------------------------------------------------
# simplicial homotopy


def verify_simplicial_homotopy(h: Mapping[int, Sequence[Any]], f: SimplicialMap,
                               g: SimplicialMap) -> bool:
    """h[n] = (h_0, ..., h_n) with h_i: X_n -> Y_{n+1}; checks
    d_0 h_0 = f,  d_{n+1} h_n = g, and the interchange identities, on all
    levels the truncation supports (n < N)."""
    X, Y = f.source, f.target
    cat = X.cat
    N = X.N
    for n in range(N):
        hn = h[n]
        if len(hn) != n + 1:
            return False
        if not cat.mor_eq(cat.compose(Y.face(n + 1, 0), hn[0]), f.components[n]):
            return False
        if not cat.mor_eq(cat.compose(Y.face(n + 1, n + 1), hn[n]), g.components[n]):
            return False
        # d_i h_j
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = cat.compose(Y.face(n + 1, i), hn[j])
                if i < j:
                    if n == 0:
                        continue
                    rhs = cat.compose(h[n - 1][j - 1], X.face(n, i))
                elif i == j and i >= 1:
                    rhs = cat.compose(Y.face(n + 1, j), hn[i - 1])
                elif i > j + 1:
                    if n == 0:
                        continue
                    rhs = cat.compose(h[n - 1][j], X.face(n, i - 1))
                else:
                    continue
                if not cat.mor_eq(lhs, rhs):
                    return False
        # s_i h_j
        if n + 1 < N:
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = cat.compose(Y.degen(n + 1, i), hn[j])
                    if i <= j:
                        rhs = cat.compose(h[n + 1][j + 1], X.degen(n, i))
                    else:
                        rhs = cat.compose(h[n + 1][j], X.degen(n, i - 1))
                    if not cat.mor_eq(lhs, rhs):
                        return False
    return True


def extra_degeneracy_homotopy(aug: Augmentation, extra: Mapping[int, Any]):
    """From a lower extra degeneracy, build zeta: X_{-1} x Delta -> X with
    eps zeta = id and a simplicial homotopy id ~ zeta eps.

    The witness is h_i = (s_{-1})^{i+1} (d_0)^i at each level (built from the
    extra degeneracy); it is validated by verify_simplicial_homotopy by the
    caller rather than trusted.
    """
    X = aug.X
    cat = X.cat
    N = X.N
    # zeta_n = (s_{-1})^{n+1} restricted from X_{-1}
    zeta_comps = []
    cur = extra[-1]
    zeta_comps.append(cur)
    for n in range(1, N + 1):
        cur = cat.compose(extra[n - 1], cur)
        zeta_comps.append(cur)
    zeta = SimplicialMap(constant(cat, aug.X_minus1, N), X, zeta_comps)
    # h_i: X_n -> X_{n+1}: h_i = (s_{-1})^{i+1} (eps-like face chain)^{i} ... built
    # as s_{-1} applied after projecting the first i indices through d_0's.
    h = {}
    for n in range(N):
        row = []
        for i in range(n + 1):
            # (d_0)^i : X_n -> X_{n-i}
            m = cat.identity(X.obj(n))
            for t in range(i):
                m = cat.compose(X.face(n - t, 0), m)
            # (s_{-1})^{i+1} : X_{n-i} -> X_{n+1}
            for t in range(i + 1):
                m = cat.compose(extra[n - i + t], m)
            row.append(m)
        h[n] = row
    return zeta, h


# ---------------------------------------------------------------------------
# linearization of simplicial sets


def free_linearize(S: TruncSimplicial, ring: Ring) -> TruncSimplicial:
    """Levelwise free module on the finite set; maps become 0/1 matrices."""
    if not isinstance(S.cat, FiniteSets):
        raise ValueError("free_linearize wants a simplicial finite set")
    cat = FreeModules(ring)

    def lin(m: SetMap) -> ExactMatrix:
        ents = [[0] * m.source for _ in range(m.target)]
        for i, v in enumerate(m.table):
            ents[v][i] = 1
        return ExactMatrix(ring, ents, m.target, m.source)

    return TruncSimplicial(
        cat, S.N, [S.obj(n) for n in range(S.N + 1)],
        {k: lin(v) for k, v in S.faces.items()},
        {k: lin(v) for k, v in S.degens.items()},
        cosimplicial=S.cosimplicial)
