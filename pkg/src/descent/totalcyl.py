"""Total object of biaugmented bisimplicial objects, total decalage, the
(Tot, Dec) adjunction transposition, iterated totals with their coherence
isomorphisms, the simplicial cone, the three cylinders with retraction and
interchange maps, and the universal property of the augmented cylinder.

Component order inside each coproduct level is fixed: ascending first index
starting at -1, so a cylinder level reads Y_n, X_{n-1}, ..., X_0, X_{-1}.
Canonical isomorphisms are explicit permutations against this order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .simplicial import (
    Augmentation, SimplicialMap, TruncSimplicial, ValueCategory, constant,
    constant_map, diagonal, simplicial_map_violations, trivial_augmentation,
    upsilon, upsilon_map,
)


# ---------------------------------------------------------------------------
# biaugmented bisimplicial objects


class BiaugBisimplicial:
    """Data Z_{i,j} for i, j >= -1, (i, j) != (-1, -1), on whatever index set
    is stored (full square or a triangle of antidiagonals).

    d1[((i,j), k)]: Z_{i,j} -> Z_{i-1,j} for 0 <= k <= i (k = 0 alone when
    i = 0: the augmentation); s1[((i,j), k)]: Z_{i,j} -> Z_{i+1,j}; direction
    2 mirrors this in j.  Maps are stored only when their target is stored.
    """

    def __init__(self, cat: ValueCategory, entries: Mapping[tuple[int, int], Any],
                 d1, s1, d2, s2, labels=None):
        self.cat = cat
        self.entries = dict(entries)
        if (-1, -1) in self.entries:
            raise ValueError("the corner (-1,-1) is not part of the data")
        self.d1 = dict(d1)
        self.s1 = dict(s1)
        self.d2 = dict(d2)
        self.s2 = dict(s2)
        self.labels = dict(labels) if labels else None

    def has(self, i: int, j: int) -> bool:
        return (i, j) in self.entries

    def obj(self, i: int, j: int):
        return self.entries[(i, j)]

    def antidiagonal(self, n: int) -> list[tuple[int, int]]:
        """Stored components with i + j = n - 1, ascending i from -1."""
        return sorted(ij for ij in self.entries if ij[0] + ij[1] == n - 1)

    def max_tot_level(self) -> int:
        n = 0
        while True:
            comps = [(i, n - i) for i in range(-1, n + 2)]
            if all(self.has(i, j) for i, j in comps):
                n += 1
            else:
                return n


def check_biaug(Z: BiaugBisimplicial) -> list:
    """Exact functoriality over the doubly augmented index category: both
    directions simplicial where defined, all cross commutations, and the
    augmentation identities."""
    cat = Z.cat
    bad = []

    def d1m(i, j, k):
        return Z.d1.get(((i, j), k))

    def d2m(i, j, k):
        return Z.d2.get(((i, j), k))

    def s1m(i, j, k):
        return Z.s1.get(((i, j), k))

    def s2m(i, j, k):
        return Z.s2.get(((i, j), k))

    for (i, j) in Z.entries:
        # direction-1 face-face (including the augmentation identity at i=1)
        for b in range(i + 1):
            for a in range(b):
                if Z.has(i - 2, j):
                    lhs = cat.compose(d1m(i - 1, j, a), d1m(i, j, b))
                    rhs = cat.compose(d1m(i - 1, j, b - 1), d1m(i, j, a))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("d1d1", i, j, a, b))
        if i == 1 and Z.has(-1, j):
            lhs = cat.compose(d1m(0, j, 0), d1m(1, j, 0))
            rhs = cat.compose(d1m(0, j, 0), d1m(1, j, 1))
            if not cat.mor_eq(lhs, rhs):
                bad.append(("d1aug", i, j))
        for b in range(j + 1):
            for a in range(b):
                if Z.has(i, j - 2):
                    lhs = cat.compose(d2m(i, j - 1, a), d2m(i, j, b))
                    rhs = cat.compose(d2m(i, j - 1, b - 1), d2m(i, j, a))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("d2d2", i, j, a, b))
        if j == 1 and Z.has(i, -1):
            lhs = cat.compose(d2m(i, 0, 0), d2m(i, 1, 0))
            rhs = cat.compose(d2m(i, 0, 0), d2m(i, 1, 1))
            if not cat.mor_eq(lhs, rhs):
                bad.append(("d2aug", i, j))
        # degeneracy families and mixed families within each direction
        for a in range(i + 1):
            for b in range(a + 1):
                if Z.has(i + 2, j) and s1m(i + 1, j, a + 1) is not None:
                    lhs = cat.compose(s1m(i + 1, j, b), s1m(i, j, a))
                    rhs = cat.compose(s1m(i + 1, j, a + 1), s1m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("s1s1", i, j, b, a))
        for a in range(j + 1):
            for b in range(a + 1):
                if Z.has(i, j + 2) and s2m(i, j + 1, a + 1) is not None:
                    lhs = cat.compose(s2m(i, j + 1, b), s2m(i, j, a))
                    rhs = cat.compose(s2m(i, j + 1, a + 1), s2m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("s2s2", i, j, b, a))
        if Z.has(i + 1, j):
            for b in range(i + 1):
                for a in range(i + 2):
                    lhs = cat.compose(d1m(i + 1, j, a), s1m(i, j, b))
                    if a == b or a == b + 1:
                        rhs = cat.identity(Z.obj(i, j))
                    elif a < b:
                        rhs = cat.compose(s1m(i - 1, j, b - 1), d1m(i, j, a))
                    else:
                        rhs = cat.compose(s1m(i - 1, j, b), d1m(i, j, a - 1))
                    if rhs is not None and not cat.mor_eq(lhs, rhs):
                        bad.append(("d1s1", i, j, a, b))
        if Z.has(i, j + 1):
            for b in range(j + 1):
                for a in range(j + 2):
                    lhs = cat.compose(d2m(i, j + 1, a), s2m(i, j, b))
                    if a == b or a == b + 1:
                        rhs = cat.identity(Z.obj(i, j))
                    elif a < b:
                        rhs = cat.compose(s2m(i, j - 1, b - 1), d2m(i, j, a))
                    else:
                        rhs = cat.compose(s2m(i, j - 1, b), d2m(i, j, a - 1))
                    if rhs is not None and not cat.mor_eq(lhs, rhs):
                        bad.append(("d2s2", i, j, a, b))
        # cross commutations
        for a in range(i + 1):
            for b in range(j + 1):
                if Z.has(i - 1, j) and Z.has(i, j - 1) and Z.has(i - 1, j - 1):
                    lhs = cat.compose(d2m(i - 1, j, b), d1m(i, j, a))
                    rhs = cat.compose(d1m(i, j - 1, a), d2m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("cross-dd", i, j, a, b))
                if Z.has(i + 1, j) and Z.has(i, j - 1) and Z.has(i + 1, j - 1):
                    lhs = cat.compose(d2m(i + 1, j, b), s1m(i, j, a))
                    rhs = cat.compose(s1m(i, j - 1, a), d2m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("cross-sd", i, j, a, b))
                if Z.has(i - 1, j) and Z.has(i, j + 1) and Z.has(i - 1, j + 1):
                    lhs = cat.compose(s2m(i - 1, j, b), d1m(i, j, a))
                    rhs = cat.compose(d1m(i, j + 1, a), s2m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("cross-ds", i, j, a, b))
                if Z.has(i + 1, j) and Z.has(i, j + 1) and Z.has(i + 1, j + 1):
                    lhs = cat.compose(s2m(i + 1, j, b), s1m(i, j, a))
                    rhs = cat.compose(s1m(i, j + 1, a), s2m(i, j, b))
                    if not cat.mor_eq(lhs, rhs):
                        bad.append(("cross-ss", i, j, a, b))
    return bad


# ---------------------------------------------------------------------------
# the total object


def tot(Z: BiaugBisimplicial, N: int) -> TruncSimplicial:
    """Tot(Z)_n = coproduct of the (n-1)-st antidiagonal; case formulas:
    d_k on Z_{i,j} is d1_k when i >= k and d2_{k-i-1} otherwise, and the same
    split for degeneracies."""
    cat = Z.cat
    comps = {n: [(i, n - 1 - i) for i in range(-1, n + 1)] for n in range(N + 1)}
    for n, cs in comps.items():
        for ij in cs:
            if not Z.has(*ij):
                raise ValueError(f"tot at level {N} needs entry {ij}")
    objects = []
    for n in range(N + 1):
        obj, _ = cat.coproduct([Z.obj(*ij) for ij in comps[n]])
        objects.append(obj)
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        tpos = {ij: p for p, ij in enumerate(comps[n - 1])}
        for k in range(n + 1):
            routes = []
            for (i, j) in comps[n]:
                if i >= k:
                    routes.append((tpos[(i - 1, j)], Z.d1[((i, j), k)]))
                else:
                    routes.append((tpos[(i, j - 1)], Z.d2[((i, j), k - i - 1)]))
            faces[(n, k)] = cat.assemble([Z.obj(*ij) for ij in comps[n]],
                                         [Z.obj(*ij) for ij in comps[n - 1]], routes)
    for n in range(N):
        tpos = {ij: p for p, ij in enumerate(comps[n + 1])}
        for k in range(n + 1):
            routes = []
            for (i, j) in comps[n]:
                if i >= k:
                    routes.append((tpos[(i + 1, j)], Z.s1[((i, j), k)]))
                else:
                    routes.append((tpos[(i, j + 1)], Z.s2[((i, j), k - i - 1)]))
            degens[(n, k)] = cat.assemble([Z.obj(*ij) for ij in comps[n]],
                                          [Z.obj(*ij) for ij in comps[n + 1]], routes)
    return TruncSimplicial(cat, N, objects, faces, degens,
                           labels=[list(comps[n]) for n in range(N + 1)])


def tot_plus(Z: BiaugBisimplicial, corner, row_aug, col_aug) -> Augmentation:
    """Augmentation of Tot(Z) by the corner: d_0 = d_0^{(2)} on Z_{-1,0}
    together with d_0^{(1)} on Z_{0,-1}."""
    cat = Z.cat
    T = tot(Z, Z.max_tot_level())
    eps0 = cat.assemble([Z.obj(-1, 0), Z.obj(0, -1)], [corner],
                        [(0, row_aug), (0, col_aug)])
    return Augmentation(T, corner, eps0)


def tot_inclusions(Z: BiaugBisimplicial, N: int, T: TruncSimplicial | None = None):
    """The canonical maps Z_{-1,.} -> Tot(Z) <- Z_{.,-1} as simplicial maps."""
    cat = Z.cat
    if T is None:
        T = tot(Z, N)
    row = TruncSimplicial(
        cat, N, [Z.obj(-1, n) for n in range(N + 1)],
        {(n, k): Z.d2[(( -1, n), k)] for n in range(1, N + 1) for k in range(n + 1)},
        {(n, k): Z.s2[((-1, n), k)] for n in range(N) for k in range(n + 1)})
    col = TruncSimplicial(
        cat, N, [Z.obj(n, -1) for n in range(N + 1)],
        {(n, k): Z.d1[((n, -1), k)] for n in range(1, N + 1) for k in range(n + 1)},
        {(n, k): Z.s1[((n, -1), k)] for n in range(N) for k in range(n + 1)})
    rmaps, cmaps = [], []
    for n in range(N + 1):
        comps = T.labels[n]
        objs = [Z.obj(*ij) for ij in comps]
        rmaps.append(cat.assemble([Z.obj(-1, n)], objs,
                                  [(comps.index((-1, n)), cat.identity(Z.obj(-1, n)))]))
        cmaps.append(cat.assemble([Z.obj(n, -1)], objs,
                                  [(comps.index((n, -1)), cat.identity(Z.obj(n, -1)))]))
    return SimplicialMap(row, T, rmaps), SimplicialMap(col, T, cmaps)


# ---------------------------------------------------------------------------
# total decalage and the adjunction


def total_decalage(X: TruncSimplicial, N: int) -> BiaugBisimplicial:
    """Dec(X)_{i,j} = X_{i+j+1}; rows are upper decalages, columns lower ones;
    needs X truncated at 2N+1 for the square of side N."""
    if X.N < 2 * N + 1:
        raise ValueError("total decalage at (N, N) needs 2N+1 levels")
    cat = X.cat
    entries = {}
    for i in range(-1, N + 1):
        for j in range(-1, N + 1):
            if (i, j) == (-1, -1):
                continue
            entries[(i, j)] = X.obj(i + j + 1)
    d1, s1, d2, s2 = {}, {}, {}, {}
    for (i, j) in entries:
        lvl = i + j + 1
        for k in range(i + 1):
            d1[((i, j), k)] = X.face(lvl, k)
        if i + 1 <= N:
            for k in range(i + 1):
                s1[((i, j), k)] = X.degen(lvl, k)
        for k in range(j + 1):
            d2[((i, j), k)] = X.face(lvl, i + 1 + k)
        if j + 1 <= N:
            for k in range(j + 1):
                s2[((i, j), k)] = X.degen(lvl, i + 1 + k)
    return BiaugBisimplicial(cat, entries, d1, s1, d2, s2)


def adjunction_transpose(F: SimplicialMap, Z: BiaugBisimplicial) -> dict:
    """Components G(i, j) = restriction of F_{i+j+1} to Z_{i,j}; the hom-set
    transposition of the (Tot, Dec) adjunction."""
    cat = Z.cat
    T = F.source
    G = {}
    for n in range(T.N + 1):
        comps = T.labels[n]
        _, injections = cat.coproduct([Z.obj(*ij) for ij in comps])
        for p, ij in enumerate(comps):
            G[ij] = cat.compose(F.components[n], injections[p])
    return G


def adjunction_untranspose(G: Mapping[tuple[int, int], Any], Z: BiaugBisimplicial,
                           Y: TruncSimplicial, N: int) -> SimplicialMap:
    """Assemble the components Z_{i,j} -> Y_{i+j+1} back into Tot(Z) -> Y."""
    cat = Z.cat
    T = tot(Z, N)
    comps_maps = []
    for n in range(N + 1):
        comps = T.labels[n]
        routes = [(0, G[ij]) for ij in comps]
        comps_maps.append(cat.assemble([Z.obj(*ij) for ij in comps], [Y.obj(n)], routes))
    return SimplicialMap(T, Y, comps_maps)


def transpose_naturality_violations(G: Mapping, Z: BiaugBisimplicial,
                                    Y: TruncSimplicial) -> list:
    """G must intertwine Z's four structure-map families with Dec(Y):
    direction-1 generators act as d_a / s_a on Y, direction-2 generators as
    d_{i+1+b} / s_{i+1+b}."""
    cat = Z.cat
    bad = []
    for ((i, j), k), m in Z.d1.items():
        if (i, j) not in G or (i - 1, j) not in G:
            continue
        lvl = i + j + 1
        lhs = cat.compose(G[(i - 1, j)], m)
        rhs = cat.compose(Y.face(lvl, k), G[(i, j)])
        if not cat.mor_eq(lhs, rhs):
            bad.append(("d1", i, j, k))
    for ((i, j), k), m in Z.s1.items():
        if (i, j) not in G or (i + 1, j) not in G:
            continue
        lvl = i + j + 1
        lhs = cat.compose(G[(i + 1, j)], m)
        rhs = cat.compose(Y.degen(lvl, k), G[(i, j)])
        if not cat.mor_eq(lhs, rhs):
            bad.append(("s1", i, j, k))
    for ((i, j), k), m in Z.d2.items():
        if (i, j) not in G or (i, j - 1) not in G:
            continue
        lvl = i + j + 1
        lhs = cat.compose(G[(i, j - 1)], m)
        rhs = cat.compose(Y.face(lvl, i + 1 + k), G[(i, j)])
        if not cat.mor_eq(lhs, rhs):
            bad.append(("d2", i, j, k))
    for ((i, j), k), m in Z.s2.items():
        if (i, j) not in G or (i, j + 1) not in G:
            continue
        lvl = i + j + 1
        lhs = cat.compose(G[(i, j + 1)], m)
        rhs = cat.compose(Y.degen(lvl, i + 1 + k), G[(i, j)])
        if not cat.mor_eq(lhs, rhs):
            bad.append(("s2", i, j, k))
    return bad


# ---------------------------------------------------------------------------
# the Omega diagram and the cylinders


@dataclass
class OmegaDiagram:
    """A simplicial map f: X -> Y together with an augmentation of X."""

    f: SimplicialMap
    aug: Augmentation

    def __post_init__(self):
        if self.aug.X is not self.f.source and self.aug.X != self.f.source:
            raise ValueError("the augmentation must live on the source of f")

    @property
    def X(self):
        return self.f.source

    @property
    def Y(self):
        return self.f.target


def psi(D: OmegaDiagram) -> BiaugBisimplicial:
    """The biaugmented bisimplicial object of (f, eps): interior constant in
    the first direction with value X, row -1 equal to Y, column -1 the
    constant X_{-1}; f and eps provide the augmentations."""
    cat = D.X.cat
    X, Y = D.X, D.Y
    N = X.N
    entries = {}
    for j in range(N + 1):
        entries[(-1, j)] = Y.obj(j)
        for i in range(N + 1):
            entries[(i, j)] = X.obj(j)
    for i in range(N + 1):
        entries[(i, -1)] = D.aug.X_minus1
    d1, s1, d2, s2 = {}, {}, {}, {}
    for j in range(-1, N + 1):
        for i in range(N + 1):
            if i >= 1:
                for k in range(i + 1):
                    d1[((i, j), k)] = cat.identity(entries[(i, j)])
            elif j >= 0:
                d1[((0, j), 0)] = D.f.components[j]
            if i + 1 <= N:
                for k in range(i + 1):
                    s1[((i, j), k)] = cat.identity(entries[(i, j)])
    for i in range(-1, N + 1):
        src = Y if i == -1 else X
        for j in range(N + 1):
            if j >= 1:
                for k in range(j + 1):
                    d2[((i, j), k)] = src.face(j, k)
            if i >= 0 and j == 0:
                d2[((i, 0), 0)] = D.aug.eps0
            if j + 1 <= N:
                for k in range(j + 1):
                    s2[((i, j), k)] = src.degen(j, k)
    # the column at -1 is the constant X_{-1}: its direction-1 maps are the
    # identities set above; it has no direction-2 structure of its own.
    return BiaugBisimplicial(cat, entries, d1, s1, d2, s2)


@dataclass
class CylData:
    cyl: TruncSimplicial
    i_bottom: SimplicialMap  # constant X_{-1} -> Cyl
    i_top: SimplicialMap     # Y -> Cyl


def simp_cyl(D: OmegaDiagram) -> CylData:
    """Cyl(f, eps)_n = Y_n + X_{n-1} + ... + X_0 + X_{-1} with the displayed
    case formulas, realized as Tot of psi(f, eps)."""
    Z = psi(D)
    N = D.X.N
    T = tot(Z, N)
    row, col = tot_inclusions(Z, N, T)
    # row is literally Y, col the constant X_{-1}
    i_top = SimplicialMap(D.Y, T, row.components)
    i_bottom = SimplicialMap(constant(D.X.cat, D.aug.X_minus1, N), T, col.components)
    return CylData(T, i_bottom, i_top)


def simp_cone(f: SimplicialMap) -> CylData:
    """C(f) = Cyl(f, trivial augmentation to the final object)."""
    return simp_cyl(OmegaDiagram(f, trivial_augmentation(f.source)))


def simp_cone_prime(f: SimplicialMap) -> TruncSimplicial:
    """C' = Upsilon . C . Upsilon."""
    return upsilon(simp_cone(upsilon_map(f)).cyl)


def simp_cyl_prime(D: OmegaDiagram) -> TruncSimplicial:
    """The conjugate cylinder, by its displayed case formulas: faces act by
    d_i on the blocks X_k with i <= k (the k = 0 face being the
    augmentation), identities below, and f at (i, k) = (n, n-1)."""
    cat = D.X.cat
    X, Y = D.X, D.Y
    N = X.N
    objects = []
    comps = {}
    for n in range(N + 1):
        comps[n] = [Y.obj(n)] + [X.obj(n - c) for c in range(1, n + 1)] + [D.aug.X_minus1]
        obj, _ = cat.coproduct(comps[n])
        objects.append(obj)
    faces = {}
    degens = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            routes = [(0, Y.face(n, i))]
            for c in range(1, n + 1):
                k = n - c  # block X_k at position c
                if i <= k:
                    if k >= 1:
                        routes.append((c, X.face(k, i)))
                    else:
                        routes.append((n, D.aug.eps0))  # X_0 -> X_{-1}
                elif i == n and k == n - 1:
                    routes.append((0, D.f.components[n - 1]))
                else:
                    routes.append((c - 1, cat.identity(X.obj(k))))
            routes.append((n, cat.identity(D.aug.X_minus1)))
            faces[(n, i)] = cat.assemble(comps[n], comps[n - 1], routes)
    for n in range(N):
        for j in range(n + 1):
            routes = [(0, Y.degen(n, j))]
            for c in range(1, n + 1):
                k = n - c
                if j <= k:
                    routes.append((c, X.degen(k, j)))
                else:
                    routes.append((c + 1, cat.identity(X.obj(k))))
            routes.append((n + 2, cat.identity(D.aug.X_minus1)))
            degens[(n, j)] = cat.assemble(comps[n], comps[n + 1], routes)
    return TruncSimplicial(cat, N, objects, faces, degens,
                           labels=[[("cut", c) for c in range(n + 2)] for n in range(N + 1)])


def phi_square(f: SimplicialMap, g: SimplicialMap) -> BiaugBisimplicial:
    """The biaugmented bisimplicial object behind the cubical cylinder:
    interior Dec(X) (restricted to the needed antidiagonals), row -1 equal to
    Y via f d_0, column -1 equal to Z via g d_{top}."""
    X = f.source
    if g.source != X:
        raise ValueError("cubical cylinder needs a common source")
    cat = X.cat
    N = X.N
    Y, Zc = f.target, g.target
    entries = {}
    for j in range(N + 1):
        entries[(-1, j)] = Y.obj(j)
    for i in range(N + 1):
        entries[(i, -1)] = Zc.obj(i)
    for i in range(N):
        for j in range(N):
            if i + j + 1 <= N:
                entries[(i, j)] = X.obj(i + j + 1)
    d1, s1, d2, s2 = {}, {}, {}, {}
    for (i, j) in entries:
        lvl = i + j + 1
        if i >= 0 and j >= 0:
            if i >= 1:
                for k in range(i + 1):
                    d1[((i, j), k)] = X.face(lvl, k)
            else:
                d1[((0, j), 0)] = cat.compose(f.components[j], X.face(j + 1, 0))
            if entries.get((i + 1, j)) is not None:
                for k in range(i + 1):
                    s1[((i, j), k)] = X.degen(lvl, k)
            if j >= 1:
                for k in range(j + 1):
                    d2[((i, j), k)] = X.face(lvl, i + 1 + k)
            else:
                d2[((i, 0), 0)] = cat.compose(g.components[i], X.face(i + 1, i + 1))
            if entries.get((i, j + 1)) is not None:
                for k in range(j + 1):
                    s2[((i, j), k)] = X.degen(lvl, i + 1 + k)
        elif i == -1:
            for k in range(j + 1):
                if j >= 1:
                    d2[((-1, j), k)] = Y.face(j, k)
            if j + 1 <= N and entries.get((-1, j + 1)) is not None:
                for k in range(j + 1):
                    s2[((-1, j), k)] = Y.degen(j, k)
        else:  # j == -1
            for k in range(i + 1):
                if i >= 1:
                    d1[((i, -1), k)] = Zc.face(i, k)
            if i + 1 <= N and entries.get((i + 1, -1)) is not None:
                for k in range(i + 1):
                    s1[((i, -1), k)] = Zc.degen(i, k)
    return BiaugBisimplicial(cat, entries, d1, s1, d2, s2)


@dataclass
class CubicalCylData:
    cyl: TruncSimplicial
    j_top: SimplicialMap     # Y -> ~Cyl
    j_bottom: SimplicialMap  # Z -> ~Cyl


def cubical_cyl(f: SimplicialMap, g: SimplicialMap) -> CubicalCylData:
    """~Cyl(f, g)_n = Y_n + (n copies of X_n) + Z_n."""
    Z = phi_square(f, g)
    N = f.source.N
    T = tot(Z, N)
    row, col = tot_inclusions(Z, N, T)
    j_top = SimplicialMap(f.target, T, row.components)
    j_bottom = SimplicialMap(g.target, T, col.components)
    return CubicalCylData(T, j_top, j_bottom)


def cubical_homotopy_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """H: ~Cyl(X) -> ~Cyl(f, g) induced by (id; f, g): together with the
    inclusions it witnesses j_top f ~ j_bottom g."""
    X = f.source
    cat = X.cat
    N = X.N
    CX = cubical_cyl(SimplicialMap(X, X, [cat.identity(X.obj(n)) for n in range(N + 1)]),
                     SimplicialMap(X, X, [cat.identity(X.obj(n)) for n in range(N + 1)]))
    CT = cubical_cyl(f, g)
    comps = []
    for n in range(N + 1):
        labels = CX.cyl.labels[n]
        routes = []
        for p, (i, j) in enumerate(labels):
            if i == -1:
                routes.append((p, f.components[n]))
            elif j == -1:
                routes.append((p, g.components[n]))
            else:
                routes.append((p, cat.identity(X.obj(n))))
        comps.append(cat.assemble([_phi_obj(X, X, X, i, j, n) for (i, j) in labels],
                                  [_phi_obj(X, f.target, g.target, i, j, n) for (i, j) in labels],
                                  routes))
    return SimplicialMap(CX.cyl, CT.cyl, comps)


def _phi_obj(X, Y, Z, i, j, n):
    if i == -1:
        return Y.obj(n)
    if j == -1:
        return Z.obj(n)
    return X.obj(n)


def homotopy_from_cyl_map(H: SimplicialMap, X: TruncSimplicial) -> dict:
    """Recover the combinatorial homotopy from H: ~Cyl(X) -> W:
    h_i = H_{n+1} . (injection of the cut-(i+1) component) . s_i."""
    cat = X.cat
    N = X.N
    src = H.source
    h = {}
    for n in range(N):
        comps = src.labels[n + 1]
        _, injections = cat.coproduct([_phi_obj(X, X, X, i, j, n + 1) for (i, j) in comps])
        row = []
        for i in range(n + 1):
            cut = i + 1
            p = comps.index((cut - 1, n + 1 - cut))
            row.append(cat.compose(H.components[n + 1],
                                   cat.compose(injections[p], X.degen(n, i))))
        h[n] = row
    return h


def cyl_retraction(D: OmegaDiagram):
    """alpha: Cyl -> ~Cyl with (s_0)^k on the X_{n-k} block, beta backwards
    with (d_0)^k; beta alpha = Id, both commute with the inclusions."""
    cat = D.X.cat
    X = D.X
    N = X.N
    cylD = simp_cyl(D)
    tilD = cubical_cyl(D.f, D.aug.as_map_to_constant())
    alpha_comps = []
    beta_comps = []
    for n in range(N + 1):
        src_labels = cylD.cyl.labels[n]   # (i, j) with object X_j / Y_n / X_{-1}
        routes_a = []
        routes_b = []
        for p, (i, j) in enumerate(src_labels):
            if i == -1 or j == -1:
                obj = D.Y.obj(n) if i == -1 else D.aug.X_minus1
                routes_a.append((p, cat.identity(obj)))
                routes_b.append((p, cat.identity(obj)))
            else:
                # Cyl block X_j at position p = i + 1 with j = n - 1 - i;
                # k = n - j steps of s_0 upward, d_0 back down
                k = n - j
                up = cat.identity(X.obj(j))
                for t in range(k):
                    up = cat.compose(X.degen(j + t, 0), up)
                down = cat.identity(X.obj(n))
                for t in range(k):
                    down = cat.compose(X.face(n - t, 0), down)
                routes_a.append((p, up))
                routes_b.append((p, down))
        src_objs = [_omega_obj(D, i, j, n) for (i, j) in src_labels]
        tgt_objs = [_tilde_obj(D, i, j, n) for (i, j) in src_labels]
        alpha_comps.append(cat.assemble(src_objs, tgt_objs, routes_a))
        beta_comps.append(cat.assemble(tgt_objs, src_objs, routes_b))
    alpha = SimplicialMap(cylD.cyl, tilD.cyl, alpha_comps)
    beta = SimplicialMap(tilD.cyl, cylD.cyl, beta_comps)
    return alpha, beta, cylD, tilD


def _omega_obj(D, i, j, n):
    if i == -1:
        return D.Y.obj(n)
    if j == -1:
        return D.aug.X_minus1
    return D.X.obj(j)


def _tilde_obj(D, i, j, n):
    if i == -1:
        return D.Y.obj(n)
    if j == -1:
        return D.aug.X_minus1
    return D.X.obj(n)


def cyl_universal(D: OmegaDiagram, T, rho0, rho_prime: SimplicialMap):
    """Unique H: Cyl(f, eps) -> T x Delta with H i_bottom = rho and
    H i_top = rho'; H_n = H_0 (d_0)^n.

    rho0: X_{-1} -> T; rho_prime: Y -> constant T.  The square
    rho eps = rho' f must commute exactly.
    """
    cat = D.X.cat
    N = D.X.N
    for n in range(N + 1):
        lhs = cat.compose(rho0, D.aug.component(n))
        rhs = cat.compose(rho_prime.components[n], D.f.components[n])
        if not cat.mor_eq(lhs, rhs):
            raise ValueError(f"input square does not commute at level {n}")
    data = simp_cyl(D)
    C = data.cyl
    h0 = cat.assemble([D.Y.obj(0), D.aug.X_minus1], [T],
                      [(0, rho_prime.components[0]), (0, rho0)])
    comps = [h0]
    for n in range(1, N + 1):
        m = h0
        for lvl in range(1, n + 1):
            m = cat.compose(m, C.face(lvl, 0))
        comps.append(m)
    H = SimplicialMap(C, constant(cat, T, N), comps)
    return H, data


# ---------------------------------------------------------------------------
# triaugmented trisimplicial objects and iterated totals


class TriAug:
    """Entries T_{i,j,k}, i,j,k >= -1, not all -1; per-axis faces and
    degeneracies stored when the target entry exists."""

    def __init__(self, cat: ValueCategory, entries, d1, s1, d2, s2, d3, s3):
        self.cat = cat
        self.entries = dict(entries)
        self.d = (dict(d1), dict(d2), dict(d3))
        self.s = (dict(s1), dict(s2), dict(s3))

    def has(self, ijk) -> bool:
        return tuple(ijk) in self.entries

    def obj(self, ijk):
        return self.entries[tuple(ijk)]

    def face(self, axis: int, ijk, k: int):
        return self.d[axis - 1][(tuple(ijk), k)]

    def degen(self, axis: int, ijk, k: int):
        return self.s[axis - 1][(tuple(ijk), k)]


def tot3(T: TriAug, N: int) -> TruncSimplicial:
    """Direct total object of a triaugmented trisimplicial object; the level-n
    components are the (i,j,k) with i+j+k = n-2 in ascending (i, j) order."""
    cat = T.cat
    comps = {}
    for n in range(N + 1):
        cs = sorted(ijk for ijk in T.entries if sum(ijk) == n - 2)
        want = [(i, j, n - 2 - i - j) for i in range(-1, n + 1) for j in range(-1, n - i + 1)
                if i + j <= n - 1 and (i, j, n - 2 - i - j) != (-1, -1, -1) and n - 2 - i - j >= -1]
        if set(cs) != set(want):
            raise ValueError(f"tot3 needs the full antidiagonal {n - 2}")
        comps[n] = cs
    objects = []
    for n in range(N + 1):
        obj, _ = cat.coproduct([T.obj(c) for c in comps[n]])
        objects.append(obj)

    def route(n, a, lowering: bool):
        tgt = comps[n - 1] if lowering else comps[n + 1]
        tpos = {c: p for p, c in enumerate(tgt)}
        routes = []
        for (i, j, k) in comps[n]:
            if a <= i:
                axis, idx, t = 1, a, (i + (-1 if lowering else 1), j, k)
            elif a <= i + j + 1:
                axis, idx, t = 2, a - i - 1, (i, j + (-1 if lowering else 1), k)
            else:
                axis, idx, t = 3, a - i - j - 2, (i, j, k + (-1 if lowering else 1))
            m = T.face(axis, (i, j, k), idx) if lowering else T.degen(axis, (i, j, k), idx)
            routes.append((tpos[t], m))
        return cat.assemble([T.obj(c) for c in comps[n]], [T.obj(c) for c in tgt], routes)

    faces = {(n, a): route(n, a, True) for n in range(1, N + 1) for a in range(n + 1)}
    degens = {(n, a): route(n, a, False) for n in range(N) for a in range(n + 1)}
    return TruncSimplicial(cat, N, objects, faces, degens,
                           labels=[list(comps[n]) for n in range(N + 1)])


def tot3_face0(T: TriAug, N: int) -> BiaugBisimplicial:
    """Collapse axes (2,3) first: entry (n, m) is the coproduct over
    j + k = m - 1 of T_{n,j,k} (and T_{n,-1,-1} at m = -1)."""
    return _tot3_nested(T, N, first_axis=1)


def tot3_face2(T: TriAug, N: int) -> BiaugBisimplicial:
    """Collapse axes (1,2) first: entry (n, m) is the coproduct over
    i + j = n - 1 of T_{i,j,m} (and T_{-1,-1,m} at n = -1)."""
    return _tot3_nested(T, N, first_axis=3)


def _tot3_nested(T: TriAug, N: int, first_axis: int) -> BiaugBisimplicial:
    cat = T.cat
    if first_axis == 1:
        def entry_labels(n, m):
            if m == -1:
                return [(n, -1, -1)]
            if n == -1:
                return [(-1, j, m - 1 - j) for j in range(-1, m + 1)]
            return [(n, j, m - 1 - j) for j in range(-1, m + 1)]
        outer_axes, inner_axes = (1,), (2, 3)
    else:
        def entry_labels(n, m):
            if n == -1:
                return [(-1, -1, m)]
            if m == -1:
                return [(i, n - 1 - i, -1) for i in range(-1, n + 1)]
            return [(i, n - 1 - i, m) for i in range(-1, n + 1)]
        outer_axes, inner_axes = (3,), (1, 2)

    entries = {}
    labels = {}
    for n in range(-1, N + 1):
        for m in range(-1, N + 1):
            if (n, m) == (-1, -1):
                continue
            labs = [c for c in entry_labels(n, m) if T.has(c)]
            if len(labs) != len(entry_labels(n, m)):
                raise ValueError("missing trisimplicial entries for the nested total")
            labels[(n, m)] = labs
            obj, _ = cat.coproduct([T.obj(c) for c in labs])
            entries[(n, m)] = obj

    def blockwise(src_key, tgt_key, gen):
        """Assemble a per-atom routed map between entries; gen(atom) returns
        (target_atom, morphism)."""
        src, tgt = labels[src_key], labels[tgt_key]
        tpos = {c: p for p, c in enumerate(tgt)}
        routes = []
        for atom in src:
            t_atom, m = gen(atom)
            routes.append((tpos[t_atom], m))
        return cat.assemble([T.obj(c) for c in src], [T.obj(c) for c in tgt], routes)

    d1, s1, d2, s2 = {}, {}, {}, {}
    for (n, m) in entries:
        if first_axis == 1:
            # moving n: blockwise axis-1 maps
            for k in range(n + 1):
                if (n - 1, m) in entries:
                    def gen(atom, k=k):
                        i, j, kk = atom
                        return (i - 1, j, kk), T.face(1, atom, k)
                    d1[((n, m), k)] = blockwise((n, m), (n - 1, m), gen)
                if (n + 1, m) in entries and n + 1 <= N:
                    def gens(atom, k=k):
                        i, j, kk = atom
                        return (i + 1, j, kk), T.degen(1, atom, k)
                    s1[((n, m), k)] = blockwise((n, m), (n + 1, m), gens)
            # moving m: inner-total routing over axes (2,3)
            for k in range(m + 1):
                if (n, m - 1) in entries:
                    def gen(atom, k=k):
                        i, j, kk = atom
                        if j >= k:
                            return (i, j - 1, kk), T.face(2, atom, k)
                        return (i, j, kk - 1), T.face(3, atom, k - j - 1)
                    d2[((n, m), k)] = blockwise((n, m), (n, m - 1), gen)
                if (n, m + 1) in entries and m + 1 <= N:
                    def gens(atom, k=k):
                        i, j, kk = atom
                        if j >= k:
                            return (i, j + 1, kk), T.degen(2, atom, k)
                        return (i, j, kk + 1), T.degen(3, atom, k - j - 1)
                    s2[((n, m), k)] = blockwise((n, m), (n, m + 1), gens)
        else:
            # moving n: inner-total routing over axes (1,2)
            for k in range(n + 1):
                if (n - 1, m) in entries:
                    def gen(atom, k=k):
                        i, j, kk = atom
                        if i >= k:
                            return (i - 1, j, kk), T.face(1, atom, k)
                        return (i, j - 1, kk), T.face(2, atom, k - i - 1)
                    d1[((n, m), k)] = blockwise((n, m), (n - 1, m), gen)
                if (n + 1, m) in entries and n + 1 <= N:
                    def gens(atom, k=k):
                        i, j, kk = atom
                        if i >= k:
                            return (i + 1, j, kk), T.degen(1, atom, k)
                        return (i, j + 1, kk), T.degen(2, atom, k - i - 1)
                    s1[((n, m), k)] = blockwise((n, m), (n + 1, m), gens)
            # moving m: blockwise axis-3 maps
            for k in range(m + 1):
                if (n, m - 1) in entries:
                    def gen(atom, k=k):
                        i, j, kk = atom
                        return (i, j, kk - 1), T.face(3, atom, k)
                    d2[((n, m), k)] = blockwise((n, m), (n, m - 1), gen)
                if (n, m + 1) in entries and m + 1 <= N:
                    def gens(atom, k=k):
                        i, j, kk = atom
                        return (i, j, kk + 1), T.degen(3, atom, k)
                    s2[((n, m), k)] = blockwise((n, m), (n, m + 1), gens)
    return BiaugBisimplicial(cat, entries, d1, s1, d2, s2, labels=labels)


def flatten_nested_labels(Z: BiaugBisimplicial, Tflat: TruncSimplicial) -> list[list]:
    """Component triples of tot(Z) when Z's entries are labeled coproducts."""
    out = []
    for n in range(Tflat.N + 1):
        atoms = []
        for (i, j) in Tflat.labels[n]:
            atoms.extend(Z.labels[(i, j)])
        out.append(atoms)
    return out


def tot3_coherence(T: TriAug, N: int):
    """Tot3, the two reassociations, and the permutation isomorphisms from
    each reassociation to Tot3 (label matching with identity blocks)."""
    cat = T.cat
    T3 = tot3(T, N)
    A0 = tot3_face0(T, N)
    A2 = tot3_face2(T, N)
    F0 = tot(A0, N)
    F2 = tot(A2, N)
    L0 = flatten_nested_labels(A0, F0)
    L2 = flatten_nested_labels(A2, F2)
    isos = []
    for flat, labels in ((F0, L0), (F2, L2)):
        comps = []
        for n in range(N + 1):
            tgt = T3.labels[n]
            tpos = {c: p for p, c in enumerate(tgt)}
            routes = [(tpos[atom], cat.identity(T.obj(atom))) for atom in labels[n]]
            comps.append(cat.assemble([T.obj(a) for a in labels[n]],
                                      [T.obj(a) for a in tgt], routes))
        isos.append(SimplicialMap(flat, T3, comps))
    return T3, F0, F2, isos[0], isos[1]
