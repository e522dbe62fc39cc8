import random

import pytest

from descent.generators import (
    external_product, random_bisimplicial_modules, random_omega,
    random_simplicial_map, random_simplicial_modules, random_square_maps,
    trial_rng,
)
from descent.linalg import GF, ExactMatrix
from descent.simplicial import (
    FreeModules, SimplicialMap, check_identities, constant, diagonal,
    simplicial_map_violations, trivial_augmentation, upsilon,
    verify_simplicial_homotopy,
)
from descent.ssets import sset_circle, sset_rp2
from descent.simplicial import free_linearize
from descent.totalcyl import (
    BiaugBisimplicial, OmegaDiagram, adjunction_transpose,
    adjunction_untranspose, check_biaug, cubical_cyl, cubical_homotopy_map,
    cyl_retraction, cyl_universal, homotopy_from_cyl_map, psi, simp_cone,
    simp_cone_prime, simp_cyl, simp_cyl_prime, tot, tot3, tot3_coherence,
    tot_inclusions, tot_plus, total_decalage, transpose_naturality_violations,
    TriAug,
)

F2, F3, F5 = GF(2), GF(3), GF(5)


def tri_external(S1, S2, S3):
    """Triple external product as a TriAug without augmentations (interior
    only is not enough for tot3; add trivial-point augmentation rows by
    tensoring with the canonical augmentations of the factors)."""
    # Augment each factor to rank-1 (the point): eps0 = all-ones row.
    ring = S1.cat.ring
    cat = S1.cat
    N = min(S1.N, S2.N, S3.N)

    def level(S, i):
        return S.obj(i) if i >= 0 else 1

    def facemap(S, i, k):
        # face into level i-1; at i = 0 the all-ones augmentation
        if i >= 1:
            return S.face(i, k)
        return ExactMatrix(ring, [[1] * S.obj(0)], 1, S.obj(0))

    def degmap(S, i, k):
        return S.degen(i, k)

    from descent.linalg import kron

    entries = {}
    for i in range(-1, N + 1):
        for j in range(-1, N + 1):
            for k in range(-1, N + 1):
                if (i, j, k) == (-1, -1, -1):
                    continue
                entries[(i, j, k)] = level(S1, i) * level(S2, j) * level(S3, k)

    def at(S, i):
        return ExactMatrix.identity(ring, level(S, i))

    d1, s1, d2, s2, d3, s3 = {}, {}, {}, {}, {}, {}
    for (i, j, k) in entries:
        for a in range(i + 1):
            if (i - 1, j, k) in entries:
                d1[((i, j, k), a)] = kron(facemap(S1, i, a), kron(at(S2, j), at(S3, k)))
        for a in range(j + 1):
            if (i, j - 1, k) in entries:
                d2[((i, j, k), a)] = kron(at(S1, i), kron(facemap(S2, j, a), at(S3, k)))
        for a in range(k + 1):
            if (i, j, k - 1) in entries:
                d3[((i, j, k), a)] = kron(at(S1, i), kron(at(S2, j), facemap(S3, k, a)))
        if i + 1 <= N and i >= 0:
            for a in range(i + 1):
                s1[((i, j, k), a)] = kron(degmap(S1, i, a), kron(at(S2, j), at(S3, k)))
        if j + 1 <= N and j >= 0:
            for a in range(j + 1):
                s2[((i, j, k), a)] = kron(at(S1, i), kron(degmap(S2, j, a), at(S3, k)))
        if k + 1 <= N and k >= 0:
            for a in range(k + 1):
                s3[((i, j, k), a)] = kron(at(S1, i), kron(at(S2, j), degmap(S3, k, a)))
    return TriAug(S1.cat, entries, d1, s1, d2, s2, d3, s3)


def augmented_external_biaug(S, T):
    """Biaugmented bisimplicial object from two point-augmented simplicial
    module objects (the join-style construction)."""
    ring = S.cat.ring
    cat = S.cat
    N = min(S.N, T.N)
    from descent.linalg import kron

    def lv(S_, i):
        return S_.obj(i) if i >= 0 else 1

    def fm(S_, i, k):
        if i >= 1:
            return S_.face(i, k)
        return ExactMatrix(ring, [[1] * S_.obj(0)], 1, S_.obj(0))

    entries = {}
    for i in range(-1, N + 1):
        for j in range(-1, N + 1):
            if (i, j) == (-1, -1):
                continue
            entries[(i, j)] = lv(S, i) * lv(T, j)
    d1, s1, d2, s2 = {}, {}, {}, {}
    for (i, j) in entries:
        Ij = ExactMatrix.identity(ring, lv(T, j))
        Ii = ExactMatrix.identity(ring, lv(S, i))
        for a in range(i + 1):
            if (i - 1, j) in entries:
                d1[((i, j), a)] = kron(fm(S, i, a), Ij)
        for a in range(j + 1):
            if (i, j - 1) in entries:
                d2[((i, j), a)] = kron(Ii, fm(T, j, a))
        if 0 <= i < N:
            for a in range(i + 1):
                s1[((i, j), a)] = kron(S.degen(i, a), Ij)
        if 0 <= j < N:
            for a in range(j + 1):
                s2[((i, j), a)] = kron(Ii, T.degen(j, a))
    return BiaugBisimplicial(cat, entries, d1, s1, d2, s2)


def random_biaug(rng, ring, N):
    kind = rng.randrange(3)
    if kind == 0:
        return psi(random_omega(rng, ring, N))
    if kind == 1:
        X = random_simplicial_modules(rng, ring, 2 * N + 1, conjugated=False)
        return total_decalage(X, N)
    S = random_simplicial_modules(rng, ring, N, conjugated=False)
    T = random_simplicial_modules(rng, ring, N, conjugated=False)
    return augmented_external_biaug(S, T)


# -- tot ---------------------------------------------------------------------------

def test_tot_of_row_concentrated_is_that_row():
    ring = F3
    X = free_linearize(sset_circle(3), ring)
    cat = X.cat
    N = 3
    # Z with row -1 equal to X and everything else zero
    entries = {(-1, j): X.obj(j) for j in range(N + 1)}
    for i in range(N + 1):
        entries[(i, -1)] = 0
        for j in range(N + 1):
            entries[(i, j)] = 0
    z = lambda r, c: ExactMatrix.zero(ring, r, c)
    d1, s1, d2, s2 = {}, {}, {}, {}
    for (i, j) in entries:
        if i >= 0:
            for k in range(i + 1):
                if (i - 1, j) in entries:
                    d1[((i, j), k)] = z(entries[(i - 1, j)], entries[(i, j)])
            if i < N:
                for k in range(i + 1):
                    s1[((i, j), k)] = z(entries[(i + 1, j)], entries[(i, j)])
        if j >= 1:
            for k in range(j + 1):
                d2[((i, j), k)] = X.face(j, k) if i == -1 else z(entries[(i, j - 1)], entries[(i, j)])
        if 0 <= j < N:
            for k in range(j + 1):
                s2[((i, j), k)] = X.degen(j, k) if i == -1 else z(entries[(i, j + 1)], entries[(i, j)])
    Z = BiaugBisimplicial(cat, entries, d1, s1, d2, s2)
    T = tot(Z, N)
    assert check_identities(T) == []
    assert [T.obj(n) for n in range(N + 1)] == [X.obj(n) for n in range(N + 1)]
    for key, m in X.faces.items():
        assert T.faces[key] == m


def test_tot_of_psi_is_simplicial_cone():
    ring = F2
    X = free_linearize(sset_circle(3), ring)
    cat = X.cat
    f = SimplicialMap(X, X, [cat.identity(X.obj(n)) for n in range(4)])
    C = simp_cone(f)
    assert check_identities(C.cyl) == []
    # level ranks: Y_n + X_{n-1} + ... + X_0 + rank(1) with the trivial
    # augmentation contributing rank 0 over modules
    for n in range(4):
        want = X.obj(n) + sum(X.obj(k) for k in range(n)) + 0
        assert C.cyl.obj(n) == want


@pytest.mark.parametrize("seed", range(8))
def test_tot_random_identities(seed):
    rng = trial_rng(11, seed)
    ring = [F2, F3, F5][seed % 3]
    Z = random_biaug(rng, ring, 2)
    assert check_biaug(Z) == []
    T = tot(Z, min(2, Z.max_tot_level()))
    assert check_identities(T) == []


@pytest.mark.parametrize("seed", range(4))
def test_tot_plus_augmentation_valid(seed):
    rng = trial_rng(13, seed)
    ring = F3
    S = random_simplicial_modules(rng, ring, 2, conjugated=False)
    T = random_simplicial_modules(rng, ring, 2, conjugated=False)
    Z = augmented_external_biaug(S, T)
    ones = lambda n: ExactMatrix(ring, [[1] * n], 1, n)
    row_aug = ones(Z.obj(-1, 0))
    col_aug = ones(Z.obj(0, -1))
    aug = tot_plus(Z, 1, row_aug, col_aug)
    assert aug.is_valid()


def test_tot_commutes_with_coproducts():
    rng = trial_rng(17, 0)
    ring = F2
    Z1 = random_biaug(rng, ring, 2)
    Z2 = random_biaug(rng, ring, 2)
    cat = FreeModules(ring)
    # levelwise direct sum of the two biaugmented objects
    entries = {k: Z1.entries[k] + Z2.entries[k] for k in Z1.entries if k in Z2.entries}
    blk = lambda a, b: ExactMatrix.block_diag(ring, [a, b])
    keys = lambda d1, d2: set(d1) & set(d2)
    Z = BiaugBisimplicial(
        cat, entries,
        {k: blk(Z1.d1[k], Z2.d1[k]) for k in keys(Z1.d1, Z2.d1)},
        {k: blk(Z1.s1[k], Z2.s1[k]) for k in keys(Z1.s1, Z2.s1)},
        {k: blk(Z1.d2[k], Z2.d2[k]) for k in keys(Z1.d2, Z2.d2)},
        {k: blk(Z1.s2[k], Z2.s2[k]) for k in keys(Z1.s2, Z2.s2)})
    N = min(2, Z.max_tot_level())
    T = tot(Z, N)
    T1 = tot(Z1, N)
    T2 = tot(Z2, N)
    # the block-reorder witness: per level, permutation interleaving the
    # components of T1 and T2
    cat2 = cat
    comps = []
    for n in range(N + 1):
        labels = T.labels[n]
        src_objs = []
        routes = []
        # source = T1_n + T2_n laid out as [T1 comps..., T2 comps...]
        for which, Zk in ((0, Z1), (1, Z2)):
            for p, ij in enumerate(labels):
                src_objs.append(Zk.obj(*ij))
        tgt_objs = [Z.obj(*ij) for ij in labels]
        _, injections = cat2.coproduct(tgt_objs)
        for which, Zk in ((0, Z1), (1, Z2)):
            for p, ij in enumerate(labels):
                r1, r2 = Z1.obj(*ij), Z2.obj(*ij)
                ents = [[0] * (r1 if which == 0 else r2) for _ in range(r1 + r2)]
                for t in range(r1 if which == 0 else r2):
                    ents[(0 if which == 0 else r1) + t][t] = 1
                routes.append((p, ExactMatrix(ring, ents, r1 + r2, r1 if which == 0 else r2)))
        comps.append(cat2.assemble(src_objs, tgt_objs, routes))
    # build T1 + T2 levelwise and check the assembled map is a simplicial iso
    from descent.simplicial import TruncSimplicial
    sum_objects = [T1.obj(n) + T2.obj(n) for n in range(N + 1)]
    sum_faces = {k: blk(T1.faces[k], T2.faces[k]) for k in T1.faces}
    sum_degens = {k: blk(T1.degens[k], T2.degens[k]) for k in T1.degens}
    TS = TruncSimplicial(cat, N, sum_objects, sum_faces, sum_degens)
    phi = SimplicialMap(TS, T, comps)
    assert simplicial_map_violations(phi) == []
    from descent.linalg import rank
    for n in range(N + 1):
        m = phi.components[n]
        assert m.rows == m.cols and rank(m) == m.rows


# -- adjunction -------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(5))
def test_adjunction_roundtrip_and_naturality(seed):
    rng = trial_rng(19, seed)
    ring = F3
    N = 1
    X = random_simplicial_modules(rng, ring, 2 * N + 1, conjugated=False)
    Z = total_decalage(X, N)
    M = 2 * N + 1
    T = tot(Z, M)
    # F: random simplicial map T -> Y: use the collapse to a point
    cat = T.cat
    Y = constant(cat, 1, M)
    F = SimplicialMap(T, Y, [ExactMatrix(ring, [[1] * T.obj(n)], 1, T.obj(n))
                             for n in range(M + 1)])
    assert simplicial_map_violations(F) == []
    G = adjunction_transpose(F, Z)
    assert transpose_naturality_violations(G, Z, Y) == []
    F2_ = adjunction_untranspose(G, Z, Y, M)
    for n in range(M + 1):
        assert cat.mor_eq(F.components[n], F2_.components[n])
    # and the reverse round trip on a fresh G
    G2 = adjunction_transpose(F2_, Z)
    assert all(cat.mor_eq(G[k], G2[k]) for k in G)


def test_adjunction_zero_map():
    rng = trial_rng(23, 1)
    ring = F2
    X = random_simplicial_modules(rng, ring, 3, conjugated=False)
    Z = total_decalage(X, 1)
    M = 3
    T = tot(Z, M)
    cat = T.cat
    Y = constant(cat, 2, M)
    F = SimplicialMap(T, Y, [ExactMatrix.zero(ring, 2, T.obj(n)) for n in range(M + 1)])
    G = adjunction_transpose(F, Z)
    assert all(m.is_zero() for m in G.values())


# -- decalage rows and columns ------------------------------------------------------

def test_total_decalage_constant():
    cat = FreeModules(F5)
    X = constant(cat, 2, 5)
    Z = total_decalage(X, 2)
    for (i, j), obj in Z.entries.items():
        assert obj == 2
    for m in list(Z.d1.values()) + list(Z.d2.values()):
        assert m == ExactMatrix.identity(F5, 2)


def test_total_decalage_rows_cols_valid():
    ring = F3
    X = free_linearize(sset_rp2(5), ring)
    Z = total_decalage(X, 2)
    assert check_biaug(Z) == []
    T = tot(Z, 2)
    assert check_identities(T) == []


# -- cylinders ----------------------------------------------------------------------

def test_cyl_of_trivial_diagrams():
    ring = F3
    cat = FreeModules(ring)
    A = free_linearize(sset_circle(2), ring)
    zero = constant(cat, 0, 2)
    # (X_{-1} x Delta <- 0 -> 0) gives the constant object back
    f = SimplicialMap(zero, zero, [ExactMatrix.zero(ring, 0, 0)] * 3)
    aug = trivial_augmentation(zero)
    aug = type(aug)(zero, 3, ExactMatrix.zero(ring, 3, 0))
    D = OmegaDiagram(f, aug)
    C = simp_cyl(D)
    assert [C.cyl.obj(n) for n in range(3)] == [3, 3, 3]
    assert check_identities(C.cyl) == []
    # (0 <- 0 -> Y) gives Y back
    fY = SimplicialMap(zero, A, [ExactMatrix.zero(ring, A.obj(n), 0) for n in range(3)])
    D2 = OmegaDiagram(fY, type(aug)(zero, 0, ExactMatrix.zero(ring, 0, 0)))
    C2 = simp_cyl(D2)
    assert [C2.cyl.obj(n) for n in range(3)] == [A.obj(n) for n in range(3)]
    assert check_identities(C2.cyl) == []


@pytest.mark.parametrize("seed", range(6))
def test_cyl_identities_and_homotopy(seed):
    rng = trial_rng(29, seed)
    ring = F2
    D = random_omega(rng, ring, 3)
    data = simp_cyl(D)
    assert check_identities(data.cyl) == []
    assert simplicial_map_violations(data.i_top) == []
    assert simplicial_map_violations(data.i_bottom) == []
    # i_top f ~ i_bottom eps via beta . R (cubical homotopy then retraction)
    alpha, beta, cylD, tilD = cyl_retraction(D)
    R = cubical_homotopy_map(D.f, D.aug.as_map_to_constant())
    cat = data.cyl.cat
    H = SimplicialMap(R.source, cylD.cyl,
                      [cat.compose(beta.components[n], R.components[n])
                       for n in range(D.X.N + 1)])
    h = homotopy_from_cyl_map(H, D.X)
    f_end = SimplicialMap(D.X, cylD.cyl,
                          [cat.compose(cylD.i_top.components[n], D.f.components[n])
                           for n in range(D.X.N + 1)])
    g_end = SimplicialMap(D.X, cylD.cyl,
                          [cat.compose(cylD.i_bottom.components[n], D.aug.component(n))
                           for n in range(D.X.N + 1)])
    assert verify_simplicial_homotopy(h, f_end, g_end)


@pytest.mark.parametrize("seed", range(5))
def test_cyl_prime_is_upsilon_conjugate(seed):
    rng = trial_rng(31, seed)
    ring = F3
    D = random_omega(rng, ring, 3)
    P = simp_cyl_prime(D)
    assert check_identities(P) == []
    # conjugation: Upsilon(Cyl(Upsilon D))
    Df = SimplicialMap(upsilon(D.X), upsilon(D.Y), list(D.f.components))
    Daug = type(D.aug)(upsilon(D.X), D.aug.X_minus1, D.aug.eps0)
    C = simp_cyl(OmegaDiagram(Df, Daug))
    U = upsilon(C.cyl)
    assert P.objects == U.objects
    assert all(P.cat.mor_eq(P.faces[k], U.faces[k]) for k in P.faces)
    assert all(P.cat.mor_eq(P.degens[k], U.degens[k]) for k in P.degens)


def test_cyl_prime_constant_reorder():
    # Cyl(f x Delta, g x Delta) ~ Cyl'(g x Delta, f x Delta) by coproduct
    # reorder commuting with the end inclusions: over constant diagrams both
    # have the same component objects
    ring = F5
    cat = FreeModules(ring)
    f0 = ExactMatrix(ring, [[1], [2]])   # A=1 -> B=2
    g0 = ExactMatrix(ring, [[3]])        # A=1 -> C=1
    N = 3
    f = constant_map_local(cat, f0, N)
    D = OmegaDiagram(f, AugLocal(cat, f.source, 1, g0))
    L = simp_cyl(D).cyl
    g = constant_map_local(cat, g0, N)
    D2 = OmegaDiagram(g, AugLocal(cat, g.source, 2, f0))
    R = simp_cyl_prime(D2)
    assert check_identities(R) == []
    for n in range(N + 1):
        # L_n = B + A^n + C, R_n = C + A^n + B: swap the ends
        rdim = L.obj(n)
        assert R.obj(n) == rdim
        perm = list(range(rdim))
        # build the block swap: first block size 2 <-> last block size 1
        sizes_L = [2] + [1] * n + [1]
        sizes_R = [1] + [1] * n + [2]
        offL = [sum(sizes_L[:t]) for t in range(len(sizes_L))]
        offR = [sum(sizes_R[:t]) for t in range(len(sizes_R))]
        ents = [[0] * rdim for _ in range(rdim)]
        # L block 0 (B, size 2) -> R block last
        for t in range(2):
            ents[offR[-1] + t][offL[0] + t] = 1
        for b in range(1, n + 1):
            ents[offR[b]][offL[b]] = 1
        ents[offR[0]][offL[-1]] = 1
        # check it intertwines the face maps for every i
        M = ExactMatrix(ring, ents, rdim, rdim)
        if n >= 1:
            for i in range(n + 1):
                pass  # verified globally below
        if n == 0:
            continue
    # global check as a simplicial map
    maps = []
    for n in range(N + 1):
        rdim = L.obj(n)
        sizes_L = [2] + [1] * n + [1]
        sizes_R = [1] + [1] * n + [2]
        offL = [sum(sizes_L[:t]) for t in range(len(sizes_L))]
        offR = [sum(sizes_R[:t]) for t in range(len(sizes_R))]
        ents = [[0] * rdim for _ in range(rdim)]
        for t in range(2):
            ents[offR[-1] + t][offL[0] + t] = 1
        for b in range(1, n + 1):
            ents[offR[b]][offL[b]] = 1
        ents[offR[0]][offL[-1]] = 1
        maps.append(ExactMatrix(ring, ents, rdim, rdim))
    phi = SimplicialMap(L, R, maps)
    assert simplicial_map_violations(phi) == []


def constant_map_local(cat, f0, N):
    from descent.simplicial import constant_map
    return constant_map(cat, f0, N)


def AugLocal(cat, X, tgt, eps0):
    from descent.simplicial import Augmentation
    return Augmentation(X, tgt, eps0)


# -- cubical cylinder -----------------------------------------------------------------

def test_cubical_counts_and_identity_case():
    ring = F2
    X = free_linearize(sset_circle(3), ring)
    cat = X.cat
    idm = SimplicialMap(X, X, [cat.identity(X.obj(n)) for n in range(4)])
    C = cubical_cyl(idm, idm)
    assert check_identities(C.cyl) == []
    for n in range(4):
        assert C.cyl.obj(n) == (n + 2) * X.obj(n)


@pytest.mark.parametrize("seed", range(4))
def test_cubical_identities_and_square_homotopy(seed):
    rng = trial_rng(37, seed)
    ring = F3
    f, g = random_square_maps(rng, ring, 3)
    C = cubical_cyl(f, g)
    assert check_identities(C.cyl) == []
    assert simplicial_map_violations(C.j_top) == []
    assert simplicial_map_violations(C.j_bottom) == []
    H = cubical_homotopy_map(f, g)
    assert simplicial_map_violations(H) == []
    cat = C.cyl.cat
    h = homotopy_from_cyl_map(H, f.source)
    f_end = SimplicialMap(f.source, C.cyl,
                          [cat.compose(C.j_top.components[n], f.components[n])
                           for n in range(f.source.N + 1)])
    g_end = SimplicialMap(f.source, C.cyl,
                          [cat.compose(C.j_bottom.components[n], g.components[n])
                           for n in range(f.source.N + 1)])
    assert verify_simplicial_homotopy(h, f_end, g_end)


def test_cubical_equals_cyl_on_constants():
    ring = F5
    cat = FreeModules(ring)
    f0 = ExactMatrix(ring, [[1], [0]])
    g0 = ExactMatrix(ring, [[2]])
    N = 3
    from descent.simplicial import Augmentation, constant_map
    f = constant_map(cat, f0, N)
    D = OmegaDiagram(f, Augmentation(f.source, 1, g0))
    L = simp_cyl(D).cyl
    C = cubical_cyl(f, D.aug.as_map_to_constant()).cyl
    assert L.objects == C.objects
    assert all(cat.mor_eq(L.faces[k], C.faces[k]) for k in L.faces)
    assert all(cat.mor_eq(L.degens[k], C.degens[k]) for k in L.degens)


def test_diagonal_of_cyl1_equals_cubical():
    # D(Cyl^(2)(f x Delta, g x Delta)) = ~Cyl(f, g): realized through psi of
    # the levelwise diagram; here we check the diagonal of the bisimplicial
    # cylinder built by applying simp_cyl levelwise in the second index.
    rng = trial_rng(41, 0)
    ring = F2
    f, g = random_square_maps(rng, ring, 2)
    X = f.source
    cat = X.cat
    N = X.N
    # bisimplicial object: for each fixed n, the cylinder of the constant
    # diagram (f_n, g_n); its diagonal must equal ~Cyl(f, g)
    from descent.simplicial import Augmentation, constant_map, TruncBisimplicial
    levels = {}
    for n in range(N + 1):
        cm = constant_map(cat, f.components[n], N)
        Dn = OmegaDiagram(cm, Augmentation(cm.source, g.target.obj(n), g.components[n]))
        levels[n] = simp_cyl(Dn).cyl
    # diagonal levels: levels[n] at simplicial degree n
    C = cubical_cyl(f, g).cyl
    for n in range(N + 1):
        assert levels[n].obj(n) == C.obj(n)


# -- retraction --------------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(6))
def test_retraction(seed):
    rng = trial_rng(43, seed)
    ring = [F2, F3, F5][seed % 3]
    D = random_omega(rng, ring, 3)
    alpha, beta, cylD, tilD = cyl_retraction(D)
    assert simplicial_map_violations(alpha) == []
    assert simplicial_map_violations(beta) == []
    cat = cylD.cyl.cat
    for n in range(D.X.N + 1):
        comp = cat.compose(beta.components[n], alpha.components[n])
        assert cat.mor_eq(comp, cat.identity(cylD.cyl.obj(n)))
    # both commute with the inclusions of X_{-1} and Y
    til = cubical_cyl(D.f, D.aug.as_map_to_constant())
    for n in range(D.X.N + 1):
        lhs = cat.compose(alpha.components[n], cylD.i_top.components[n])
        assert cat.mor_eq(lhs, til.j_top.components[n])
        lhs = cat.compose(alpha.components[n], cylD.i_bottom.components[n])
        assert cat.mor_eq(lhs, til.j_bottom.components[n])


# -- universal property ---------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(4))
def test_cyl_universal(seed):
    rng = trial_rng(47, seed)
    ring = F3
    D = random_omega(rng, ring, 3)
    cat = D.X.cat
    # T = X_{-1}, rho = id, rho' = the augmentation composed through f? take
    # the commuting square with T = point when the augmentation is pointlike
    T = D.aug.X_minus1
    rho0 = cat.identity(T)
    # need rho' with rho' f = rho eps: take rho'_n = ? only possible when f
    # has a retraction-compatible structure; use instead T = 0 trivially and
    # the pointlike square when available
    if T == 1:
        ones = lambda n: ExactMatrix(ring, [[1] * n], 1, n)
        rho_prime = SimplicialMap(D.Y, constant(cat, 1, D.Y.N),
                                  [ones(D.Y.obj(n)) for n in range(D.Y.N + 1)])
        try:
            H, data = cyl_universal(D, 1, rho0, rho_prime)
        except ValueError:
            return  # square does not commute for this instance: nothing to test
        assert simplicial_map_violations(H) == []
        for n in range(D.X.N + 1):
            lhs = cat.compose(H.components[n], data.i_bottom.components[n])
            assert cat.mor_eq(lhs, rho0)
            lhs = cat.compose(H.components[n], data.i_top.components[n])
            assert cat.mor_eq(lhs, rho_prime.components[n])
    # T = 0: zero maps
    zero_rho = ExactMatrix.zero(ring, 0, _obj_rank(D.aug.X_minus1))
    rho_prime0 = SimplicialMap(D.Y, constant(cat, 0, D.Y.N),
                               [ExactMatrix.zero(ring, 0, D.Y.obj(n))
                                for n in range(D.Y.N + 1)])
    H0, data0 = cyl_universal(D, 0, zero_rho, rho_prime0)
    assert all(m.rows == 0 for m in H0.components)


def _obj_rank(o):
    return o


# -- tot3 -------------------------------------------------------------------------------------

def test_tot3_concentrated():
    ring = F2
    cat = FreeModules(ring)
    # T concentrated at (0, 0, 0) with rank 2 and zero elsewhere: all three
    # totals agree and have a single nonzero level
    S = constant(cat, 1, 1)
    T = tri_external(S, S, S)
    N = 2
    T3, A0f, A2f, i0, i2 = tot3_coherence(T, N)
    assert check_identities(T3) == []
    assert simplicial_map_violations(i0) == []
    assert simplicial_map_violations(i2) == []


@pytest.mark.parametrize("seed", range(4))
def test_tot3_coherence_random(seed):
    rng = trial_rng(53, seed)
    ring = F2
    S1 = random_simplicial_modules(rng, ring, 3, conjugated=False)
    S2 = random_simplicial_modules(rng, ring, 3, conjugated=False)
    S3 = random_simplicial_modules(rng, ring, 3, conjugated=False)
    T = tri_external(S1, S2, S3)
    N = 3
    T3, F0, F2_, iso0, iso2 = tot3_coherence(T, N)
    assert check_identities(T3) == []
    assert check_identities(F0) == []
    assert check_identities(F2_) == []
    assert simplicial_map_violations(iso0) == []
    assert simplicial_map_violations(iso2) == []
    from descent.linalg import rank
    for n in range(N + 1):
        for iso in (iso0, iso2):
            m = iso.components[n]
            assert m.rows == m.cols and rank(m) == m.rows
