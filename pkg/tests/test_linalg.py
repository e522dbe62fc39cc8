import math
import random
from itertools import combinations

import pytest

from descent.linalg import (
    ZZ, GF, ExactMatrix, HomologyGroup, det, homology_at, image_basis,
    in_span, kernel_basis, rank, rref, smith_normal_form, solve_matrix,
    span_reduce, subspace_eq, subspace_intersect, subspace_le, subspace_sum,
    preimage,
)


def M(ring, rows):
    return ExactMatrix(ring, rows)


def determinantal_divisors(A):
    """Independent SNF oracle: d_k = gcd(k-minors)/gcd((k-1)-minors)."""
    n, m = A.rows, A.cols
    gcds = [1]
    for k in range(1, min(n, m) + 1):
        g = 0
        for ri in combinations(range(n), k):
            for ci in combinations(range(m), k):
                g = math.gcd(g, det(A.submatrix(ri, ci)))
        gcds.append(g)
        if g == 0:
            break
    ds = []
    for k in range(1, len(gcds)):
        if gcds[k] == 0:
            break
        ds.append(gcds[k] // gcds[k - 1])
    return ds


# -- Smith normal form -------------------------------------------------------

def test_snf_zero_matrix():
    A = ExactMatrix.zero(ZZ, 2, 3)
    U, D, V = smith_normal_form(A)
    assert D.is_zero()
    assert U * A * V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1


def test_snf_identity():
    A = ExactMatrix.identity(ZZ, 3)
    U, D, V = smith_normal_form(A)
    assert D == ExactMatrix.identity(ZZ, 3)
    assert U * A * V == D


def test_snf_frozen_example():
    # oracle (determinantal divisors): gcd of entries = 2, |det| = 8 -> diag(2, 4)
    A = M(ZZ, [[2, 4], [6, 8]])
    assert determinantal_divisors(A) == [2, 4]
    U, D, V = smith_normal_form(A)
    assert [D.entries[i][i] for i in range(2)] == [2, 4]
    assert U * A * V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1


def test_snf_rejects_fields():
    with pytest.raises(ValueError):
        smith_normal_form(ExactMatrix.identity(GF(5), 2))


@pytest.mark.parametrize("seed", range(25))
def test_snf_matches_determinantal_divisors(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    A = M(ZZ, [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
    U, D, V = smith_normal_form(A)
    assert U * A * V == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D.entries[i][i] for i in range(min(n, m))]
    for i in range(n):
        for j in range(m):
            if i != j:
                assert D.entries[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    assert nz == determinantal_divisors(A)


# -- rank / kernel / image ----------------------------------------------------

def test_kernel_of_identity_empty():
    assert kernel_basis(ExactMatrix.identity(ZZ, 3)).cols == 0


def test_kernel_f2_parity():
    K = kernel_basis(M(GF(2), [[1, 1]]))
    assert K.cols == 1
    assert K.column(0) == (1, 1)


def test_rank_and_kernel_frozen():
    A = M(ZZ, [[2, 4], [6, 8]])
    assert rank(A) == 2
    assert kernel_basis(A).cols == 0


def test_kernel_saturated_over_Z():
    # columns (2, 4) and (3, 6) both kill (2, -1); kernel lattice is generated
    # by the primitive vector even though the matrix has non-primitive columns
    A = M(ZZ, [[2, 4]])
    K = kernel_basis(A)
    assert K.cols == 1
    x, y = K.column(0)
    assert math.gcd(x, y) == 1
    assert 2 * x + 4 * y == 0


@pytest.mark.parametrize("seed", range(15))
def test_rank_nullity_over_field(seed):
    rng = random.Random(100 + seed)
    p = rng.choice([2, 3, 5])
    n, m = rng.randint(1, 5), rng.randint(1, 5)
    A = M(GF(p), [[rng.randrange(p) for _ in range(m)] for _ in range(n)])
    assert rank(A) + kernel_basis(A).cols == m
    for j in range(kernel_basis(A).cols):
        v = kernel_basis(A).submatrix(range(m), [j])
        assert (A * v).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_image_contained_in_any_kernel(seed):
    rng = random.Random(200 + seed)
    m, n, k = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
    A = M(ZZ, [[rng.randint(-4, 4) for _ in range(k)] for _ in range(n)])
    # build d_out with d_out * A = 0: d_out spans the left kernel of A
    L = kernel_basis(A.transpose()).transpose()
    if L.rows == 0:
        L = ExactMatrix.zero(ZZ, 1, n)
    assert (L * A).is_zero()
    I = image_basis(A)
    Kb = kernel_basis(L)
    for j in range(I.cols):
        assert in_span(Kb, I.submatrix(range(n), [j]))


# -- solve ---------------------------------------------------------------------

def test_solve_identity():
    b = M(ZZ, [[3], [-7]])
    assert solve_matrix(ExactMatrix.identity(ZZ, 2), b) == b


def test_solve_parity_obstruction():
    assert solve_matrix(M(ZZ, [[2]]), M(ZZ, [[1]])) is None


def test_solve_mod5():
    X = solve_matrix(M(GF(5), [[2]]), M(GF(5), [[1]]))
    assert X.entries[0][0] == 3  # 2*3 = 6 = 1 mod 5


@pytest.mark.parametrize("seed", range(10))
def test_solve_roundtrip(seed):
    rng = random.Random(300 + seed)
    ring = ZZ if seed % 2 else GF(3)
    lim = 4
    n, m = rng.randint(1, 4), rng.randint(1, 4)
    A = M(ring, [[rng.randint(-lim, lim) for _ in range(m)] for _ in range(n)])
    x = M(ring, [[rng.randint(-lim, lim)] for _ in range(m)])
    b = A * x
    y = solve_matrix(A, b)
    assert y is not None
    assert A * y == b


# -- homology -------------------------------------------------------------------

def test_homology_free_middle():
    d_in = ExactMatrix.zero(ZZ, 3, 0)
    d_out = ExactMatrix.zero(ZZ, 0, 3)
    H = homology_at(d_in, d_out)
    assert H == HomologyGroup(3)


def test_homology_times_two():
    # 0 -> Z --2--> Z -> 0 : homology at the target is Z/2
    d_in = M(ZZ, [[2]])
    d_out = ExactMatrix.zero(ZZ, 0, 1)
    assert homology_at(d_in, d_out) == HomologyGroup(0, (2,))


def test_homology_exact_identity():
    d_in = ExactMatrix.identity(ZZ, 2)
    d_out = ExactMatrix.zero(ZZ, 0, 2)
    assert homology_at(d_in, d_out).is_trivial


def test_homology_rejects_noncomplex():
    with pytest.raises(ValueError):
        homology_at(ExactMatrix.identity(ZZ, 2), ExactMatrix.identity(ZZ, 2))


@pytest.mark.parametrize("seed", range(10))
def test_homology_invariant_under_unimodular_conjugation(seed):
    rng = random.Random(400 + seed)
    mid = rng.randint(1, 4)
    a, c = rng.randint(0, 3), rng.randint(0, 3)
    d_in = M(ZZ, [[rng.randint(-3, 3) for _ in range(a)] for _ in range(mid)])
    # choose d_out spanning relations against the image so the composite is 0
    d_out = kernel_basis(d_in.transpose()).transpose() if a else \
        M(ZZ, [[rng.randint(-3, 3) for _ in range(mid)] for _ in range(c)])
    if d_out.rows == 0:
        d_out = ExactMatrix.zero(ZZ, 0, mid)
    H1 = homology_at(d_in, d_out)
    # random unimodular change of basis of the middle module
    P = ExactMatrix.identity(ZZ, mid)
    for _ in range(6):
        i, j = rng.randrange(mid), rng.randrange(mid)
        c = rng.randint(-2, 2)
        if i != j:
            rows = [list(r) for r in P.entries]
            rows[i] = [x + c * y for x, y in zip(rows[i], rows[j])]
            P = M(ZZ, rows)
    Pi = solve_matrix(P, ExactMatrix.identity(ZZ, mid))
    assert Pi is not None and P * Pi == ExactMatrix.identity(ZZ, mid)
    H2 = homology_at(P * d_in, d_out * Pi)
    assert H1 == H2


def test_homology_group_str():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(1)) == "Z"
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"


# -- subspace toolkit ------------------------------------------------------------

def test_subspace_ops():
    F = GF(5)
    A = M(F, [[1, 0], [0, 1], [0, 0]])
    B = M(F, [[0, 0], [1, 0], [0, 1]])
    S = subspace_sum(A, B)
    assert S.cols == 3
    I = subspace_intersect(A, B)
    assert I.cols == 1
    assert subspace_le(I, A) and subspace_le(I, B)
    assert subspace_eq(span_reduce(A), A)


def test_preimage():
    F = GF(3)
    f = M(F, [[1, 0], [0, 0]])
    W = ExactMatrix.zero(F, 2, 0)
    P = preimage(f, W)  # kernel of f
    assert P.cols == 1
    assert (f * P).is_zero()
