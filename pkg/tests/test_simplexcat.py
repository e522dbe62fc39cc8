import random
from itertools import product

import pytest

from descent.simplexcat import (
    MonotoneMap, TotIndex, all_monotone_maps, compose, degeneracy,
    epi_mono_factorize, face, identity, op_map, ordered_sum, recompose,
    surjections, tot_indices, tot_restrictions,
)


# -- composition ----------------------------------------------------------------

def test_identity_composition():
    f = MonotoneMap(2, 1, (0, 0, 1))
    assert compose(identity(1), f) == f
    assert compose(f, identity(2)) == f


def test_sigma0_after_d0_is_identity():
    assert compose(degeneracy(0, 0), face(1, 0)) == identity(0)


def test_face_face_composite():
    # d1 then d0 on [0] -> [2]: 0 -> 0 under face(2,1) after face(1,0)?
    g = compose(face(2, 1), face(1, 0))
    assert g.values == (2,)
    # the spec's sample composite: d0 then d1 sends 0 to 0
    h = compose(face(2, 2), face(1, 1))
    assert h.values == (0,)


def test_compose_shape_mismatch():
    with pytest.raises(ValueError):
        compose(face(1, 0), face(1, 0))


# -- simplicial identities for generators (exhaustive, n <= 6) ---------------------

def test_simplicial_identities_exhaustive():
    N = 6
    for n in range(N):
        # face-face: d_j d_i = d_i d_{j-1} for i < j  (maps [n] -> [n+2])
        for j in range(n + 3):
            for i in range(j):
                if j > n + 2 or i > n + 1:
                    continue
                lhs = compose(face(n + 2, j), face(n + 1, i))
                rhs = compose(face(n + 2, i), face(n + 1, j - 1))
                assert lhs == rhs
        # degeneracy-degeneracy: s_j s_i = s_i s_{j+1} for i <= j ([n+2] -> [n])
        for i in range(n + 1):
            for j in range(i, n + 1):
                if j + 1 > n + 1:
                    continue
                lhs = compose(degeneracy(n, j), degeneracy(n + 1, i))
                rhs = compose(degeneracy(n, i), degeneracy(n + 1, j + 1))
                assert lhs == rhs
        # mixed: s_j d_i
        for j in range(n + 1):
            for i in range(n + 3):
                if i > n + 2:
                    continue
                lhs = compose(degeneracy(n + 1, j), face(n + 2, i))
                if i < j:
                    rhs = compose(face(n + 1, i), degeneracy(n, j - 1))
                elif i in (j, j + 1):
                    rhs = identity(n + 1)
                else:
                    rhs = compose(face(n + 1, i - 1), degeneracy(n, j))
                assert lhs == rhs


# -- factorization ------------------------------------------------------------------

def test_factorize_identity():
    w = epi_mono_factorize(identity(3))
    assert w.faces == () and w.degeneracies == ()
    assert recompose(w) == identity(3)


def test_factorize_sigma0():
    f = MonotoneMap(2, 1, (0, 0, 1))
    w = epi_mono_factorize(f)
    assert w.faces == ()
    assert w.degeneracies == (0,)
    assert recompose(w) == f


def test_factorize_injection():
    f = MonotoneMap(0, 2, (1,))
    w = epi_mono_factorize(f)
    assert w.faces == (2, 0)
    assert w.degeneracies == ()
    assert recompose(w) == f


@pytest.mark.parametrize("n,m", [(0, 0), (1, 2), (2, 1), (3, 2), (2, 3), (3, 3)])
def test_factorization_unique_roundtrip(n, m):
    for f in all_monotone_maps(n, m):
        w = epi_mono_factorize(f)
        assert recompose(w) == f


# -- op --------------------------------------------------------------------------------

def test_op_on_faces():
    for n in range(1, 5):
        for i in range(n + 1):
            assert op_map(face(n, i)) == face(n, n - i)


def test_op_involution():
    rng = random.Random(0)
    for _ in range(20):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        maps = list(all_monotone_maps(n, m))
        f = rng.choice(maps)
        assert op_map(op_map(f)) == f
    assert op_map(identity(3)) == identity(3)


# -- ordered sum -----------------------------------------------------------------------

def test_ordered_sum_basics():
    t, i1, i2 = ordered_sum(0, 0)
    assert t == 1 and i1.values == (0,) and i2.values == (1,)
    t, i1, i2 = ordered_sum(1, 2)
    assert t == 4
    assert i1.values == (0, 1) and i2.values == (2, 3, 4)


def test_ordered_sum_associative():
    for n, m, k in [(0, 1, 2), (1, 1, 1), (2, 0, 1)]:
        assert ordered_sum(ordered_sum(n, m)[0], k)[0] == ordered_sum(n, ordered_sum(m, k)[0])[0]


# -- TotIndex and restrictions ------------------------------------------------------------

def test_tot_index_bijection():
    for n in range(5):
        idxs = tot_indices(n)
        assert len(idxs) == n + 2
        sigmas = {t.sigma for t in idxs}
        assert len(sigmas) == n + 2
        for t in idxs:
            assert TotIndex.from_map(t.sigma) == t
        in_lam = [t for t in idxs if t.in_lambda]
        assert len(in_lam) == n


def test_tot_restrictions_constant_sigmas():
    theta = MonotoneMap(2, 3, (0, 1, 3))
    u1 = TotIndex(3, 0).sigma
    t0, t1 = tot_restrictions(theta, u1)
    assert t0.source == -1
    assert t1 == theta
    u0 = TotIndex(3, 4).sigma
    t0, t1 = tot_restrictions(theta, u0)
    assert t1.source == -1
    assert t0 == theta


def test_tot_restrictions_face_case():
    # theta = face k with i_sigma <= k: theta0 = id, theta1 = face_{k - i_sigma}
    n = 3
    for k in range(n + 1):
        for cut in range(k + 1):
            sigma = TotIndex(n, cut).sigma
            theta = face(n, k)
            t0, t1 = tot_restrictions(theta, sigma)
            assert t0 == identity(cut - 1)
            assert t1 == face(n - cut, k - cut)


def test_surjection_counts():
    assert len(surjections(2, 1)) == 2
    assert len(surjections(2, 2)) == 1
    assert len(surjections(2, 0)) == 1
