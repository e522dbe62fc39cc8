"""Finite simplicial-set models: standard simplices and their boundaries,
presentations by nondegenerate cells, ordered simplicial complexes, and the
small golden models (point, circle, sphere, projective plane).

Levels are plain cardinalities; elements are enumerated deterministically so
structure maps are value tables.
"""

from __future__ import annotations

from dataclasses import dataclass

from .simplexcat import (
    MonotoneMap, all_monotone_maps, compose, epi_mono_factorize, face,
    identity, surjections,
)
from .simplicial import FiniteSets, SetMap, TruncSimplicial

_SETS = FiniteSets()


def _sset_from_element_lists(levels: list[list], act) -> TruncSimplicial:
    """Build a simplicial finite set from explicit element lists and an
    action function act(element, f: MonotoneMap) -> element."""
    N = len(levels) - 1
    index = [{e: k for k, e in enumerate(lv)} for lv in levels]

    def table(n: int, f: MonotoneMap, tgt_level: int) -> SetMap:
        return SetMap(len(levels[n]), len(levels[tgt_level]),
                      tuple(index[tgt_level][act(e, f)] for e in levels[n]))

    faces = {}
    degens = {}
    from .simplexcat import degeneracy
    for n in range(1, N + 1):
        for i in range(n + 1):
            faces[(n, i)] = table(n, face(n, i), n - 1)
    for n in range(N):
        for j in range(n + 1):
            degens[(n, j)] = table(n, degeneracy(n, j), n + 1)
    return TruncSimplicial(_SETS, N, [len(lv) for lv in levels], faces, degens,
                           labels=levels)


def standard_simplex(m: int, N: int) -> TruncSimplicial:
    """Delta[m] truncated at N: level n is the monotone maps [n] -> [m]."""
    levels = [[f.values for f in all_monotone_maps(n, m)] for n in range(N + 1)]

    def act(vals, f: MonotoneMap):
        return tuple(vals[v] for v in f.values)

    return _sset_from_element_lists(levels, act)


def boundary_simplex(m: int, N: int) -> TruncSimplicial:
    """The boundary of Delta[m]: non-surjective monotone maps only."""
    levels = [[f.values for f in all_monotone_maps(n, m)
               if set(f.values) != set(range(m + 1))] for n in range(N + 1)]

    def act(vals, f: MonotoneMap):
        return tuple(vals[v] for v in f.values)

    return _sset_from_element_lists(levels, act)


def sset_from_complex(faces_of_complex: list[tuple[int, ...]], N: int) -> TruncSimplicial:
    """Simplicial set of an ordered abstract simplicial complex: level n is
    the weakly increasing vertex tuples whose support is a face."""
    closed = set()
    for f in faces_of_complex:
        f = tuple(sorted(set(f)))
        # close downward
        from itertools import combinations
        for k in range(1, len(f) + 1):
            for sub in combinations(f, k):
                closed.add(sub)
    verts = sorted({v for f in closed for v in f})

    levels = []
    for n in range(N + 1):
        lv = []

        def rec(prefix, lo):
            if len(prefix) == n + 1:
                if tuple(sorted(set(prefix))) in closed:
                    lv.append(tuple(prefix))
                return
            for v in verts:
                if v >= lo:
                    rec(prefix + [v], v)

        rec([], min(verts) if verts else 0)
        levels.append(lv)

    def act(vals, f: MonotoneMap):
        return tuple(vals[v] for v in f.values)

    return _sset_from_element_lists(levels, act)


# ---------------------------------------------------------------------------
# presentations by nondegenerate cells


@dataclass(frozen=True)
class Cell:
    name: str
    dim: int


def sset_from_cells(cells: list[Cell], faces: dict, N: int) -> TruncSimplicial:
    """Simplicial set generated by nondegenerate cells.

    ``faces[(name, i)]`` is the i-th face of the cell as an element
    (cell name, epi values tuple); cells of dimension 0 need no faces.
    Level n enumerates the pairs (cell, eta) with eta: [n] ->> [dim cell].
    """
    by_name = {c.name: c for c in cells}

    def elem(name: str, eta: MonotoneMap):
        return (name, eta.values)

    def face_of_cell(name: str, i: int):
        nm, vals = faces[(name, i)]
        return (nm, vals)

    def act(e, f: MonotoneMap):
        name, eta_vals = e
        m = by_name[name].dim
        eta = MonotoneMap(len(eta_vals) - 1, m, eta_vals)
        g = compose(eta, f)
        word = epi_mono_factorize(g)
        if not word.faces:
            return (name, g.values)
        # g = beta . alpha with alpha epi, beta mono; evaluate the cell at
        # beta one face at a time (largest index first), then append alpha
        seen = sorted(set(g.values))
        alpha_vals = tuple(seen.index(v) for v in g.values)
        cur = (name, tuple(range(m + 1)))
        lvl = m
        for i in word.faces:
            cur = _face_of_element(cur, i, by_name, faces)
            lvl -= 1
        nm2, eta2_vals = cur
        eta2 = MonotoneMap(len(eta2_vals) - 1, by_name[nm2].dim, eta2_vals)
        alpha = MonotoneMap(len(alpha_vals) - 1, len(seen) - 1, alpha_vals)
        final = compose(eta2, alpha)
        return (nm2, final.values)

    def _face_of_element(e, i, by_name, faces):
        name, eta_vals = e
        m = by_name[name].dim
        eta = MonotoneMap(len(eta_vals) - 1, m, eta_vals)
        if eta.is_identity:
            return face_of_cell(name, i)
        return act(e, face(eta.source, i))

    levels = []
    for n in range(N + 1):
        lv = []
        for c in cells:
            if c.dim <= n:
                for eta in surjections(n, c.dim):
                    lv.append((c.name, eta.values))
        levels.append(lv)
    return _sset_from_element_lists(levels, act)


# ---------------------------------------------------------------------------
# golden models


def sset_point(N: int) -> TruncSimplicial:
    return sset_from_cells([Cell("v", 0)], {}, N)


def sset_circle(N: int) -> TruncSimplicial:
    """One vertex, one nondegenerate edge glued at both ends."""
    v = ("v", (0,))
    return sset_from_cells(
        [Cell("v", 0), Cell("a", 1)],
        {("a", 0): v, ("a", 1): v},
        N)


def sset_rp2(N: int) -> TruncSimplicial:
    """Minimal-style projective plane: one cell in dimensions 0, 1, 2 with
    the 2-cell attached along the edge twice (middle face degenerate)."""
    v = ("v", (0,))
    a = ("a", (0, 1))
    sv = ("v", (0, 0))  # degenerate edge
    return sset_from_cells(
        [Cell("v", 0), Cell("a", 1), Cell("U", 2)],
        {("a", 0): v, ("a", 1): v,
         ("U", 0): a, ("U", 1): sv, ("U", 2): a},
        N)


def sset_sphere2(N: int) -> TruncSimplicial:
    """The boundary of the 3-simplex."""
    return boundary_simplex(3, N)
