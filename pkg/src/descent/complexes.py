"""Bounded chain/cochain complexes, chain maps, homotopies, total complexes
of double and triple complexes, algebraic cones and path objects, and
quasi-isomorphism tests.

Complexes have finite support.  A chain differential lowers degree, a cochain
differential raises it.  Double and triple complexes follow the "naif"
convention: the partial differentials square to zero and commute, signs enter
only through the total complex, whose boundary on the (i1, i2) component is
(-1)^{i2} d1 + d2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .linalg import (
    ExactMatrix, HomologyGroup, Ring, homology_at, homology_reps, rank,
    solve_matrix,
)

CHAIN = "chain"
COCHAIN = "cochain"


def _step(direction: str) -> int:
    if direction == CHAIN:
        return -1
    if direction == COCHAIN:
        return 1
    raise ValueError(f"bad direction {direction!r}")


class BoundedComplex:
    """Finite-support complex: per-degree ranks plus boundary matrices.

    ``diff[q]`` is the boundary leaving degree ``q`` (into ``q-1`` for chain
    complexes, ``q+1`` for cochain ones).  ``d(q)`` returns a correctly-shaped
    zero matrix outside the stored support, so degreewise formulas need no
    case splits.
    """

    __slots__ = ("ring", "direction", "ranks", "diffs")

    def __init__(self, ring: Ring, direction: str, ranks: Mapping[int, int],
                 diffs: Mapping[int, ExactMatrix], check: bool = True):
        _step(direction)
        self.ring = ring
        self.direction = direction
        self.ranks = {q: r for q, r in sorted(ranks.items()) if r}
        self.diffs = {}
        for q, m in sorted(diffs.items()):
            if m.rows == 0 and m.cols == 0:
                continue
            if m.is_zero():
                continue
            self.diffs[q] = m
        if check:
            self.validate()

    # -- structure -----------------------------------------------------------

    def rank(self, q: int) -> int:
        return self.ranks.get(q, 0)

    def d(self, q: int) -> ExactMatrix:
        m = self.diffs.get(q)
        if m is not None:
            return m
        s = _step(self.direction)
        return ExactMatrix.zero(self.ring, self.rank(q + s), self.rank(q))

    @property
    def support(self) -> tuple[int, int] | None:
        if not self.ranks:
            return None
        ks = list(self.ranks)
        return min(ks), max(ks)

    def degrees(self):
        return sorted(self.ranks)

    def validate(self):
        s = _step(self.direction)
        for q, m in self.diffs.items():
            if m.ring != self.ring:
                raise ValueError("differential ring mismatch")
            if m.cols != self.rank(q) or m.rows != self.rank(q + s):
                raise ValueError(f"differential at degree {q} has shape "
                                 f"{m.rows}x{m.cols}, want {self.rank(q + s)}x{self.rank(q)}")
        for q in self.degrees():
            if not (self.d(q + s) * self.d(q)).is_zero():
                raise ValueError(f"d.d != 0 at degree {q}")

    def __eq__(self, other):
        return (isinstance(other, BoundedComplex) and self.ring == other.ring
                and self.direction == other.direction and self.ranks == other.ranks
                and all(self.d(q) == other.d(q) for q in self.degrees()))

    def __repr__(self):
        rk = ", ".join(f"{q}:{r}" for q, r in self.ranks.items())
        return f"<{self.direction} complex over {self.ring} ranks {{{rk}}}>"

    # -- invariants ----------------------------------------------------------

    def homology(self, q: int) -> HomologyGroup:
        s = _step(self.direction)
        d_in = self.d(q - s)
        d_out = self.d(q)
        return homology_at(d_in, d_out)

    def homology_dict(self) -> dict[int, HomologyGroup]:
        sup = self.support
        if sup is None:
            return {}
        return {q: self.homology(q) for q in range(sup[0], sup[1] + 1)}

    def is_acyclic(self, degrees=None) -> bool:
        sup = self.support
        if sup is None:
            return True
        if degrees is None:
            degrees = range(sup[0], sup[1] + 1)
        return all(self.homology(q).is_trivial for q in degrees)

    # -- constructions --------------------------------------------------------

    @staticmethod
    def zero(ring: Ring, direction: str = CHAIN) -> "BoundedComplex":
        return BoundedComplex(ring, direction, {}, {})

    @staticmethod
    def single(ring: Ring, q: int, r: int, direction: str = CHAIN) -> "BoundedComplex":
        return BoundedComplex(ring, direction, {q: r}, {})

    def shift(self, k: int) -> "BoundedComplex":
        """Degree translation by k with boundary sign (-1)^k."""
        sgn = -1 if k % 2 else 1
        if self.direction == CHAIN:
            ranks = {q + k: r for q, r in self.ranks.items()}
            diffs = {q + k: m.scale(sgn) for q, m in self.diffs.items()}
        else:
            ranks = {q - k: r for q, r in self.ranks.items()}
            diffs = {q - k: m.scale(sgn) for q, m in self.diffs.items()}
        return BoundedComplex(self.ring, self.direction, ranks, diffs, check=False)

    def regrade(self) -> "BoundedComplex":
        """Chain <-> cochain through q -> -q."""
        other = COCHAIN if self.direction == CHAIN else CHAIN
        ranks = {-q: r for q, r in self.ranks.items()}
        diffs = {-q: m for q, m in self.diffs.items()}
        return BoundedComplex(self.ring, other, ranks, diffs, check=False)

    def direct_sum(self, other: "BoundedComplex") -> "BoundedComplex":
        if self.ring != other.ring or self.direction != other.direction:
            raise ValueError("direct sum mismatch")
        degrees = sorted(set(self.ranks) | set(other.ranks))
        ranks = {q: self.rank(q) + other.rank(q) for q in degrees}
        s = _step(self.direction)
        diffs = {}
        for q in degrees:
            diffs[q] = ExactMatrix.from_blocks(
                self.ring,
                [[self.d(q), None], [None, other.d(q)]],
                [self.rank(q + s), other.rank(q + s)],
                [self.rank(q), other.rank(q)])
        return BoundedComplex(self.ring, self.direction, ranks, diffs, check=False)

    def truncate(self, lo: int, hi: int) -> "BoundedComplex":
        """Keep degrees lo..hi, dropping boundaries that leave the window."""
        s = _step(self.direction)
        ranks = {q: r for q, r in self.ranks.items() if lo <= q <= hi}
        diffs = {q: m for q, m in self.diffs.items() if lo <= q <= hi and lo <= q + s <= hi}
        return BoundedComplex(self.ring, self.direction, ranks, diffs, check=False)


class ChainMap:
    """Degreewise matrices commuting with the boundaries."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: BoundedComplex, target: BoundedComplex,
                 maps: Mapping[int, ExactMatrix], check: bool = True):
        if source.ring != target.ring or source.direction != target.direction:
            raise ValueError("chain map between incompatible complexes")
        self.source = source
        self.target = target
        self.maps = {q: m for q, m in sorted(maps.items()) if m.rows or m.cols}
        if check:
            self.validate()

    def f(self, q: int) -> ExactMatrix:
        m = self.maps.get(q)
        if m is not None:
            return m
        return ExactMatrix.zero(self.source.ring, self.target.rank(q), self.source.rank(q))

    def validate(self):
        for q, m in self.maps.items():
            if m.cols != self.source.rank(q) or m.rows != self.target.rank(q):
                raise ValueError(f"component at degree {q} has wrong shape")
        s = _step(self.source.direction)
        for q in set(self.source.ranks) | set(self.target.ranks):
            lhs = self.f(q + s) * self.source.d(q)
            rhs = self.target.d(q) * self.f(q)
            if lhs != rhs:
                raise ValueError(f"does not commute with boundaries at degree {q}")

    def __eq__(self, other):
        return (isinstance(other, ChainMap) and self.source == other.source
                and self.target == other.target
                and all(self.f(q) == other.f(q)
                        for q in set(self.source.ranks) | set(other.source.ranks)))

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        qs = set(other.source.ranks)
        return ChainMap(other.source, self.target,
                        {q: self.f(q) * other.f(q) for q in qs}, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        qs = set(self.source.ranks)
        return ChainMap(self.source, self.target,
                        {q: self.f(q) + other.f(q) for q in qs}, check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        qs = set(self.source.ranks)
        return ChainMap(self.source, self.target,
                        {q: self.f(q) - other.f(q) for q in qs}, check=False)

    def shift(self, k: int) -> "ChainMap":
        src, tgt = self.source.shift(k), self.target.shift(k)
        off = k if self.source.direction == CHAIN else -k
        return ChainMap(src, tgt, {q + off: m for q, m in self.maps.items()}, check=False)

    @staticmethod
    def identity(X: BoundedComplex) -> "ChainMap":
        return ChainMap(X, X, {q: ExactMatrix.identity(X.ring, r) for q, r in X.ranks.items()},
                        check=False)

    @staticmethod
    def zero_map(X: BoundedComplex, Y: BoundedComplex) -> "ChainMap":
        return ChainMap(X, Y, {}, check=False)

    def is_iso(self) -> bool:
        for q in set(self.source.ranks) | set(self.target.ranks):
            m = self.f(q)
            if m.rows != m.cols:
                return False
            if rank(m) != m.rows:
                return False
            if not self.source.ring.is_field and m.rows:
                inv = solve_matrix(m, ExactMatrix.identity(m.ring, m.rows))
                if inv is None:
                    return False
        return True


@dataclass
class Homotopy:
    """h with d h + h d = f - g; degree +1 for chain, -1 for cochain.

    ``maps[q]`` goes from source degree q to target degree q+1 (chain) or
    q-1 (cochain).
    """

    f: ChainMap
    g: ChainMap
    maps: dict[int, ExactMatrix]

    def h(self, q: int) -> ExactMatrix:
        m = self.maps.get(q)
        if m is not None:
            return m
        X, Y = self.f.source, self.f.target
        off = 1 if X.direction == CHAIN else -1
        return ExactMatrix.zero(X.ring, Y.rank(q + off), X.rank(q))


def homotopy_violations(h: Homotopy) -> list[int]:
    """Degrees where d h + h d != f - g."""
    X, Y = h.f.source, h.f.target
    s = _step(X.direction)
    bad = []
    for q in sorted(set(X.ranks) | set(Y.ranks)):
        lhs = Y.d(q - s) * h.h(q) + h.h(q + s) * X.d(q)
        if lhs != h.f.f(q) - h.g.f(q):
            bad.append(q)
    return bad


def verify_homotopy(h: Homotopy) -> bool:
    return not homotopy_violations(h)


# ---------------------------------------------------------------------------
# double and triple complexes


class DoubleComplex:
    """Naif double complex: d1 moves the first index, d2 the second, both
    square to zero and commute on the nose."""

    __slots__ = ("ring", "direction", "ranks", "d1s", "d2s")

    def __init__(self, ring: Ring, ranks: Mapping[tuple[int, int], int],
                 d1s: Mapping[tuple[int, int], ExactMatrix],
                 d2s: Mapping[tuple[int, int], ExactMatrix],
                 direction: str = CHAIN, check: bool = True):
        _step(direction)
        self.ring = ring
        self.direction = direction
        self.ranks = {ij: r for ij, r in sorted(ranks.items()) if r}
        self.d1s = {ij: m for ij, m in sorted(d1s.items()) if not m.is_zero()}
        self.d2s = {ij: m for ij, m in sorted(d2s.items()) if not m.is_zero()}
        if check:
            self.validate()

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def d1(self, i: int, j: int) -> ExactMatrix:
        m = self.d1s.get((i, j))
        if m is not None:
            return m
        s = _step(self.direction)
        return ExactMatrix.zero(self.ring, self.rank(i + s, j), self.rank(i, j))

    def d2(self, i: int, j: int) -> ExactMatrix:
        m = self.d2s.get((i, j))
        if m is not None:
            return m
        s = _step(self.direction)
        return ExactMatrix.zero(self.ring, self.rank(i, j + s), self.rank(i, j))

    def validate(self):
        s = _step(self.direction)
        for (i, j), m in self.d1s.items():
            if m.cols != self.rank(i, j) or m.rows != self.rank(i + s, j):
                raise ValueError(f"d1 at {(i, j)} has wrong shape")
        for (i, j), m in self.d2s.items():
            if m.cols != self.rank(i, j) or m.rows != self.rank(i, j + s):
                raise ValueError(f"d2 at {(i, j)} has wrong shape")
        for (i, j) in self.ranks:
            if not (self.d1(i + s, j) * self.d1(i, j)).is_zero():
                raise ValueError(f"d1.d1 != 0 at {(i, j)}")
            if not (self.d2(i, j + s) * self.d2(i, j)).is_zero():
                raise ValueError(f"d2.d2 != 0 at {(i, j)}")
            if self.d2(i + s, j) * self.d1(i, j) != self.d1(i, j + s) * self.d2(i, j):
                raise ValueError(f"d1 and d2 do not commute at {(i, j)}")

    def swap(self) -> "DoubleComplex":
        """Index swap (the Gamma functor on double complexes)."""
        return DoubleComplex(self.ring,
                             {(j, i): r for (i, j), r in self.ranks.items()},
                             {(j, i): m for (i, j), m in self.d2s.items()},
                             {(j, i): m for (i, j), m in self.d1s.items()},
                             self.direction, check=False)


class TripleComplex:
    __slots__ = ("ring", "direction", "ranks", "ds")

    def __init__(self, ring: Ring, ranks: Mapping[tuple[int, int, int], int],
                 d1s, d2s, d3s, direction: str = CHAIN, check: bool = True):
        _step(direction)
        self.ring = ring
        self.direction = direction
        self.ranks = {ijk: r for ijk, r in sorted(ranks.items()) if r}
        self.ds = ({k: m for k, m in sorted(d1s.items()) if not m.is_zero()},
                   {k: m for k, m in sorted(d2s.items()) if not m.is_zero()},
                   {k: m for k, m in sorted(d3s.items()) if not m.is_zero()})
        if check:
            self.validate()

    def rank(self, ijk) -> int:
        return self.ranks.get(tuple(ijk), 0)

    def d(self, axis: int, ijk) -> ExactMatrix:
        m = self.ds[axis - 1].get(tuple(ijk))
        if m is not None:
            return m
        s = _step(self.direction)
        tgt = list(ijk)
        tgt[axis - 1] += s
        return ExactMatrix.zero(self.ring, self.rank(tgt), self.rank(ijk))

    def validate(self):
        s = _step(self.direction)
        for ijk in self.ranks:
            for a in (1, 2, 3):
                nxt = list(ijk)
                nxt[a - 1] += s
                if not (self.d(a, nxt) * self.d(a, ijk)).is_zero():
                    raise ValueError(f"d{a}.d{a} != 0 at {ijk}")
            for a in (1, 2, 3):
                for b in (1, 2, 3):
                    if a >= b:
                        continue
                    na = list(ijk); na[a - 1] += s
                    nb = list(ijk); nb[b - 1] += s
                    if self.d(b, na) * self.d(a, ijk) != self.d(a, nb) * self.d(b, ijk):
                        raise ValueError(f"d{a} and d{b} do not commute at {ijk}")


def antidiagonal(A: DoubleComplex, n: int) -> list[tuple[int, int]]:
    """Components (i1, i2) of total degree n, ordered by ascending i1."""
    return sorted((ij for ij in A.ranks if ij[0] + ij[1] == n))


def tot_double(A: DoubleComplex) -> BoundedComplex:
    """Total complex: (Tot A)_n = sum of the n-th antidiagonal, boundary
    (-1)^{i2} d1 + d2 on the (i1, i2) component."""
    s = _step(A.direction)
    degrees = sorted({i + j for (i, j) in A.ranks})
    ranks = {}
    layout = {}
    for n in degrees:
        comps = antidiagonal(A, n)
        layout[n] = comps
        ranks[n] = sum(A.rank(i, j) for i, j in comps)
    diffs = {}
    for n in degrees:
        src = layout.get(n, [])
        tgt = layout.get(n + s, antidiagonal(A, n + s))
        if not src:
            continue
        tgt_sizes = [A.rank(i, j) for i, j in tgt]
        src_sizes = [A.rank(i, j) for i, j in src]
        if not tgt:
            continue
        blocks = [[None] * len(src) for _ in tgt]
        tpos = {ij: k for k, ij in enumerate(tgt)}
        for cs, (i, j) in enumerate(src):
            sgn = -1 if j % 2 else 1
            t1 = (i + s, j)
            if t1 in tpos:
                blocks[tpos[t1]][cs] = A.d1(i, j).scale(sgn)
            t2 = (i, j + s)
            if t2 in tpos:
                blocks[tpos[t2]][cs] = A.d2(i, j)
        diffs[n] = ExactMatrix.from_blocks(A.ring, blocks, tgt_sizes, src_sizes)
    return BoundedComplex(A.ring, A.direction, ranks, diffs)


def tot_swap_iso(A: DoubleComplex) -> ChainMap:
    """Chain isomorphism tot(swap A) -> tot(A): sign (-1)^{i1*i2} plus the
    component permutation."""
    G = A.swap()
    TG, TA = tot_double(G), tot_double(A)
    maps = {}
    for n in TA.degrees():
        src_comps = antidiagonal(G, n)
        tgt_comps = antidiagonal(A, n)
        src_sizes = [G.rank(*ij) for ij in src_comps]
        tgt_sizes = [A.rank(*ij) for ij in tgt_comps]
        blocks = [[None] * len(src_comps) for _ in tgt_comps]
        tpos = {ij: k for k, ij in enumerate(tgt_comps)}
        for cs, (i, j) in enumerate(src_comps):
            k = tpos[(j, i)]
            sgn = -1 if (i * j) % 2 else 1
            blocks[k][cs] = ExactMatrix.identity(A.ring, G.rank(i, j)).scale(sgn)
        maps[n] = ExactMatrix.from_blocks(A.ring, blocks, tgt_sizes, src_sizes)
    return ChainMap(TG, TA, maps)


def _tot_pair(A: TripleComplex, axes: tuple[int, int]) -> DoubleComplex:
    """Collapse the two given axes of a triple complex into the first index of
    a double complex, with the displayed sign rules."""
    a, b = axes
    c = ({1, 2, 3} - {a, b}).pop()
    s = _step(A.direction)
    ranks = {}
    layout = {}
    for ijk in A.ranks:
        p = ijk[a - 1] + ijk[b - 1]
        q = ijk[c - 1]
        layout.setdefault((p, q), []).append(ijk)
        ranks[(p, q)] = ranks.get((p, q), 0) + A.rank(ijk)
    for key in layout:
        layout[key].sort()
    d1s, d2s = {}, {}
    for (p, q), comps in sorted(layout.items()):
        src_sizes = [A.rank(k) for k in comps]
        # d along the collapsed pair: (-1)^{index b} d_a + d_b
        t_comps = sorted(layout.get((p + s, q), []))
        if t_comps:
            tpos = {k: i for i, k in enumerate(t_comps)}
            blocks = [[None] * len(comps) for _ in t_comps]
            for cs, ijk in enumerate(comps):
                sgn = -1 if ijk[b - 1] % 2 else 1
                ta = list(ijk); ta[a - 1] += s
                if tuple(ta) in tpos:
                    blocks[tpos[tuple(ta)]][cs] = A.d(a, ijk).scale(sgn)
                tb = list(ijk); tb[b - 1] += s
                if tuple(tb) in tpos:
                    blocks[tpos[tuple(tb)]][cs] = A.d(b, ijk)
            d1s[(p, q)] = ExactMatrix.from_blocks(A.ring, blocks,
                                                  [A.rank(k) for k in t_comps], src_sizes)
        # d along the remaining axis, blockwise and sign free
        t_comps = sorted(layout.get((p, q + s), []))
        if t_comps:
            tpos = {k: i for i, k in enumerate(t_comps)}
            blocks = [[None] * len(comps) for _ in t_comps]
            for cs, ijk in enumerate(comps):
                tc = list(ijk); tc[c - 1] += s
                if tuple(tc) in tpos:
                    blocks[tpos[tuple(tc)]][cs] = A.d(c, ijk)
            d2s[(p, q)] = ExactMatrix.from_blocks(A.ring, blocks,
                                                  [A.rank(k) for k in t_comps], src_sizes)
    return DoubleComplex(A.ring, ranks, d1s, d2s, A.direction)


def tot_triple_12(A: TripleComplex) -> DoubleComplex:
    return _tot_pair(A, (1, 2))


def tot_triple_23(A: TripleComplex) -> DoubleComplex:
    return _tot_pair(A, (2, 3))


def tot_triple_13(A: TripleComplex) -> DoubleComplex:
    return _tot_pair(A, (1, 3))


def _triple_layout(A: TripleComplex, pair_axes, n):
    """Flattened component order of tot_double(_tot_pair(A, pair_axes)) in
    total degree n: sorted by (p, then component triple)."""
    a, b = pair_axes
    c = ({1, 2, 3} - {a, b}).pop()
    out = []
    for key in antidiagonal(_tot_pair(A, pair_axes), n):
        p, q = key
        comps = sorted(k for k in A.ranks
                       if k[a - 1] + k[b - 1] == p and k[c - 1] == q)
        out.extend(comps)
    return out


_COHERENCE_EXPONENT = {
    # Koszul exponents epsilon(i1,i2,i3) relating the three iterated totals;
    # derived from the displayed sign rules of Tot^{1,2}, Tot^{2,3}, Tot^{1,3}.
    ((1, 2), (2, 3)): lambda i1, i2, i3: i1 * (i2 + i3),
    ((1, 2), (1, 3)): lambda i1, i2, i3: i2 * i3,
    ((2, 3), (1, 3)): lambda i1, i2, i3: i1 * i2 + i1 * i3 + i2 * i3,
    ((2, 3), (1, 2)): lambda i1, i2, i3: i1 * (i2 + i3),
    ((1, 3), (1, 2)): lambda i1, i2, i3: i2 * i3,
    ((1, 3), (2, 3)): lambda i1, i2, i3: i1 * i2 + i1 * i3 + i2 * i3,
}


def triple_coherence_iso(A: TripleComplex, first=(1, 2), second=(2, 3)) -> ChainMap:
    """The canonical signed permutation tot(tot_first A) -> tot(tot_second A).

    Signs are fixed by the Koszul rule matching the displayed sign conventions
    of the three pairwise total functors.
    """
    if first == second:
        raise ValueError("need two different pairings")
    expo = _COHERENCE_EXPONENT[(tuple(first), tuple(second))]
    TA = tot_double(_tot_pair(A, first))
    TB = tot_double(_tot_pair(A, second))
    sgn = {c: (-1 if expo(*c) % 2 else 1) for c in A.ranks}
    maps = {}
    for n in TA.degrees():
        src = _triple_layout(A, first, n)
        tgt = _triple_layout(A, second, n)
        src_sizes = [A.rank(k) for k in src]
        tgt_sizes = [A.rank(k) for k in tgt]
        tpos = {k: i for i, k in enumerate(tgt)}
        blocks = [[None] * len(src) for _ in tgt]
        for cs, k in enumerate(src):
            blocks[tpos[k]][cs] = ExactMatrix.identity(A.ring, A.rank(k)).scale(sgn[k])
        maps[n] = ExactMatrix.from_blocks(A.ring, blocks, tgt_sizes, src_sizes)
    return ChainMap(TA, TB, maps)


class DoubleMap:
    """Map of naif double complexes: components commute with d1 and d2."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: DoubleComplex, target: DoubleComplex,
                 maps: Mapping[tuple[int, int], ExactMatrix], check: bool = True):
        self.source = source
        self.target = target
        self.maps = {ij: m for ij, m in sorted(maps.items())}
        if check:
            self.validate()

    def f(self, i: int, j: int) -> ExactMatrix:
        m = self.maps.get((i, j))
        if m is not None:
            return m
        return ExactMatrix.zero(self.source.ring, self.target.rank(i, j), self.source.rank(i, j))

    def validate(self):
        s = _step(self.source.direction)
        for (i, j) in set(self.source.ranks) | set(self.target.ranks):
            if self.f(i + s, j) * self.source.d1(i, j) != self.target.d1(i, j) * self.f(i, j):
                raise ValueError(f"does not commute with d1 at {(i, j)}")
            if self.f(i, j + s) * self.source.d2(i, j) != self.target.d2(i, j) * self.f(i, j):
                raise ValueError(f"does not commute with d2 at {(i, j)}")


def tot_map(f: DoubleMap) -> ChainMap:
    S, T = tot_double(f.source), tot_double(f.target)
    maps = {}
    for n in set(S.ranks) | set(T.ranks):
        src = antidiagonal(f.source, n)
        tgt = antidiagonal(f.target, n)
        tpos = {ij: k for k, ij in enumerate(tgt)}
        blocks = [[None] * len(src) for _ in tgt]
        for cs, ij in enumerate(src):
            if ij in tpos:
                blocks[tpos[ij]][cs] = f.f(*ij)
        maps[n] = ExactMatrix.from_blocks(f.source.ring, blocks,
                                          [f.target.rank(*ij) for ij in tgt],
                                          [f.source.rank(*ij) for ij in src])
    return ChainMap(S, T, maps)


def cone_double(f: DoubleMap) -> DoubleComplex:
    """Cone in the first (horizontal) direction: component (i, j) is
    C_{i,j} + B_{i-1,j} with d1 = ((d1C, f), (0, -d1B)) and d2 blockwise."""
    B, C = f.source, f.target
    if B.direction != CHAIN:
        raise ValueError("cone_double wants chain direction")
    ring = B.ring
    keys = sorted(set(C.ranks) | {(i + 1, j) for (i, j) in B.ranks})
    ranks = {(i, j): C.rank(i, j) + B.rank(i - 1, j) for (i, j) in keys}
    d1s, d2s = {}, {}
    for (i, j) in keys:
        d1s[(i, j)] = ExactMatrix.from_blocks(
            ring,
            [[C.d1(i, j), f.f(i - 1, j)], [None, B.d1(i - 1, j).scale(-1)]],
            [C.rank(i - 1, j), B.rank(i - 2, j)],
            [C.rank(i, j), B.rank(i - 1, j)])
        d2s[(i, j)] = ExactMatrix.from_blocks(
            ring,
            [[C.d2(i, j), None], [None, B.d2(i - 1, j)]],
            [C.rank(i, j - 1), B.rank(i - 1, j - 1)],
            [C.rank(i, j), B.rank(i - 1, j)])
    return DoubleComplex(ring, ranks, d1s, d2s)


def tot_cone_iso(f: DoubleMap) -> ChainMap:
    """Chain isomorphism tot(cone_double f) -> cone(tot f): identity on the
    C summands and (-1)^j on the B_{i-1,j} summands, plus block reorder."""
    CD = cone_double(f)
    TCD = tot_double(CD)
    cone_data = cone(tot_map(f))
    CT = cone_data.complex
    B, C = f.source, f.target
    ring = B.ring
    maps = {}
    for n in set(TCD.ranks) | set(CT.ranks):
        src = antidiagonal(CD, n)  # cone-double components (i, j)
        # target layout: C-components of Tot(C)_n then B-components of Tot(B)_{n-1}
        tgtC = antidiagonal(C, n)
        tgtB = antidiagonal(B, n - 1)
        tgt_sizes = [C.rank(*ij) for ij in tgtC] + [B.rank(*ij) for ij in tgtB]
        src_sizes = [CD.rank(*ij) for ij in src]
        blocks = [[None] * len(src) for _ in tgt_sizes]
        posC = {ij: k for k, ij in enumerate(tgtC)}
        posB = {ij: len(tgtC) + k for k, ij in enumerate(tgtB)}
        for cs, (i, j) in enumerate(src):
            rc, rb = C.rank(i, j), B.rank(i - 1, j)
            blkC = ExactMatrix.from_blocks(ring, [[ExactMatrix.identity(ring, rc), None]],
                                           [rc], [rc, rb])
            sgn = -1 if j % 2 else 1
            blkB = ExactMatrix.from_blocks(ring, [[None, ExactMatrix.identity(ring, rb).scale(sgn)]],
                                           [rb], [rc, rb])
            if (i, j) in posC and rc:
                blocks[posC[(i, j)]][cs] = blkC
            if (i - 1, j) in posB and rb:
                blocks[posB[(i - 1, j)]][cs] = blkB
        maps[n] = ExactMatrix.from_blocks(ring, blocks, tgt_sizes, src_sizes)
    return ChainMap(TCD, CT, maps)


def assemble_tot_homotopy(p: DoubleMap, q: DoubleMap,
                          h: Mapping[tuple[int, int], ExactMatrix]) -> Homotopy:
    """Assemble a rowwise homotopy (h_{i,j}: B_{i,j} -> C_{i+1,j}, commuting
    with d2, with d1 h + h d1 = p - q) into a homotopy of the total maps;
    the component at (i, j) enters with sign (-1)^j."""
    B, C = p.source, p.target
    ring = B.ring
    P, Q = tot_map(p), tot_map(q)
    s = _step(B.direction)
    maps = {}
    for n in tot_double(B).degrees():
        src = antidiagonal(B, n)
        tgt = antidiagonal(C, n - s)
        tpos = {ij: k for k, ij in enumerate(tgt)}
        blocks = [[None] * len(src) for _ in tgt]
        for cs, (i, j) in enumerate(src):
            key = (i - s, j)
            if key in tpos:
                m = h.get((i, j))
                if m is None:
                    m = ExactMatrix.zero(ring, C.rank(i - s, j), B.rank(i, j))
                blocks[tpos[key]][cs] = m.scale(-1 if j % 2 else 1)
        maps[n] = ExactMatrix.from_blocks(ring, blocks,
                                          [C.rank(*ij) for ij in tgt],
                                          [B.rank(*ij) for ij in src])
    return Homotopy(P, Q, maps)


# ---------------------------------------------------------------------------
# cone, path, quasi-isomorphisms


@dataclass
class ConeData:
    complex: BoundedComplex
    inclusion: ChainMap   # Y -> c(f)
    projection: ChainMap  # c(f) -> X[1]


def cone(f: ChainMap) -> ConeData:
    """c(f)_n = Y_n + X_{n-1}, d(y, x) = (dy + fx, -dx); chain direction."""
    X, Y = f.source, f.target
    if X.direction != CHAIN:
        raise ValueError("cone wants chain complexes; regrade cochain input first")
    ring = X.ring
    degrees = sorted(set(Y.ranks) | {q + 1 for q in X.ranks})
    ranks = {n: Y.rank(n) + X.rank(n - 1) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = [[Y.d(n), f.f(n - 1)],
                  [None, X.d(n - 1).scale(-1)]]
        diffs[n] = ExactMatrix.from_blocks(
            ring, blocks, [Y.rank(n - 1), X.rank(n - 2)], [Y.rank(n), X.rank(n - 1)])
    C = BoundedComplex(ring, CHAIN, ranks, diffs)
    incl = ChainMap(Y, C, {n: ExactMatrix.from_blocks(
        ring, [[ExactMatrix.identity(ring, Y.rank(n))], [None]],
        [Y.rank(n), X.rank(n - 1)], [Y.rank(n)]) for n in Y.degrees()})
    Xs = X.shift(1)
    proj = ChainMap(C, Xs, {n: ExactMatrix.from_blocks(
        ring, [[None, ExactMatrix.identity(ring, X.rank(n - 1))]],
        [X.rank(n - 1)], [Y.rank(n), X.rank(n - 1)]) for n in degrees})
    return ConeData(C, incl, proj)


@dataclass
class PathData:
    complex: BoundedComplex
    j_A: ChainMap  # path -> A
    j_C: ChainMap  # path -> C


def path_r(f: ChainMap, g: ChainMap) -> PathData:
    """path_r(f, g)^n = A^n + B^{n-1} + C^n for cochain maps f: A -> B,
    g: C -> B, with boundary rows (d_A, 0, 0), (f, -d_B, -g), (0, 0, d_C)."""
    if f.source.direction != COCHAIN:
        raise ValueError("path_r wants cochain complexes")
    if f.target != g.target:
        raise ValueError("path_r needs a common target")
    A, B, C = f.source, f.target, g.source
    ring = A.ring
    degrees = sorted(set(A.ranks) | set(C.ranks) | {q + 1 for q in B.ranks})
    ranks = {n: A.rank(n) + B.rank(n - 1) + C.rank(n) for n in degrees}
    diffs = {}
    for n in degrees:
        blocks = [
            [A.d(n), None, None],
            [f.f(n), B.d(n - 1).scale(-1), g.f(n).scale(-1)],
            [None, None, C.d(n)],
        ]
        diffs[n] = ExactMatrix.from_blocks(
            ring, blocks,
            [A.rank(n + 1), B.rank(n), C.rank(n + 1)],
            [A.rank(n), B.rank(n - 1), C.rank(n)])
    P = BoundedComplex(ring, COCHAIN, ranks, diffs)
    jA = ChainMap(P, A, {n: ExactMatrix.from_blocks(
        ring, [[ExactMatrix.identity(ring, A.rank(n)), None, None]],
        [A.rank(n)], [A.rank(n), B.rank(n - 1), C.rank(n)]) for n in degrees})
    jC = ChainMap(P, C, {n: ExactMatrix.from_blocks(
        ring, [[None, None, ExactMatrix.identity(ring, C.rank(n))]],
        [C.rank(n)], [A.rank(n), B.rank(n - 1), C.rank(n)]) for n in degrees})
    return PathData(P, jA, jC)


def is_quasi_iso(f: ChainMap, degrees=None) -> bool:
    """True iff the cone of f has trivial homology (on the given degrees, or
    on all of its support)."""
    g = f
    if f.source.direction == COCHAIN:
        g = ChainMap(f.source.regrade(), f.target.regrade(),
                     {-q: m for q, m in f.maps.items()}, check=False)
        if degrees is not None:
            degrees = [-q + 1 for q in degrees]
    C = cone(g).complex
    return C.is_acyclic(degrees)


def induced_homology_map(f: ChainMap, q: int) -> ExactMatrix:
    """Matrix of H_q(f) with respect to homology_reps bases (field only)."""
    X, Y = f.source, f.target
    s = _step(X.direction)
    rx = homology_reps(X.d(q - s), X.d(q))
    ry = homology_reps(Y.d(q - s), Y.d(q))
    By = Y.d(q - s)
    img = f.f(q) * rx
    sol = solve_matrix(ExactMatrix.hstack([ry, By]) if By.cols else ry, img)
    if sol is None:
        raise AssertionError("homology class landed outside the target basis")
    return sol.submatrix(range(ry.cols), range(img.cols))
