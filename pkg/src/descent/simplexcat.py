"""Combinatorics of the simplex category: monotone maps between the ordinals
[n] = {0..n} (with [-1] the empty ordinal admitted for augmentation
bookkeeping), epi-mono factorization into face/degeneracy words, order
reversal, ordered sums, and the [n] -> [1] index bookkeeping that drives the
total object and cylinder case formulas.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonotoneMap:
    """Weakly monotone map [source] -> [target]; values[i] = f(i).

    source may be -1 (empty ordinal), in which case values is empty.
    """

    source: int
    target: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.source < -1 or self.target < -1:
            raise ValueError("ordinals start at [-1]")
        if len(self.values) != self.source + 1:
            raise ValueError("value list length mismatch")
        if self.source >= 0 and self.target < 0:
            raise ValueError("no maps from a nonempty ordinal to [-1]")
        for v in self.values:
            if not 0 <= v <= self.target:
                raise ValueError("value out of range")
        for a, b in zip(self.values, self.values[1:]):
            if a > b:
                raise ValueError("not monotone")

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(v == i for i, v in enumerate(self.values))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.target + 1)) if self.target >= 0 else True


def identity(n: int) -> MonotoneMap:
    return MonotoneMap(n, n, tuple(range(n + 1)))


def face(n: int, i: int) -> MonotoneMap:
    """The face map [n-1] -> [n] missing i."""
    if not 0 <= i <= n:
        raise ValueError("face index out of range")
    return MonotoneMap(n - 1, n, tuple(l if l < i else l + 1 for l in range(n)))


def degeneracy(n: int, j: int) -> MonotoneMap:
    """The degeneracy map [n+1] -> [n] hitting j twice."""
    if not 0 <= j <= n:
        raise ValueError("degeneracy index out of range")
    return MonotoneMap(n + 1, n, tuple(l if l <= j else l - 1 for l in range(n + 2)))


def compose(f: MonotoneMap, g: MonotoneMap) -> MonotoneMap:
    """f after g."""
    if g.target != f.source:
        raise ValueError(f"cannot compose [{g.source}]->[{g.target}] with [{f.source}]->[{f.target}]")
    return MonotoneMap(g.source, f.target, tuple(f.values[v] for v in g.values))


def all_monotone_maps(n: int, m: int):
    """All monotone maps [n] -> [m] in lexicographic order."""
    if n == -1:
        yield MonotoneMap(-1, m, ())
        return
    if m == -1:
        return

    def rec(prefix, lo):
        if len(prefix) == n + 1:
            yield MonotoneMap(n, m, tuple(prefix))
            return
        for v in range(lo, m + 1):
            yield from rec(prefix + [v], v)

    yield from rec([], 0)


def surjections(n: int, m: int):
    """All surjective monotone maps [n] ->> [m]."""
    return [f for f in all_monotone_maps(n, m) if f.is_surjective()]


# ---------------------------------------------------------------------------
# epi-mono factorization


@dataclass(frozen=True)
class FaceDegWord:
    """f = face_{i_1} ... face_{i_s} degen_{j_1} ... degen_{j_l} with
    i_1 > ... > i_s and j_1 < ... < j_l; this factorization is unique."""

    source: int
    target: int
    faces: tuple[int, ...]
    degeneracies: tuple[int, ...]

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.faces, self.faces[1:])):
            raise ValueError("face indices must strictly decrease")
        if any(a >= b for a, b in zip(self.degeneracies, self.degeneracies[1:])):
            raise ValueError("degeneracy indices must strictly increase")
        if self.source - len(self.degeneracies) + len(self.faces) != self.target:
            raise ValueError("word does not reach the target level")


def epi_mono_factorize(f: MonotoneMap) -> FaceDegWord:
    image = set(f.values)
    faces = tuple(sorted((i for i in range(f.target + 1) if i not in image), reverse=True))
    degs = tuple(j for j in range(f.source) if f.values[j] == f.values[j + 1])
    return FaceDegWord(f.source, f.target, faces, degs)


def recompose(word: FaceDegWord) -> MonotoneMap:
    """Evaluate the face/degeneracy word back to a monotone map (degeneracies
    act first, innermost last in the written word)."""
    f = identity(word.source)
    for j in reversed(word.degeneracies):
        f = compose(degeneracy(f.target - 1, j), f)
    for i in reversed(word.faces):
        f = compose(face(f.target + 1, i), f)
    return f


def op_map(f: MonotoneMap) -> MonotoneMap:
    """Order reversal: op(f)(i) = m - f(n - i); an involution."""
    n, m = f.source, f.target
    if n == -1:
        return f
    return MonotoneMap(n, m, tuple(m - f.values[n - i] for i in range(n + 1)))


def ordered_sum(n: int, m: int) -> tuple[int, MonotoneMap, MonotoneMap]:
    """[n] + [m] = [n+m+1] with the two canonical block inclusions."""
    total = n + m + 1
    inc1 = MonotoneMap(n, total, tuple(range(n + 1)))
    inc2 = MonotoneMap(m, total, tuple(range(n + 1, total + 1)))
    return total, inc1, inc2


# ---------------------------------------------------------------------------
# the [n] -> [1] bookkeeping behind Tot


@dataclass(frozen=True)
class TotIndex:
    """A map sigma: [n] -> [1] recorded by its cut i_sigma, with
    sigma^{-1}(1) = {i_sigma, ..., n} (i_sigma = n+1 when the preimage of 1
    is empty).  The correspondence sigma <-> i_sigma is a bijection."""

    n: int
    cut: int

    def __post_init__(self):
        if not 0 <= self.cut <= self.n + 1:
            raise ValueError("cut out of range")

    @property
    def sigma(self) -> MonotoneMap:
        return MonotoneMap(self.n, 1, tuple(0 if i < self.cut else 1 for i in range(self.n + 1)))

    @staticmethod
    def from_map(sigma: MonotoneMap) -> "TotIndex":
        if sigma.target != 1:
            raise ValueError("need a map to [1]")
        ones = [i for i, v in enumerate(sigma.values) if v == 1]
        cut = ones[0] if ones else sigma.source + 1
        return TotIndex(sigma.source, cut)

    @property
    def is_u0(self) -> bool:
        """sigma constantly 0."""
        return self.cut == self.n + 1

    @property
    def is_u1(self) -> bool:
        """sigma constantly 1."""
        return self.cut == 0

    @property
    def in_lambda(self) -> bool:
        """Membership in Lambda_n = maps other than the two constants."""
        return not (self.is_u0 or self.is_u1)

    @property
    def component(self) -> tuple[int, int]:
        """The antidiagonal component (i_sigma - 1, n - i_sigma)."""
        return (self.cut - 1, self.n - self.cut)


def tot_indices(n: int) -> list[TotIndex]:
    """All maps [n] -> [1], ordered by ascending first component index."""
    return [TotIndex(n, cut) for cut in range(n + 2)]


def tot_restrictions(theta: MonotoneMap, sigma: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Restrictions of theta: [m] -> [n] to the preimage blocks of
    sigma-theta, relabelled as maps [i_{sigma theta}-1] -> [i_sigma-1] and
    [m - i_{sigma theta}] -> [n - i_sigma]."""
    if theta.target != sigma.source:
        raise ValueError("shapes do not compose")
    s = TotIndex.from_map(sigma)
    st = TotIndex.from_map(compose(sigma, theta))
    m = theta.source
    left_vals = tuple(theta.values[i] for i in range(st.cut))
    right_vals = tuple(theta.values[i] - s.cut for i in range(st.cut, m + 1))
    theta0 = MonotoneMap(st.cut - 1, s.cut - 1, left_vals)
    theta1 = MonotoneMap(m - st.cut, s.n - s.cut, right_vals)
    return theta0, theta1
