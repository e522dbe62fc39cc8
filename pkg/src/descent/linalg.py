"""Exact matrix arithmetic over Z and F_p.

Everything downstream (complexes, simplicial machinery, spectral sequences)
reduces to the routines in this module: Smith normal form with unimodular
transforms, kernels and images, exact solving, and homology of a two-step
complex.  Matrices are dense, immutable, and carry their ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


# ---------------------------------------------------------------------------
# rings


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Ring:
    """The integers (p == 0) or the prime field F_p (p > 1)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.p != 0

    def normalize(self, x: int) -> int:
        return x % self.p if self.p else x

    def inv(self, x: int) -> int:
        if not self.is_field:
            raise ValueError("inverse only over a field")
        return pow(x % self.p, self.p - 2, self.p)

    def __repr__(self):
        return "Z" if self.p == 0 else f"F{self.p}"


ZZ = Ring(0)


def GF(p: int) -> Ring:
    return Ring(p)


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Immutable dense matrix over Z or F_p with exact arithmetic."""

    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring: Ring, entries: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None):
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if rows else 0
        norm = ring.normalize
        ents = tuple(tuple(norm(x) for x in row) for row in entries)
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise ValueError("ragged entries")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(ring: Ring, rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(ring, [[0] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(ring: Ring, n: int) -> "ExactMatrix":
        return ExactMatrix(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @staticmethod
    def from_cols(ring: Ring, cols: Sequence[Sequence[int]], dim: int) -> "ExactMatrix":
        return ExactMatrix(ring, [[col[i] for col in cols] for i in range(dim)], dim, len(cols))

    @staticmethod
    def hstack(mats: Sequence["ExactMatrix"]) -> "ExactMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("hstack of nothing")
        rows = mats[0].rows
        ring = mats[0].ring
        if any(m.rows != rows or m.ring != ring for m in mats):
            raise ValueError("hstack shape/ring mismatch")
        return ExactMatrix(ring, [sum((list(m.entries[i]) for m in mats), []) for i in range(rows)])

    @staticmethod
    def vstack(mats: Sequence["ExactMatrix"]) -> "ExactMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        ring = mats[0].ring
        if any(m.cols != cols or m.ring != ring for m in mats):
            raise ValueError("vstack shape/ring mismatch")
        rows = []
        for m in mats:
            rows.extend(list(r) for r in m.entries)
        return ExactMatrix(ring, rows, sum(m.rows for m in mats), cols)

    @staticmethod
    def block_diag(ring: Ring, mats: Sequence["ExactMatrix"]) -> "ExactMatrix":
        mats = list(mats)
        R = sum(m.rows for m in mats)
        C = sum(m.cols for m in mats)
        out = [[0] * C for _ in range(R)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                row = out[r0 + i]
                me = m.entries[i]
                for j in range(m.cols):
                    row[c0 + j] = me[j]
            r0 += m.rows
            c0 += m.cols
        return ExactMatrix(ring, out, R, C)

    @staticmethod
    def from_blocks(ring: Ring, blocks: Sequence[Sequence["ExactMatrix | None"]],
                    row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "ExactMatrix":
        """Assemble from a block grid; None means a zero block."""
        R, C = sum(row_sizes), sum(col_sizes)
        out = [[0] * C for _ in range(R)]
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                blk = blocks[bi][bj]
                if blk is not None:
                    if blk.rows != rs or blk.cols != cs:
                        raise ValueError(f"block ({bi},{bj}) has shape {blk.rows}x{blk.cols}, want {rs}x{cs}")
                    for i in range(rs):
                        row = out[r0 + i]
                        be = blk.entries[i]
                        for j in range(cs):
                            row[c0 + j] = be[j]
                c0 += cs
            r0 += rs
        return ExactMatrix(ring, out, R, C)

    # -- basic ops ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.ring == other.ring
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"<{self.ring} {self.rows}x{self.cols} [{body}]>"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(self.ring, [[a + b for a, b in zip(ra, rb)]
                                       for ra, rb in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix(self.ring, [[a - b for a, b in zip(ra, rb)]
                                       for ra, rb in zip(self.entries, other.entries)],
                           self.rows, self.cols)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, [[-a for a in row] for row in self.entries], self.rows, self.cols)

    def scale(self, c: int) -> "ExactMatrix":
        return ExactMatrix(self.ring, [[c * a for a in row] for row in self.entries], self.rows, self.cols)

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        p = self.ring.p
        if other.rows:
            ot = list(zip(*other.entries))
        else:
            ot = [()] * other.cols
        out = []
        for row in self.entries:
            if p:
                out.append([sum(a * b for a, b in zip(row, col)) % p for col in ot])
            else:
                out.append([sum(a * b for a, b in zip(row, col)) for col in ot])
        return ExactMatrix(self.ring, out, self.rows, other.cols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.ring, [list(r) for r in zip(*self.entries)] if self.rows and self.cols
                           else [[] for _ in range(self.cols)] if self.cols else [],
                           self.cols, self.rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "ExactMatrix":
        ri, ci = list(row_idx), list(col_idx)
        return ExactMatrix(self.ring, [[self.entries[i][j] for j in ci] for i in ri], len(ri), len(ci))

    def _same_shape(self, other: "ExactMatrix"):
        if self.ring != other.ring or self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape/ring mismatch")


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Kronecker product (lexicographic basis order: (a_i, b_j) sorted by i, j)."""
    if A.ring != B.ring:
        raise ValueError("ring mismatch")
    rows = []
    for i in range(A.rows):
        for k in range(B.rows):
            row = []
            for j in range(A.cols):
                a = A.entries[i][j]
                row.extend(a * b for b in B.entries[k])
            rows.append(row)
    return ExactMatrix(A.ring, rows, A.rows * B.rows, A.cols * B.cols)


def permutation_matrix(ring: Ring, perm: Sequence[int]) -> ExactMatrix:
    """Matrix P with P e_j = e_{perm[j]}."""
    n = len(perm)
    ents = [[0] * n for _ in range(n)]
    for j, i in enumerate(perm):
        ents[i][j] = 1
    return ExactMatrix(ring, ents, n, n)


# ---------------------------------------------------------------------------
# determinant (Bareiss, fraction free; works over Z; field via same code mod p)


def det(M: ExactMatrix) -> int:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = [list(r) for r in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return M.ring.normalize(sign * a[n - 1][n - 1])


# ---------------------------------------------------------------------------
# Smith normal form over Z


def _snf_with_transforms(M: ExactMatrix):
    """Return (U, Uinv, D, V, Vinv) with U*M*V = D diagonal, divisibility chain,
    nonnegative diagonal, U and V unimodular."""
    if M.ring.is_field:
        raise ValueError("Smith normal form is for matrices over Z; use row reduction over a field")
    n, m = M.rows, M.cols
    a = [list(r) for r in M.entries]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Ui = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    V = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Vi = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_add(i, k, c):  # row_i += c*row_k ; Uinv col ops inverse
        a[i] = [x + c * y for x, y in zip(a[i], a[k])]
        U[i] = [x + c * y for x, y in zip(U[i], U[k])]
        for r in range(n):
            Ui[r][k] -= c * Ui[r][i]

    def col_add(j, k, c):  # col_j += c*col_k
        for r in range(n):
            a[r][j] += c * a[r][k]
        for r in range(m):
            V[r][j] += c * V[r][k]
        Vi[k] = [x - c * y for x, y in zip(Vi[k], Vi[j])]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        U[i], U[k] = U[k], U[i]
        for r in range(n):
            Ui[r][i], Ui[r][k] = Ui[r][k], Ui[r][i]

    def col_swap(j, k):
        for r in range(n):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        for r in range(m):
            V[r][j], V[r][k] = V[r][k], V[r][j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]
        for r in range(n):
            Ui[r][i] = -Ui[r][i]

    t = 0
    while t < min(n, m):
        # pivot: entry of minimal absolute value in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = a[i][j]
                if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t]:
                        row_swap(t, i)  # remainder is smaller: restart with it
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        # pivot must divide the rest of the block; if not, fold the offender in
        piv = a[t][t]
        offender = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue  # redo this pivot
        if piv < 0:
            row_neg(t)
        t += 1

    D = ExactMatrix(ZZ, a, n, m)
    return (ExactMatrix(ZZ, U), ExactMatrix(ZZ, Ui), D, ExactMatrix(ZZ, V), ExactMatrix(ZZ, Vi))


def smith_normal_form(M: ExactMatrix):
    """(U, D, V) with U*M*V = D = diag(d_1 | d_2 | ...), d_i >= 0, U,V unimodular."""
    U, _, D, V, _ = _snf_with_transforms(M)
    return U, D, V


def snf_diagonal(M: ExactMatrix) -> list[int]:
    _, D, _ = smith_normal_form(M)
    return [D.entries[i][i] for i in range(min(D.rows, D.cols)) if D.entries[i][i] != 0]


# ---------------------------------------------------------------------------
# row reduction over a field


def rref(M: ExactMatrix):
    """Reduced row echelon form over F_p: returns (R, pivot column list)."""
    if not M.ring.is_field:
        raise ValueError("rref needs a field")
    p = M.ring.p
    a = [list(r) for r in M.entries]
    n, m = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if a[i][c] % p), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return ExactMatrix(M.ring, a, n, m), pivots


def rank(M: ExactMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.ring.is_field:
        return len(rref(M)[1])
    return len(snf_diagonal(M))


def kernel_basis(M: ExactMatrix) -> ExactMatrix:
    """Columns span {x : Mx = 0}; over Z this is a basis of the full kernel
    lattice (saturated, since it comes from unimodular column transforms)."""
    if M.cols == 0:
        return ExactMatrix.zero(M.ring, 0, 0)
    if M.rows == 0:
        return ExactMatrix.identity(M.ring, M.cols)
    if M.ring.is_field:
        p = M.ring.p
        R, pivots = rref(M)
        free = [j for j in range(M.cols) if j not in pivots]
        cols = []
        for j in free:
            v = [0] * M.cols
            v[j] = 1
            for r, c in enumerate(pivots):
                v[c] = (-R.entries[r][j]) % p
            cols.append(v)
        return ExactMatrix.from_cols(M.ring, cols, M.cols)
    _, _, D, V, _ = _snf_with_transforms(M)
    r = len([i for i in range(min(D.rows, D.cols)) if D.entries[i][i] != 0])
    idx = list(range(r, M.cols))
    return V.submatrix(range(M.cols), idx)


def image_basis(M: ExactMatrix) -> ExactMatrix:
    """Columns span the image (column space / column lattice) of M."""
    if M.rows == 0:
        return ExactMatrix.zero(M.ring, 0, 0)
    if M.cols == 0:
        return ExactMatrix.zero(M.ring, M.rows, 0)
    if M.ring.is_field:
        _, pivots = rref(M)
        return M.submatrix(range(M.rows), pivots)
    _, Ui, D, _, _ = _snf_with_transforms(M)
    cols = []
    for i in range(min(D.rows, D.cols)):
        d = D.entries[i][i]
        if d:
            cols.append([d * Ui.entries[r][i] for r in range(M.rows)])
    return ExactMatrix.from_cols(ZZ, cols, M.rows)


def solve(M: ExactMatrix, b: ExactMatrix):
    """One solution x of Mx = b (b a column matrix), or None."""
    return solve_matrix(M, b)


def solve_matrix(M: ExactMatrix, B: ExactMatrix):
    """X with M X = B, or None if some column is unsolvable."""
    if M.rows != B.rows or M.ring != B.ring:
        raise ValueError("shape/ring mismatch in solve")
    if M.ring.is_field:
        p = M.ring.p
        aug = ExactMatrix.hstack([M, B])
        R, pivots = rref(aug)
        piv_in_M = [c for c in pivots if c < M.cols]
        if len(piv_in_M) != len(pivots):
            return None  # a pivot landed in the B block: inconsistent
        X = [[0] * B.cols for _ in range(M.cols)]
        for r, c in enumerate(piv_in_M):
            for j in range(B.cols):
                X[c][j] = R.entries[r][M.cols + j] % p
        return ExactMatrix(M.ring, X, M.cols, B.cols)
    U, _, D, V, _ = _snf_with_transforms(M)
    UB = U * B
    r = min(D.rows, D.cols)
    Y = [[0] * B.cols for _ in range(M.cols)]
    for j in range(B.cols):
        for i in range(M.rows):
            v = UB.entries[i][j]
            d = D.entries[i][i] if i < r else 0
            if d == 0:
                if v != 0:
                    return None
            else:
                if v % d:
                    return None
                Y[i][j] = v // d
    return V * ExactMatrix(ZZ, Y, M.cols, B.cols)


def in_span(S: ExactMatrix, v: ExactMatrix) -> bool:
    """Is the column v in the column span (lattice) of S?"""
    return solve_matrix(S, v) is not None


# ---------------------------------------------------------------------------
# homology of a two-step complex


@dataclass(frozen=True)
class HomologyGroup:
    """Finitely generated abelian group: free rank plus invariant factors
    d_1 | d_2 | ... (each > 1, empty over a field)."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology_at(d_in: ExactMatrix, d_out: ExactMatrix) -> HomologyGroup:
    """ker(d_out)/im(d_in) where d_out * d_in = 0 (checked)."""
    if d_in.ring != d_out.ring:
        raise ValueError("ring mismatch")
    if d_out.cols != d_in.rows:
        raise ValueError("shapes do not compose")
    if not (d_out * d_in).is_zero():
        raise ValueError("d_out * d_in is nonzero: not a complex")
    K = kernel_basis(d_out)
    k = K.cols
    if d_in.cols == 0 or d_in.is_zero():
        return HomologyGroup(k)
    Y = solve_matrix(K, d_in)
    if Y is None:
        raise AssertionError("image does not lie in the kernel despite d_out*d_in = 0")
    if d_in.ring.is_field:
        return HomologyGroup(k - rank(Y))
    diag = snf_diagonal(Y)
    return HomologyGroup(k - len(diag), tuple(d for d in diag if d > 1))


def homology_reps(d_in: ExactMatrix, d_out: ExactMatrix) -> ExactMatrix:
    """Over a field: columns representing a basis of ker(d_out)/im(d_in)."""
    ring = d_in.ring
    if not ring.is_field:
        raise ValueError("homology representatives require a field")
    K = kernel_basis(d_out)
    B = image_basis(d_in)
    # grow B's span to all of ker by picking kernel basis columns
    chosen: list[ExactMatrix] = []
    span = B
    for j in range(K.cols):
        v = K.submatrix(range(K.rows), [j])
        if not in_span(span, v):
            chosen.append(v)
            span = ExactMatrix.hstack([span, v])
    if not chosen:
        return ExactMatrix.zero(ring, d_out.cols, 0)
    return ExactMatrix.hstack(chosen)


# ---------------------------------------------------------------------------
# subspace toolkit over a field (spanning-matrix representation)


def span_reduce(S: ExactMatrix) -> ExactMatrix:
    """Canonical basis of the column span (columns of the rref of S^T, transposed)."""
    if not S.ring.is_field:
        raise ValueError("span_reduce needs a field")
    if S.cols == 0:
        return ExactMatrix.zero(S.ring, S.rows, 0)
    R, pivots = rref(S.transpose())
    rows = [R.entries[i] for i in range(len(pivots))]
    return ExactMatrix(S.ring, rows, len(pivots), S.rows).transpose()


def subspace_le(A: ExactMatrix, B: ExactMatrix) -> bool:
    """Column span of A contained in column span of B."""
    return solve_matrix(B, A) is not None


def subspace_eq(A: ExactMatrix, B: ExactMatrix) -> bool:
    return subspace_le(A, B) and subspace_le(B, A)


def subspace_sum(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    return span_reduce(ExactMatrix.hstack([A, B]))


def subspace_intersect(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Basis of col(A) & col(B) via the kernel of [A | -B]."""
    if A.cols == 0 or B.cols == 0:
        return ExactMatrix.zero(A.ring, A.rows, 0)
    K = kernel_basis(ExactMatrix.hstack([A, -B]))
    coeffs = K.submatrix(range(A.cols), range(K.cols))
    return span_reduce(A * coeffs)

def preimage(f: ExactMatrix, W: ExactMatrix) -> ExactMatrix:
    """Basis of {x : f x in col(W)}."""
    if f.rows != W.rows:
        raise ValueError("shape mismatch in preimage")
    K = kernel_basis(ExactMatrix.hstack([f, -W])) if W.cols else kernel_basis(f)
    return span_reduce(K.submatrix(range(f.cols), range(K.cols)))


def full_space(ring: Ring, n: int) -> ExactMatrix:
    return ExactMatrix.identity(ring, n)
