"""Exact integer matrix algebra.

Matrices are plain lists of rows of Python ints, so nothing ever overflows.
Row lattices are kept in a row-style Hermite normal form: upper triangular
(echelon), positive pivots, and entries above each pivot reduced into
``[0, pivot)``.  That form is unique for a given lattice, which is what lets
callers compare lattices with ``==``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotFullRank

IntMatrix = Sequence[Sequence[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class HnfBasis:
    """Canonical HNF basis of a row lattice in ``Z^ncols``.

    ``rows`` never contains a zero row; ``pivots[i]`` is the column of the
    leading entry of ``rows[i]`` and the pivots increase strictly.
    """

    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    ncols: int

    @classmethod
    def empty(cls, ncols: int) -> "HnfBasis":
        return cls((), (), ncols)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_full_rank(self) -> bool:
        return len(self.rows) == self.ncols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def contains(self, v: Sequence[int]) -> bool:
        """Membership by back-substitution against the echelon rows."""
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{self.ncols}")
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            # entries left of this pivot have already been cleared
            if any(w[:c]):
                return False
            q, rem = divmod(w[c], row[c])
            if rem:
                return False
            if q:
                for j in range(c, self.ncols):
                    w[j] -= q * row[j]
        return not any(w)


class HnfAccumulator:
    """Mutable HNF builder used for incremental lattice accumulation.

    ``add`` reports whether the lattice changed and whether the rank went
    up, which is what the degree engine needs to pick witnesses.
    """

    __slots__ = ("ncols", "rows", "pivots", "_det")

    def __init__(self, ncols: int, basis: HnfBasis | None = None):
        self.ncols = ncols
        if basis is None:
            self.rows: list[list[int]] = []
            self.pivots: list[int] = []
        else:
            if basis.ncols != ncols:
                raise DimensionMismatch("basis lives in a different ambient space")
            self.rows = [list(r) for r in basis.rows]
            self.pivots = list(basis.pivots)
        self._det: int | None = None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def det(self) -> int:
        """Index in ``Z^ncols``; only defined at full rank."""
        if len(self.rows) != self.ncols:
            raise NotFullRank(f"rank {len(self.rows)} < {self.ncols}")
        if self._det is None:
            self._det = prod(r[c] for r, c in zip(self.rows, self.pivots))
        return self._det

    def add(self, v: Sequence[int]) -> tuple[bool, bool]:
        """Insert ``v``; return ``(lattice_changed, rank_increased)``."""
        n = self.ncols
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in Z^{n}")
        rows, pivots = self.rows, self.pivots
        w = list(v)
        changed = False
        k = 0  # index of the first row whose pivot is >= current column
        for c in range(n):
            while k < len(pivots) and pivots[k] < c:
                k += 1
            b = w[c]
            if not b:
                continue
            if k < len(pivots) and pivots[k] == c:
                row = rows[k]
                a = row[c]
                q, rem = divmod(b, a)
                if not rem:
                    for j in range(c, n):
                        w[j] -= q * row[j]
                    continue
                g, x, y = xgcd(a, b)
                ag, bg = a // g, b // g
                rows[k] = [0] * c + [x * row[j] + y * w[j] for j in range(c, n)]
                w = [0] * c + [ag * w[j] - bg * row[j] for j in range(c, n)]
                changed = True
                continue
            if b < 0:
                w = [-t for t in w]
            rows.insert(k, w)
            pivots.insert(k, c)
            self._reduce()
            self._det = None
            return True, True
        if changed:
            self._reduce()
            self._det = None
        return changed, False

    def _reduce(self) -> None:
        rows, pivots, n = self.rows, self.pivots, self.ncols
        r = len(rows)
        for i in range(r - 1, -1, -1):
            row = rows[i]
            for k in range(i + 1, r):
                c = pivots[k]
                q = row[c] // rows[k][c]
                if q:
                    other = rows[k]
                    for j in range(c, n):
                        row[j] -= q * other[j]

    def freeze(self) -> HnfBasis:
        return HnfBasis(tuple(tuple(r) for r in self.rows), tuple(self.pivots), self.ncols)


def _ncols(M: IntMatrix, ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not M:
        raise DimensionMismatch("cannot infer the column count of an empty matrix")
    return len(M[0])


def hnf(M: IntMatrix, ncols: int | None = None) -> HnfBasis:
    """Canonical HNF of the row lattice spanned by ``M``."""
    n = _ncols(M, ncols)
    acc = HnfAccumulator(n)
    for row in M:
        acc.add(row)
    return acc.freeze()


def hnf_insert(B: HnfBasis, v: Sequence[int]) -> HnfBasis:
    """HNF of ``lattice(B) + Z*v``."""
    acc = HnfAccumulator(B.ncols, B)
    changed, _ = acc.add(v)
    return acc.freeze() if changed else B


def det_index(B: HnfBasis) -> int:
    """Index of the full-rank lattice ``B`` in ``Z^m``."""
    if not B.is_full_rank:
        raise NotFullRank(f"rank {B.rank} < {B.ncols}")
    return prod(r[c] for r, c in zip(B.rows, B.pivots))


def invariant_factors(M: IntMatrix) -> list[int]:
    """Nonzero Smith normal form diagonal ``d_1 | d_2 | ...`` of ``M``."""
    A = [list(r) for r in M]
    if not A or not A[0]:
        return []
    nr, nc = len(A), len(A[0])
    out: list[int] = []
    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    q = A[i][t] // p
                    for j in range(t, nc):
                        A[i][j] -= q * A[t][j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, nc):
                if A[t][j]:
                    q = A[t][j] // p
                    for i in range(t, nr):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # every trailing entry must be divisible by the pivot
                bad = next(
                    (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                for j in range(t, nc):
                    A[t][j] += A[bad][j]
                continue
            # a smaller remainder appeared; move it into the pivot slot
            best = None
            for i in range(t, nr):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, None)
            for j in range(t, nc):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), None, j)
            _, i, j = best
            if i is not None:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        out.append(abs(A[t][t]))
        t += 1
    return out


def kernel_of_congruences(coeffs: IntMatrix, moduli: Sequence[int], ncols: int | None = None) -> HnfBasis:
    """Full-rank HNF basis of ``{a : coeffs[i] . a == 0 (mod moduli[i]) for all i}``.

    Each congruence is imposed in turn on the current basis: a unimodular
    change of basis concentrates the row's values into a single generator,
    which then gets scaled by the order of its value modulo the modulus.
    """
    m = _ncols(coeffs, ncols)
    if m < 1:
        raise DimensionMismatch("ambient rank must be at least 1")
    if len(coeffs) != len(moduli):
        raise DimensionMismatch("one modulus per congruence row")
    basis = [[int(i == j) for j in range(m)] for i in range(m)]
    for row, n in zip(coeffs, moduli):
        if len(row) != m:
            raise DimensionMismatch("ragged coefficient matrix")
        vals = [sum(c * x for c, x in zip(row, b)) % n for b in basis]
        # gcd-combine the values into basis[0]; the others become 0 mod n
        for k in range(1, m):
            a, b = vals[0], vals[k]
            if not b:
                continue
            if not a:
                basis[0], basis[k] = basis[k], basis[0]
                vals[0], vals[k] = b, 0
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            b0, bk = basis[0], basis[k]
            basis[0] = [x * s + y * t for s, t in zip(b0, bk)]
            basis[k] = [ag * t - bg * s for s, t in zip(b0, bk)]
            vals[0], vals[k] = g % n, 0
        scale = n // gcd(vals[0], n)
        basis[0] = [scale * s for s in basis[0]]
    return hnf(basis, m)


def solve_in_basis(B: HnfBasis, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the rows of ``B``, or ``None``."""
    w = list(v)
    coords = []
    for row, c in zip(B.rows, B.pivots):
        if any(w[:c]):
            return None
        q, rem = divmod(w[c], row[c])
        if rem:
            return None
        coords.append(q)
        for j in range(c, B.ncols):
            w[j] -= q * row[j]
    return coords if not any(w) else None


def stack(*blocks: Iterable[Sequence[int]]) -> list[list[int]]:
    return [list(r) for b in blocks for r in b]
