"""Generation degree and full-rank degree of a representation lattice.

Points of ``L`` of degree exactly ``d`` are fed, in lexicographic order and
degree by degree, into an incremental HNF.  The first degree at which the
accumulated lattice has full rank is ``gamma``; the first at which it equals
``L`` (same index in ``Z^m``) is ``beta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadInput, Diverged
from .groups import CharacterSet
from .intlinalg import HnfAccumulator
from .lattice import ReprLattice, build_lattice


@dataclass(frozen=True)
class DegreeTraceRow:
    degree: int
    new_points: int
    rank: int
    index_in_L: int | None  # [L : accumulated]; None until full rank

    def to_dict(self) -> dict:
        return {"degree": self.degree, "new_points": self.new_points, "rank": self.rank, "index_in_L": self.index_in_L}


@dataclass
class DegreeResult:
    gamma: int | None
    beta: int | None
    witnesses_gamma: list[tuple[int, ...]]
    witnesses_beta: list[tuple[int, ...]]
    trace: list[DegreeTraceRow]
    index: int
    faithful: bool
    max_degree: int = field(default=0)

    @property
    def complete(self) -> bool:
        return self.beta is not None

    @property
    def status(self) -> str:
        return "ok" if self.complete else "bound not reached"


class _CyclicWalker:
    """Enumerates ``a >= 0, sum(a) = d, sum(A_j a_j) = 0 (mod n)``.

    ``reach[j][b]`` is a bitmask of the residues that coordinates ``j..m-1``
    can hit with total exactly ``b``; the DFS only descends into branches
    that can still be completed, so every leaf is a solution.
    """

    def __init__(self, A: Sequence[int], n: int):
        self.A = [a % n for a in A]
        self.n = n
        self.full = (1 << n) - 1
        self.reach: list[list[int]] = [[] for _ in self.A]

    def _rot(self, mask: int, s: int) -> int:
        if not s:
            return mask
        return ((mask << s) | (mask >> (self.n - s))) & self.full

    def _extend(self, d: int) -> None:
        m, n, A, reach = len(self.A), self.n, self.A, self.reach
        while len(reach[-1]) <= d:
            b = len(reach[-1])
            reach[-1].append(1 << (A[-1] * b % n))
            for j in range(m - 2, -1, -1):
                nxt = reach[j + 1]
                mask = 0
                for a in range(b + 1):
                    mask |= self._rot(nxt[b - a], A[j] * a % n)
                reach[j].append(mask)

    def points(self, d: int) -> list[tuple[int, ...]]:
        self._extend(d)
        A, n, reach = self.A, self.n, self.reach
        m = len(A)
        if not reach[0][d] & 1:
            return []
        out: list[tuple[int, ...]] = []
        cur = [0] * m

        def rec(j: int, budget: int, need: int) -> None:
            if j == m - 1:
                cur[j] = budget
                out.append(tuple(cur))
                return
            Aj, nxt = A[j], reach[j + 1]
            for a in range(budget + 1):
                r = (need - Aj * a) % n
                if nxt[budget - a] >> r & 1:
                    cur[j] = a
                    rec(j + 1, budget - a, r)

        rec(0, d, 0)
        return out


class _ProductWalker:
    """Same search for a product of cyclic groups; residues are tuples."""

    def __init__(self, coeffs: Sequence[Sequence[int]], moduli: Sequence[int]):
        self.moduli = tuple(moduli)
        # per coordinate j, the character chi_j as a residue tuple
        self.chars = [tuple(row[j] % n for row, n in zip(coeffs, moduli)) for j in range(len(coeffs[0]))]
        self.zero = (0,) * len(moduli)
        self.reach: list[list[frozenset]] = [[] for _ in self.chars]

    def _mul(self, chi, a):
        return tuple(c * a % n for c, n in zip(chi, self.moduli))

    def _add(self, x, y):
        return tuple((s + t) % n for s, t, n in zip(x, y, self.moduli))

    def _sub(self, x, y):
        return tuple((s - t) % n for s, t, n in zip(x, y, self.moduli))

    def _extend(self, d: int) -> None:
        chars, reach = self.chars, self.reach
        m = len(chars)
        while len(reach[-1]) <= d:
            b = len(reach[-1])
            reach[-1].append(frozenset([self._mul(chars[-1], b)]))
            for j in range(m - 2, -1, -1):
                s = set()
                for a in range(b + 1):
                    shift = self._mul(chars[j], a)
                    s.update(self._add(shift, x) for x in reach[j + 1][b - a])
                reach[j].append(frozenset(s))

    def points(self, d: int) -> list[tuple[int, ...]]:
        self._extend(d)
        chars, reach = self.chars, self.reach
        m = len(chars)
        if self.zero not in reach[0][d]:
            return []
        out: list[tuple[int, ...]] = []
        cur = [0] * m

        def rec(j, budget, need):
            if j == m - 1:
                cur[j] = budget
                out.append(tuple(cur))
                return
            for a in range(budget + 1):
                r = self._sub(need, self._mul(chars[j], a))
                if r in reach[j + 1][budget - a]:
                    cur[j] = a
                    rec(j + 1, budget - a, r)

        rec(0, d, self.zero)
        return out


def _walker(L: ReprLattice):
    if len(L.moduli) == 1:
        return _CyclicWalker(L.coeffs[0], L.moduli[0])
    return _ProductWalker(L.coeffs, L.moduli)


def points_of_degree(L: ReprLattice, d: int) -> list[tuple[int, ...]]:
    """Nonnegative lattice points of total degree exactly ``d``, lex order."""
    if d < 0:
        raise BadInput(f"degree must be >= 0, got {d}")
    return _walker(L).points(d)


def _run(L: ReprLattice, d_stop: int, stop_at_beta: bool, cap: int | None = None):
    m = L.m
    walker = _walker(L)
    acc = HnfAccumulator(m)
    generated = False
    gamma = beta = None
    wit_gamma: list[tuple[int, ...]] = []
    wit_beta: list[tuple[int, ...]] = []
    trace: list[DegreeTraceRow] = []
    for d in range(1, d_stop + 1):
        pts = walker.points(d)
        if d == 1 and L.support is not None:
            assert not pts, "nontrivial characters admit no degree-1 invariants"
        if not generated:
            for p in pts:
                changed, rank_up = acc.add(p)
                if changed:
                    wit_beta.append(p)
                    if rank_up:
                        wit_gamma.append(p)
                    if acc.rank == m and acc.det() == L.index:
                        generated = True
                        break
        rel = acc.det() // L.index if acc.rank == m else None
        trace.append(DegreeTraceRow(d, len(pts), acc.rank, rel))
        if gamma is None and acc.rank == m:
            gamma = d
        if beta is None and generated:
            beta = d
            if stop_at_beta:
                break
    if beta is None and cap is not None and d_stop >= cap:
        raise Diverged(f"lattice of {L.chars} mod {L.moduli} not generated by degree {cap}")
    return gamma, beta, wit_gamma, wit_beta, trace


def lattice_degrees(L: ReprLattice, max_degree: int | None = None) -> DegreeResult:
    """``gamma``/``beta`` of an already built lattice (normalized or raw)."""
    cap = L.group.order
    limit = cap if max_degree is None else min(max_degree, cap)
    gamma, beta, wg, wb, trace = _run(L, limit, True, cap if limit == cap else None)
    return DegreeResult(gamma, beta, wg, wb, trace, L.index, L.faithful, limit)


def degree_invariants(S: CharacterSet, max_degree: int | None = None) -> DegreeResult:
    """Full-rank degree and generation degree of ``L(G, S)``.

    The loop is capped at ``|G|`` (Noether bound); passing that cap raises
    :class:`Diverged`.  A smaller ``max_degree`` may leave ``gamma``/``beta``
    as ``None``, reported through ``status``.
    """
    return lattice_degrees(build_lattice(S), max_degree)


def generation_profile(S: CharacterSet, d_max: int) -> list[DegreeTraceRow]:
    """Trace rows for every degree ``1..d_max``, even past generation."""
    if d_max < 1:
        raise BadInput(f"d_max must be >= 1, got {d_max}")
    return _run(build_lattice(S), d_max, False)[4]
