"""The lattice of exponent vectors of invariant Laurent monomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch
from .groups import AbelianGroup, Character, CharacterSet, image_order
from .intlinalg import HnfBasis, det_index, kernel_of_congruences


@dataclass(frozen=True)
class ReprLattice:
    """``L(G, S) = {a in Z^m : sum_j a_j chi_j = 0}`` with its defining congruences.

    ``chars`` may be an un-normalized list (trivial or repeated characters)
    when built through :func:`build_lattice_raw`; ``support`` is then ``None``.
    """

    group: AbelianGroup
    chars: tuple[Character, ...]
    basis: HnfBasis
    index: int
    coeffs: tuple[tuple[int, ...], ...]  # row i: i-th component of every character
    support: CharacterSet | None = None

    @property
    def m(self) -> int:
        return len(self.chars)

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.group.moduli

    @property
    def faithful(self) -> bool:
        return self.index == self.group.order


def _build(group: AbelianGroup, chars: Sequence[Character], support) -> ReprLattice:
    k = len(group.moduli)
    coeffs = tuple(tuple(chi[i] for chi in chars) for i in range(k))
    basis = kernel_of_congruences(coeffs, group.moduli, len(chars))
    return ReprLattice(group, tuple(chars), basis, det_index(basis), coeffs, support)


def build_lattice(S: CharacterSet) -> ReprLattice:
    L = _build(S.group, S.chars, S)
    assert L.index == image_order(S)[0]
    return L


def build_lattice_raw(group: AbelianGroup, chars: Sequence[Sequence[int]]) -> ReprLattice:
    """Lattice of an arbitrary character list, skipping normalization."""
    if not chars:
        raise DimensionMismatch("need at least one character")
    return _build(group, [group.reduce(c) for c in chars], None)


def contains_point(L: ReprLattice, a: Sequence[int]) -> bool:
    """Check the defining congruences directly (k modular dot products)."""
    if len(a) != L.m:
        raise DimensionMismatch(f"point of length {len(a)} in Z^{L.m}")
    return all(sum(c * x for c, x in zip(row, a)) % n == 0 for row, n in zip(L.coeffs, L.moduli))
