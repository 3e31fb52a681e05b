"""Hilbert series of two-character invariant rings of ``Z/p``.

The points of ``L`` in the square ``[0, p)^2`` form a module basis over
``k[x^p, y^p]``, so the series is ``(1 + sum_{d in D} t^d) / (1 - t^p)^2``
where ``D`` collects the nonzero degrees of those points.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formulas import check_prime_pair


@dataclass(frozen=True)
class HilbertSeries2:
    p: int
    A1: int
    A2: int
    D: tuple[int, ...]

    def numerator_exponents(self) -> tuple[int, ...]:
        return (0,) + self.D

    def format(self) -> str:
        terms = ["1"] + [f"t^{d}" for d in self.D]
        return f"({' + '.join(terms)})/(1-t^{self.p})^2"

    def to_dict(self) -> dict:
        return {"p": self.p, "A1": self.A1, "A2": self.A2, "D": list(self.D)}


@dataclass(frozen=True)
class HilbertProperties:
    symmetric: bool  # d -> 2p - d preserves D
    one_per_residue: bool  # one element per nonzero class mod p, and p not in D
    avoids_p_mod_d: bool  # no element of D is congruent to p mod any d in D

    @property
    def all_true(self) -> bool:
        return self.symmetric and self.one_per_residue and self.avoids_p_mod_d

    def to_dict(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "one_per_residue": self.one_per_residue,
            "avoids_p_mod_d": self.avoids_p_mod_d,
        }


def hilbert_numerator(p: int, A1: int, A2: int) -> HilbertSeries2:
    A1, A2 = check_prime_pair(p, A1, A2)
    degs = [a1 + a2 for a1 in range(p) for a2 in range(p) if (A1 * a1 + A2 * a2) % p == 0]
    nonzero = sorted(d for d in degs if d)
    # one lattice point per residue class of the degree mod p
    assert len(nonzero) == p - 1 and len(set(nonzero)) == p - 1
    return HilbertSeries2(p, A1, A2, tuple(nonzero))


def verify_hilbert_properties(h: HilbertSeries2) -> HilbertProperties:
    p, D = h.p, h.D
    Dset = set(D)
    symmetric = all(2 * p - d in Dset for d in D)
    residues = [d % p for d in D]
    one_per = p not in Dset and sorted(residues) == list(range(1, p))
    avoids = all(e % d != p % d for d in D for e in D)
    return HilbertProperties(symmetric, one_per, avoids)


def residue_coverage(h: HilbertSeries2) -> dict[int, tuple[int, ...]]:
    """For each ``d`` in ``D``, the residues mod ``d`` hit by ``D``.

    Diagnostic only; no claim about the Hilbert ideal is made here.
    """
    return {d: tuple(sorted({e % d for e in h.D})) for d in h.D}
