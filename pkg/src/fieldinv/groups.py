"""Finite abelian groups, their characters, and Aut-orbits of character sets.

A group is a list of cyclic factor orders ``(n_1, ..., n_k)``; a character is
a residue vector ``(A_1, ..., A_k)`` with ``A_i`` taken mod ``n_i``, read as the
character ``g -> prod(zeta_i ** (A_i g_i))``.  For cyclic groups the helpers
accept and return plain ints.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, gcd, lcm, prod
from typing import Iterable, Iterator, Sequence

from .errors import BadInput, BadRange, EmptySupport, NonCyclicGroup
from .intlinalg import invariant_factors

Character = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(n < 2 for n in self.moduli):
            raise BadInput(f"cyclic factor orders must be >= 2, got {self.moduli}")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls((n,))

    @property
    def order(self) -> int:
        return prod(self.moduli)

    @property
    def is_cyclic(self) -> bool:
        return len(self.moduli) == 1

    def reduce(self, residues: Sequence[int] | int) -> Character:
        if isinstance(residues, int):
            residues = (residues,)
        if len(residues) != len(self.moduli):
            raise BadInput(f"character {tuple(residues)} has the wrong number of components")
        return tuple(a % n for a, n in zip(residues, self.moduli))

    def char_order(self, chi: Character) -> int:
        return lcm(*(n // gcd(a, n) for a, n in zip(chi, self.moduli)))

    def __str__(self):
        return "x".join(map(str, self.moduli))


@dataclass(frozen=True)
class CharacterSet:
    """A normalized support: distinct, nontrivial, lexicographically sorted."""

    group: AbelianGroup
    chars: tuple[Character, ...]

    @classmethod
    def cyclic(cls, n: int, residues: Iterable[int]) -> "CharacterSet":
        g = AbelianGroup.cyclic(n)
        return normalize_support(g, [(a,) for a in residues])

    @property
    def m(self) -> int:
        return len(self.chars)

    def ints(self) -> tuple[int, ...]:
        """Residues of a cyclic character set as plain ints."""
        if not self.group.is_cyclic:
            raise NonCyclicGroup(f"{self.group} is not cyclic")
        return tuple(c[0] for c in self.chars)

    def __str__(self):
        return format_charset(self)


def normalize_support(group: AbelianGroup, raw: Iterable[Sequence[int] | int]) -> CharacterSet:
    """Drop trivial characters, merge duplicates, sort."""
    chars = {group.reduce(c) for c in raw}
    chars.discard((0,) * len(group.moduli))
    if not chars:
        raise EmptySupport("no nontrivial character: the representation is trivial")
    return CharacterSet(group, tuple(sorted(chars)))


def image_order(S: CharacterSet) -> tuple[int, bool]:
    """Order of the subgroup of the dual group generated by ``S``, and faithfulness.

    The subgroup is ``(<S> + diag(n) Z^k) / diag(n) Z^k``, so its order is
    ``|G|`` divided by the cokernel order of the ``k x (m+k)`` matrix
    ``[S | diag(n)]``.
    """
    G = S.group
    k = len(G.moduli)
    M = [[chi[i] for chi in S.chars] + [G.moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    order = G.order // prod(invariant_factors(M))
    return order, order == G.order


# --- Aut(Z/n)-orbits -------------------------------------------------------


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    return tuple(u for u in range(1, n) if gcd(u, n) == 1)


@lru_cache(maxsize=None)
def _units_hitting(n: int, g: int) -> dict[int, tuple[int, ...]]:
    """For each ``s`` with ``gcd(s, n) == g``: the units ``u`` with ``u*s == g (mod n)``."""
    out = {}
    for s in range(g, n, g):
        if gcd(s, n) == g:
            out[s] = tuple(u for u in units(n) if u * s % n == g)
    return out


def _check_cyclic_set(n: int, S: Iterable[int]) -> tuple[int, ...]:
    if n < 2:
        raise BadInput(f"modulus must be >= 2, got {n}")
    T = tuple(sorted({a % n for a in S}))
    if not T or T[0] == 0:
        raise BadInput("character sets must be nonempty and avoid the trivial character")
    return T


def canonical_class_rep(n: int, S: Iterable[int]) -> tuple[int, ...]:
    """Lexicographically least ``sorted(u*S mod n)`` over units ``u``.

    Every image keeps the multiset of ``gcd(s, n)`` values, so the least
    possible first entry is ``g = min gcd(s, n)`` and only units sending some
    element of ``S`` to ``g`` can produce the minimum.
    """
    T = _check_cyclic_set(n, S)
    g = min(gcd(s, n) for s in T)
    hits = _units_hitting(n, g)
    best = None
    for s in T:
        for u in hits.get(s, ()):
            img = tuple(sorted(u * t % n for t in T))
            if best is None or img < best:
                best = img
    return best


def is_canonical(n: int, T: tuple[int, ...]) -> bool:
    """``T`` (sorted, nonzero) equals its own class representative."""
    g = T[0]
    if g != gcd(g, n):
        return False
    for s in T:
        if gcd(s, n) < g:
            return False
    hits = _units_hitting(n, g)
    for s in T:
        for u in hits.get(s, ()):
            if u == 1:
                continue
            if tuple(sorted(u * t % n for t in T)) < T:
                return False
    return True


def orbit_size(n: int, T: Sequence[int]) -> int:
    """Number of distinct sets in the Aut-orbit of ``T``."""
    key = frozenset(T)
    stab = sum(1 for u in units(n) if frozenset(u * t % n for t in T) == key)
    return len(units(n)) // stab


def class_count_total(n: int, m: int) -> int:
    return comb(n - 1, m)


def _check_range(n: int, m: int) -> None:
    if n < 2 or not 1 <= m <= n - 1:
        raise BadRange(f"need 1 <= m <= n-1, got n={n}, m={m}")


def enumerate_classes(n: int, m: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Canonical representatives of the m-subsets of ``{1..n-1}``, in lex order.

    With ``prefix``, only subsets whose sorted form starts with it are
    visited.  Prefix blocks are contiguous in the lexicographic subset order,
    which is how the survey splits the index space across workers.
    """
    _check_range(n, m)
    prefix = tuple(prefix)
    if len(prefix) > m or list(prefix) != sorted(set(prefix)) or (prefix and not 0 < prefix[0] < n):
        raise BadRange(f"bad prefix {prefix} for m={m}")
    if prefix:
        heads = [prefix[0]]
    else:
        heads = [a for a in range(1, n - m + 1) if gcd(a, n) == a]
    for a in heads:
        if gcd(a, n) != a:
            continue
        head = (a,) + prefix[1:]
        start = head[-1] + 1
        for tail in combinations(range(start, n), m - len(head)):
            T = head + tail
            if is_canonical(n, T):
                yield T


def split_prefixes(n: int, m: int, min_blocks: int) -> list[tuple[int, ...]]:
    """Lex-ordered prefixes whose blocks partition the canonical-class stream.

    Prefixes are lengthened until there are at least ``min_blocks`` of them
    (or they cannot be lengthened further).  Only heads that can start a
    canonical set (divisors of ``n``) are kept.
    """
    _check_range(n, m)
    blocks = [(a,) for a in range(1, n - m + 1) if gcd(a, n) == a]
    depth = 1
    while len(blocks) < min_blocks and depth < m:
        nxt = []
        for P in blocks:
            for b in range(P[-1] + 1, n - (m - depth) + 1):
                nxt.append(P + (b,))
        blocks = nxt
        depth += 1
    return blocks


# --- text syntax -------------------------------------------------------------

_TUPLE = re.compile(r"\(([^()]*)\)")


def parse_charset(text: str, normalize: bool = True):
    """Parse ``n:a1,a2,...`` or ``n1xn2:(a,b),(c,d),...``.

    Returns a ``CharacterSet``, or ``(group, raw_chars)`` when ``normalize``
    is false.
    """
    try:
        gtext, ctext = text.split(":", 1)
        group = AbelianGroup(tuple(int(x) for x in gtext.strip().lower().split("x")))
        ctext = ctext.strip()
        if group.is_cyclic:
            if "(" in ctext:
                raw = [tuple(int(x) for x in t.split(",")) for t in _TUPLE.findall(ctext)]
            else:
                raw = [(int(x),) for x in ctext.split(",") if x.strip()]
        else:
            found = _TUPLE.findall(ctext)
            if not found or _TUPLE.sub("", ctext).replace(",", "").strip():
                raise ValueError("expected parenthesized residue tuples")
            raw = [tuple(int(x) for x in t.split(",")) for t in found]
    except ValueError as exc:
        raise BadInput(f"cannot parse character set {text!r}: {exc}") from None
    raw = [group.reduce(c) for c in raw]
    if not normalize:
        return group, raw
    return normalize_support(group, raw)


def format_charset(S: CharacterSet) -> str:
    if S.group.is_cyclic:
        return f"{S.group}:" + ",".join(str(c[0]) for c in S.chars)
    return f"{S.group}:" + ",".join("(" + ",".join(map(str, c)) + ")" for c in S.chars)
