"""Closed-form degree bounds, evaluated in exact integer arithmetic.

Everything here is cheap and independent of the lattice search, so the
survey can use these values to cross-check engine output.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import BadInput, BadRange
from .groups import CharacterSet, canonical_class_rep


class BoundKind(str, Enum):
    LOWER = "LowerBound"
    UPPER = "UpperBound"
    EXACT = "Exact"
    CONJECTURAL = "Conjectural"


@dataclass(frozen=True)
class BoundReport:
    name: str
    value: int
    kind: BoundKind
    certificate: str | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "kind": self.kind.value, "certificate": self.certificate}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def int_root_lower_bound(order: int, m: int) -> int:
    """Least integer ``t`` with ``t**m >= order`` (binary search, no floats)."""
    if order < 1 or m < 1:
        raise BadInput("order and m must be positive")
    lo, hi = 1, 1
    while hi**m < order:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**m >= order:
            hi = mid
        else:
            lo = mid + 1
    return lo


def ceil_sqrt_plus_one(p: int) -> int:
    """``ceil(sqrt(p) + 1)`` exactly."""
    r = isqrt(p)
    return r + 1 if r * r == p else r + 2


@dataclass(frozen=True)
class TwoCharProfile:
    """Ratio data for a pair of characters of ``Z/p``.

    ``b*A1 = A2 (mod p)`` and ``p = q*b + r`` with ``0 < r < b``; the primed
    fields are the same data with the two characters swapped.
    """

    p: int
    A1: int
    A2: int
    b: int
    q: int
    r: int
    b2: int
    q2: int
    r2: int

    @property
    def inverse_pair(self) -> bool:
        return (self.A1 + self.A2) % self.p == 0


def check_prime_pair(p: int, A1: int, A2: int) -> tuple[int, int]:
    if p < 3 or not is_prime(p):
        raise BadInput(f"p must be an odd prime, got {p}")
    A1, A2 = A1 % p, A2 % p
    if not A1 or not A2 or A1 == A2:
        raise BadInput(f"need two distinct nonzero residues mod {p}, got {A1}, {A2}")
    return A1, A2


def two_char_profile(p: int, A1: int, A2: int) -> TwoCharProfile:
    A1, A2 = check_prime_pair(p, A1, A2)
    b = A2 * pow(A1, -1, p) % p
    b2 = pow(b, -1, p)
    q, r = divmod(p, b)
    q2, r2 = divmod(p, b2)
    return TwoCharProfile(p, A1, A2, b, q, r, b2, q2, r2)


def _qbr_certified(q: int, b: int, r: int) -> str | None:
    if q >= r * (r - 1):
        return "q>=r(r-1)"
    # q >= (r^2 + r b - 3r) / (b - r + 1), cleared of the denominator (b > r)
    if q * (b - r + 1) >= r * r + r * b - 3 * r:
        return "q(b-r+1)>=r^2+rb-3r"
    return None


def qbr_bound(prof: TwoCharProfile) -> BoundReport:
    """``min(q+b+r-1, q'+b'+r'-1)``; exact when an orientation is certified."""
    sides = [
        (prof.q + prof.b + prof.r - 1, _qbr_certified(prof.q, prof.b, prof.r), "b"),
        (prof.q2 + prof.b2 + prof.r2 - 1, _qbr_certified(prof.q2, prof.b2, prof.r2), "b'"),
    ]
    value = min(v for v, _, _ in sides)
    for v, cert, tag in sides:
        if cert is not None:
            # a certified side equals beta, which is below the other side
            return BoundReport("q+b+r-1", v, BoundKind.EXACT, f"{tag}: {cert}")
    return BoundReport("q+b+r-1", value, BoundKind.UPPER)


def half_bound(p: int, A1: int, A2: int) -> int | None:
    """``(p+3)/2`` for a non-inverse pair; ``None`` for an inverse pair (beta = p)."""
    A1, A2 = check_prime_pair(p, A1, A2)
    if (A1 + A2) % p == 0:
        return None
    return (p + 3) // 2


def conjecture_bound(n: int, m: int) -> int:
    if n < 3 or not 1 <= m <= n - 1:
        raise BadRange(f"need n >= 3 and 1 <= m <= n-1, got n={n}, m={m}")
    return _ceil_div(n, _ceil_div(m, 2))


@dataclass(frozen=True)
class SqrtLowerBound:
    p: int
    bound: int
    extremal_d: int | None = None
    extremal_class: tuple[int, ...] | None = None


def sqrt_lower_bound(p: int) -> SqrtLowerBound:
    """Lower bound on beta for two characters of ``Z/p`` and its extremal class.

    The bound is attained iff ``p == 3`` or ``p == d*d - 3*d + 1`` with
    ``d >= 4``, on the class of ``{1, d*d - 4*d + 2}``.  For ``p == 3`` the
    same formula with ``d = 3`` gives the only class ``{1, 2}``.
    """
    if p < 3 or not is_prime(p):
        raise BadInput(f"p must be an odd prime, got {p}")
    bound = ceil_sqrt_plus_one(p)
    d = None
    if p == 3:
        d = 3
    else:
        # d^2 - 3d + 1 = p  <=>  (2d-3)^2 = 4p + 5
        s = isqrt(4 * p + 5)
        if s * s == 4 * p + 5 and (s + 3) % 2 == 0 and (s + 3) // 2 >= 4:
            d = (s + 3) // 2
    if d is None:
        return SqrtLowerBound(p, bound)
    assert d == bound
    cls = canonical_class_rep(p, [1, (d * d - 4 * d + 2) % p])
    return SqrtLowerBound(p, bound, d, cls)


def extremal_set(n: int, m: int) -> tuple[int, ...]:
    """``{+-1, ..., +-m/2}`` for even m; ``{+-1, ..., +-(m-1)/2, (m+1)/2}`` for odd m."""
    if n < 3 or not 1 <= m < n:
        raise BadRange(f"need n >= 3 and 1 <= m < n, got n={n}, m={m}")
    half = m // 2
    S = {s % n for i in range(1, half + 1) for s in (i, -i)}
    if m % 2:
        S.add((m + 1) // 2 % n)
    assert len(S) == m
    return tuple(sorted(S))


def build_extremal_Sm(n: int, m: int) -> tuple[CharacterSet, int]:
    """The extremal set for ``(n, m)`` and its predicted ``beta = gamma``."""
    S = CharacterSet.cyclic(n, extremal_set(n, m))
    return S, max(3, conjecture_bound(n, m))


def hard_floor(S: CharacterSet) -> tuple[int, str]:
    """2 when every character is an involution, else 3."""
    orders = [S.group.char_order(c) for c in S.chars]
    if all(o == 2 for o in orders):
        return 2, "all characters are involutions"
    bad = next(c for c, o in zip(S.chars, orders) if o != 2)
    name = str(bad[0]) if S.group.is_cyclic else "(" + ",".join(map(str, bad)) + ")"
    return 3, f"character {name} has order {S.group.char_order(bad)}"


def close_implies_equal(order: int, m: int, gamma: int) -> bool:
    """``gamma**m < 2*order``, which forces ``beta == gamma``."""
    if order < 1 or m < 1 or gamma < 1:
        raise BadInput("arguments must be positive")
    return gamma**m < 2 * order


def applicable_bounds(S: CharacterSet, image: int) -> list[BoundReport]:
    """Every closed-form statement that applies to ``S`` (used by ``bounds``)."""
    out = [
        BoundReport("mth-root", int_root_lower_bound(image, S.m), BoundKind.LOWER),
        BoundReport("hard-floor", hard_floor(S)[0], BoundKind.LOWER, hard_floor(S)[1]),
        BoundReport("noether", S.group.order, BoundKind.UPPER),
    ]
    G = S.group
    if not G.is_cyclic:
        return out
    n = G.moduli[0]
    A = S.ints()
    if is_prime(n) and n >= 3:
        out.append(BoundReport("conjecture", conjecture_bound(n, S.m), BoundKind.CONJECTURAL))
        if S.m == 2:
            prof = two_char_profile(n, *A)
            out.append(qbr_bound(prof))
            hb = half_bound(n, *A)
            if hb is None:
                out.append(BoundReport("(p+3)/2", n, BoundKind.EXACT, "inverse pair"))
            else:
                out.append(BoundReport("(p+3)/2", hb, BoundKind.UPPER))
            sq = sqrt_lower_bound(n)
            cert = None
            if sq.extremal_class is not None and canonical_class_rep(n, A) == sq.extremal_class:
                cert = f"extremal class, d={sq.extremal_d}"
                out.append(BoundReport("sqrt(p)+1", sq.bound, BoundKind.EXACT, cert))
            else:
                out.append(BoundReport("sqrt(p)+1", sq.bound, BoundKind.LOWER))
        elif S.m >= 3:
            out.append(BoundReport("(p+3)/2", (n + 3) // 2, BoundKind.UPPER))
    if n >= 3 and A == extremal_set(n, S.m):
        out.append(BoundReport("extremal", max(3, conjecture_bound(n, S.m)), BoundKind.EXACT, "S_m"))
    return out
