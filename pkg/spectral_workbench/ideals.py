"""
Ideal lattice, radicals and the prime spectrum of a finite ring.

The lattice is built as the join-closure of the principal ideals: every
ideal of a finite ring is a finite sum of principal ideals. Because every
prime of a finite ring is maximal, ``spectrum``, ``maximal_spectrum`` and
``minimal_spectrum`` return the same ideals; they are kept apart because
they are different operations on rings in general and the claim checks
state them separately.

Enumeration results are cached per ring object, which is per worker
process when the audit runs in parallel.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .rings import FiniteRing, RingHom
from .utils import bits, iter_bits, is_subset, mask_from, popcount
from .validation import CapValidator

logger = logging.getLogger(__name__)

DEFAULT_LATTICE_CAP = 64


class IdealError(Exception):
    """Raised when a subset is not an ideal or an ideal operation is undefined."""
    pass


def _is_ideal_mask(ring: FiniteRing, mask: int) -> bool:
    if not mask >> ring.zero & 1:
        return False
    members = bits(mask)
    for a in members:
        row = ring.add_rows[a]
        for b in members:
            if not mask >> row[b] & 1:
                return False
        if not mask >> ring.neg_table[a] & 1:
            return False
    for r in range(ring.size):
        row = ring.mul_rows[r]
        for a in members:
            if not mask >> row[a] & 1:
                return False
    return True


@dataclass(frozen=True)
class Ideal:
    """
    An ideal of a finite ring.

    Attributes:
        ring: The ring
        members: Bit set of elements
    """

    ring: FiniteRing
    members: int

    def __post_init__(self):
        if self.members <= 0 or self.members > self.ring.full_mask:
            raise IdealError("ideal member set is empty or out of range")
        if not _is_ideal_mask(self.ring, self.members):
            raise IdealError(f"{bits(self.members)} is not an ideal of {self.ring.name}")

    def __contains__(self, a: int) -> bool:
        return bool(self.members >> a & 1)

    def __len__(self) -> int:
        return popcount(self.members)

    def elements(self) -> List[int]:
        return bits(self.members)

    @property
    def is_proper(self) -> bool:
        return self.members != self.ring.full_mask

    def issubset(self, other: "Ideal") -> bool:
        return is_subset(self.members, other.members)

    def __repr__(self) -> str:
        return f"Ideal({self.ring.name}, {self.elements()})"


def _additive_span(ring: FiniteRing, mask: int) -> int:
    current = mask | (1 << ring.zero)
    while True:
        members = bits(current)
        grown = current
        for a in members:
            row = ring.add_rows[a]
            for b in members:
                grown |= 1 << row[b]
        if grown == current:
            return current
        current = grown


@lru_cache(maxsize=512)
def _principal_mask(ring: FiniteRing, a: int) -> int:
    return mask_from(ring.mul_rows[r][a] for r in range(ring.size))


def principal_ideal(ring: FiniteRing, a: int) -> Ideal:
    """The ideal (a) = {r a : r in ring}."""
    return Ideal(ring, _principal_mask(ring, a))


def _sum_mask(ring: FiniteRing, left: int, right: int) -> int:
    return mask_from(
        ring.add_rows[a][b] for a in iter_bits(left) for b in iter_bits(right)
    )


def ideal_generated(ring: FiniteRing, gens: Sequence[int]) -> Ideal:
    """Smallest ideal containing gens."""
    mask = 1 << ring.zero
    for g in gens:
        if not 0 <= g < ring.size:
            raise IdealError(f"generator {g} outside 0..{ring.size - 1}")
        mask = _sum_mask(ring, mask, _principal_mask(ring, g))
    return Ideal(ring, mask)


def ideal_sum(i: Ideal, j: Ideal) -> Ideal:
    if i.ring is not j.ring:
        raise IdealError("ideals belong to different rings")
    return Ideal(i.ring, _sum_mask(i.ring, i.members, j.members))


def ideal_intersection(i: Ideal, j: Ideal) -> Ideal:
    if i.ring is not j.ring:
        raise IdealError("ideals belong to different rings")
    return Ideal(i.ring, i.members & j.members)


def ideal_product(i: Ideal, j: Ideal) -> Ideal:
    """The ideal generated by all products a b with a in i and b in j."""
    ring = i.ring
    products = mask_from(ring.mul_rows[a][b] for a in iter_bits(i.members) for b in iter_bits(j.members))
    return Ideal(ring, _additive_span(ring, products))


@lru_cache(maxsize=256)
def _ideal_masks(ring: FiniteRing) -> Tuple[int, ...]:
    principal = {_principal_mask(ring, a) for a in range(ring.size)}
    found = set(principal)
    frontier = list(found)
    while frontier:
        nxt = []
        for current in frontier:
            for p in principal:
                if is_subset(p, current):
                    continue
                joined = _sum_mask(ring, current, p)
                if joined not in found:
                    found.add(joined)
                    nxt.append(joined)
        frontier = nxt
    return tuple(sorted(found, key=lambda m: (popcount(m), m)))


def enumerate_ideals(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    """
    All ideals of the ring, ordered by size and then by member set.

    Raises:
        CapExceededError: If |ring| > cap
    """
    CapValidator.check("ideal lattice", ring.size, cap)
    return [Ideal(ring, m) for m in _ideal_masks(ring)]


def radical_mask(ring: FiniteRing, mask: int) -> int:
    """Bit set of a with a^k in mask for some k >= 1."""
    out = 0
    rows = ring.mul_rows
    for a in range(ring.size):
        seen = set()
        x = a
        while x not in seen:
            if mask >> x & 1:
                out |= 1 << a
                break
            seen.add(x)
            x = rows[x][a]
    return out


def radical(i: Ideal) -> Ideal:
    return Ideal(i.ring, radical_mask(i.ring, i.members))


def _is_prime_mask(ring: FiniteRing, mask: int) -> bool:
    if mask == ring.full_mask:
        return False
    outside = [a for a in range(ring.size) if not mask >> a & 1]
    for a in outside:
        row = ring.mul_rows[a]
        for b in outside:
            if mask >> row[b] & 1:
                return False
    return True


def is_prime(i: Ideal) -> bool:
    """Proper, and a b in i forces a in i or b in i."""
    return _is_prime_mask(i.ring, i.members)


def is_maximal(i: Ideal, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    if not i.is_proper:
        return False
    CapValidator.check("ideal lattice", i.ring.size, cap)
    full = i.ring.full_mask
    return not any(
        m != i.members and m != full and is_subset(i.members, m)
        for m in _ideal_masks(i.ring)
    )


@lru_cache(maxsize=256)
def _prime_masks(ring: FiniteRing) -> Tuple[int, ...]:
    return tuple(m for m in _ideal_masks(ring) if _is_prime_mask(ring, m))


def spectrum(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    """Prime ideals in lattice order."""
    CapValidator.check("ideal lattice", ring.size, cap)
    return [Ideal(ring, m) for m in _prime_masks(ring)]


def prime_masks(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> Tuple[int, ...]:
    CapValidator.check("ideal lattice", ring.size, cap)
    return _prime_masks(ring)


def maximal_spectrum(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    """Maximal ideals."""
    primes = prime_masks(ring, cap)
    full = ring.full_mask
    ideals = _ideal_masks(ring)
    return [
        Ideal(ring, p) for p in primes
        if not any(m != p and m != full and is_subset(p, m) for m in ideals)
    ]


def minimal_spectrum(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    """Primes containing no other prime."""
    primes = prime_masks(ring, cap)
    return [
        Ideal(ring, p) for p in primes
        if not any(q != p and is_subset(q, p) for q in primes)
    ]


def nilradical(ring: FiniteRing) -> Ideal:
    """Nilpotent elements; also the intersection of all primes."""
    return Ideal(ring, radical_mask(ring, 1 << ring.zero))


def jacobson(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    """Intersection of the maximal ideals."""
    mask = ring.full_mask
    for m in maximal_spectrum(ring, cap):
        mask &= m.members
    return Ideal(ring, mask)


def primes_containing(i: Ideal, cap: int = DEFAULT_LATTICE_CAP) -> List[Ideal]:
    return [Ideal(i.ring, p) for p in prime_masks(i.ring, cap) if is_subset(i.members, p)]


def prime_radical(i: Ideal, cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    """Intersection of the primes containing i; the whole ring if there are none."""
    mask = i.ring.full_mask
    for p in primes_containing(i, cap):
        mask &= p.members
    return Ideal(i.ring, mask)


def o_m(ring: FiniteRing, m: Ideal, cap: int = DEFAULT_LATTICE_CAP) -> Ideal:
    """
    Intersection of the primes contained in m.

    Raises:
        IdealError: If m is not a maximal ideal of ring
    """
    if m.ring is not ring or not is_maximal(m, cap):
        raise IdealError(f"{m} is not a maximal ideal of {ring.name}")
    mask = ring.full_mask
    for p in prime_masks(ring, cap):
        if is_subset(p, m.members):
            mask &= p
    return Ideal(ring, mask)


def contract(hom: RingHom, ideal: Ideal) -> Ideal:
    """Preimage of an ideal of the codomain."""
    if ideal.ring is not hom.codomain:
        raise IdealError("ideal does not belong to the codomain")
    return Ideal(hom.domain, hom.preimage_mask(ideal.members))


def kernel(hom: RingHom) -> Ideal:
    return Ideal(hom.domain, hom.kernel_mask())
