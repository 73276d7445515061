"""
Primitive computations behind the claim checks, in two implementations.

``FastToolkit`` delegates to the lattice, topology and equational modules.
``DirectToolkit`` recomputes the same quantities by brute force: ideals by
closing generator sets, open and closed sets by scanning every subset, the
equational identity by element arithmetic. A refutation found with the
fast toolkit is only reported after the direct toolkit reproduces it.
"""

import itertools
import logging
from functools import lru_cache
from typing import FrozenSet, List, Set, Tuple

from .config import Limits
from .density import comaximal_contractions, cvu_set, dense
from .equational import cn_equational
from .ideals import Ideal, _sum_mask, nilradical, o_m, prime_masks
from .rings import Element, FiniteRing, SubringPair
from .topology import (
    MapProperties,
    SpectralMap,
    SpectralSpace,
    maximal_separation_criterion,
    is_cn_chain,
    is_completely_normal_exhaustive,
    is_completely_normal_topological,
    is_normal_exhaustive,
    is_normal_topological,
    is_pm,
    is_weak_cn,
    map_props,
    max_is_t2,
    mu_retraction,
    no_incomparable_below_maximal,
    pm_closed_downsets,
    retractions,
    space_from_ring,
)
from .utils import Failure, bits, is_subset, mask_from
from .validation import CapValidator

logger = logging.getLogger(__name__)

DIRECT_SPACE_CAP = 8


class FastToolkit:
    """Primitives computed by the main engines."""

    name = "fast"

    def __init__(self, limits: Limits = Limits()):
        self.limits = limits

    def dense(self, pair: SubringPair) -> bool:
        CapValidator.check("ideal lattice", pair.ambient.size, self.limits.lattice_cap)
        return dense(pair)

    def primes(self, ring: FiniteRing) -> Tuple[int, ...]:
        return prime_masks(ring, self.limits.lattice_cap)

    def space(self, ring: FiniteRing) -> SpectralSpace:
        return space_from_ring(ring, self.limits.lattice_cap)

    def map_props(self, m: SpectralMap) -> MapProperties:
        return map_props(m)

    def ideal_sum(self, ring: FiniteRing, left: int, right: int) -> int:
        return _sum_mask(ring, left, right)

    def comaximal(self, pair: SubringPair) -> bool:
        return comaximal_contractions(pair, self.limits.lattice_cap)

    def nilradical(self, ring: FiniteRing) -> int:
        return nilradical(ring).members

    def o_m(self, ring: FiniteRing, m: int) -> int:
        return o_m(ring, Ideal(ring, m), self.limits.lattice_cap).members

    def is_pm(self, s: SpectralSpace) -> bool:
        return is_pm(s)

    def mu_exists(self, s: SpectralSpace) -> bool:
        return not isinstance(mu_retraction(s), Failure)

    def retraction_count(self, s: SpectralSpace) -> int:
        return len(retractions(s, cap=max(8, self.limits.poset_enum_cap)))

    def pm_closed_downsets(self, s: SpectralSpace) -> bool:
        return pm_closed_downsets(s)

    def is_normal(self, s: SpectralSpace) -> bool:
        return is_normal_topological(s, self.limits.complete_normality_cap)

    def is_cn(self, s: SpectralSpace) -> bool:
        return is_completely_normal_topological(s, self.limits.complete_normality_cap)

    def is_cn_chain(self, s: SpectralSpace) -> bool:
        return is_cn_chain(s)

    def is_weak_cn(self, s: SpectralSpace) -> bool:
        return is_weak_cn(s)

    def no_incomparable_below_maximal(self, s: SpectralSpace) -> bool:
        return no_incomparable_below_maximal(s)

    def max_t2(self, s: SpectralSpace) -> bool:
        return max_is_t2(s)

    def max_separation(self, ring: FiniteRing) -> bool:
        return maximal_separation_criterion(ring, self.limits.lattice_cap)

    def cn_equational(self, ring: FiniteRing) -> bool:
        return cn_equational(ring, self.limits.equational_cap).holds

    def cvu(self, pair: SubringPair, u: int, v: int) -> Tuple[bool, bool, bool]:
        result = cvu_set(pair, u, v)
        return result.is_subset, result.is_ideal, result.nonzero


# Brute-force primitives


def _ideal_closure(ring: FiniteRing, seed: Set[int]) -> FrozenSet[int]:
    current = set(seed) | {ring.zero}
    while True:
        grown = set(current)
        for a in current:
            for b in current:
                grown.add(ring.plus(a, b))
            for r in range(ring.size):
                grown.add(ring.times(r, a))
        if grown == current:
            return frozenset(current)
        current = grown


@lru_cache(maxsize=64)
def _direct_ideals(ring: FiniteRing) -> Tuple[FrozenSet[int], ...]:
    start = _ideal_closure(ring, set())
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for ideal in frontier:
            for g in range(ring.size):
                if g in ideal:
                    continue
                grown = _ideal_closure(ring, set(ideal) | {g})
                if grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return tuple(sorted(found, key=lambda i: (len(i), sorted(i))))


def _direct_radical(ring: FiniteRing, ideal: FrozenSet[int]) -> FrozenSet[int]:
    out = set()
    for a in range(ring.size):
        x = a
        for _ in range(ring.size):
            if x in ideal:
                out.add(a)
                break
            x = ring.times(x, a)
    return frozenset(out)


def _direct_is_prime(ring: FiniteRing, ideal: FrozenSet[int]) -> bool:
    if len(ideal) == ring.size:
        return False
    return all(
        ring.times(a, b) not in ideal
        for a in range(ring.size) if a not in ideal
        for b in range(ring.size) if b not in ideal
    )


class DirectToolkit(FastToolkit):
    """Primitives recomputed by brute force, for re-validating refutations."""

    name = "direct"

    def _ideals(self, ring: FiniteRing) -> Tuple[FrozenSet[int], ...]:
        CapValidator.check("ideal lattice", ring.size, self.limits.lattice_cap)
        return _direct_ideals(ring)

    def dense(self, pair: SubringPair) -> bool:
        ring = pair.ambient
        for ideal in self._ideals(ring):
            rad = _direct_radical(ring, ideal)
            for b in range(ring.size):
                if b in rad:
                    continue
                if not any(a not in rad and pair.contains(ring.times(a, b)) for a in range(ring.size)):
                    return False
        return True

    def primes(self, ring: FiniteRing) -> Tuple[int, ...]:
        found = [mask_from(i) for i in self._ideals(ring) if _direct_is_prime(ring, i)]
        return tuple(sorted(found, key=lambda m: (bin(m).count("1"), m)))

    def space(self, ring: FiniteRing) -> SpectralSpace:
        primes = self.primes(ring)
        up = [mask_from(j for j, q in enumerate(primes) if p & ~q == 0) for p in primes]
        return SpectralSpace(primes, tuple(up), name=f"Spec {ring.name}", ring=ring)

    @staticmethod
    def _open_sets(s: SpectralSpace) -> List[int]:
        leq = [(i, j) for i in range(s.size) for j in range(s.size) if s.leq(i, j)]
        return [m for m in range(1 << s.size) if all(m >> i & 1 for i, j in leq if m >> j & 1)]

    def map_props(self, m: SpectralMap) -> MapProperties:
        CapValidator.check("space", max(m.source.size, m.target.size), DIRECT_SPACE_CAP)
        src, tgt = m.source, m.target
        src_open = self._open_sets(src)
        tgt_open = self._open_sets(tgt)
        src_closed = [src.full_mask & ~u for u in src_open]
        tgt_closed = [tgt.full_mask & ~u for u in tgt_open]
        image = m.image_mask()
        tgt_open_set, tgt_closed_set = set(tgt_open), set(tgt_closed)
        traces_open = {w & image for w in tgt_open}
        traces_closed = {w & image for w in tgt_closed}

        src_open_set = set(src_open)
        continuous = all(m.preimage_mask(v) in src_open_set for v in tgt_open)
        open_rel = all(m.image_mask(u) in traces_open for u in src_open)
        open_tgt = all(m.image_mask(u) in tgt_open_set for u in src_open)
        closed_tgt = all(m.image_mask(c) in tgt_closed_set for c in src_closed)
        closed_img = all(m.image_mask(c) in traces_closed for c in src_closed)
        injective = len(set(m.table)) == len(m.table)
        surjective = image == tgt.full_mask
        hull = tgt.full_mask
        for c in tgt_closed:
            if is_subset(image, c):
                hull &= c
        dense_image = hull == tgt.full_mask
        embedding = injective and continuous and open_rel
        return MapProperties(
            continuous=continuous,
            continuous_order=continuous,
            open=open_rel,
            open_in_target=open_tgt,
            closed=closed_tgt,
            closed_onto_image=closed_img,
            injective=injective,
            surjective=surjective,
            dense_image=dense_image,
            embedding=embedding,
            homeomorphism=embedding and surjective,
        )

    def ideal_sum(self, ring: FiniteRing, left: int, right: int) -> int:
        return mask_from(_ideal_closure(ring, set(bits(left)) | set(bits(right))))

    def comaximal(self, pair: SubringPair) -> bool:
        spec_b = self.space(pair.ambient)
        contracted = [pair.restrict_mask(spec_b.points[m]) for m in bits(spec_b.maximal_mask)]
        ring = pair.ring
        return all(
            self.ideal_sum(ring, c, d) == ring.full_mask
            for c, d in itertools.combinations(contracted, 2)
        )

    def nilradical(self, ring: FiniteRing) -> int:
        return mask_from(_direct_radical(ring, frozenset({ring.zero})))

    def o_m(self, ring: FiniteRing, m: int) -> int:
        mask = ring.full_mask
        for p in self.primes(ring):
            if is_subset(p, m):
                mask &= p
        return mask

    @staticmethod
    def _maxima(s: SpectralSpace) -> List[int]:
        return [j for j in range(s.size) if not any(k != j and s.leq(j, k) for k in range(s.size))]

    def _maxima_above(self, s: SpectralSpace, i: int) -> List[int]:
        return [j for j in self._maxima(s) if s.leq(i, j)]

    def is_pm(self, s: SpectralSpace) -> bool:
        return all(len(self._maxima_above(s, i)) == 1 for i in range(s.size))

    def mu_exists(self, s: SpectralSpace) -> bool:
        return self.retraction_count(s) > 0

    def retraction_count(self, s: SpectralSpace) -> int:
        maxima = self._maxima(s)
        target = SpectralSpace(tuple(maxima), tuple(1 << i for i in range(len(maxima))), name="max")
        rest = [i for i in range(s.size) if i not in maxima]
        count = 0
        for choice in itertools.product(range(len(maxima)), repeat=len(rest)):
            table = [0] * s.size
            for i, m in enumerate(maxima):
                table[m] = i
            for i, c in zip(rest, choice):
                table[i] = c
            if self.map_props(SpectralMap(s, target, tuple(table))).continuous:
                count += 1
        return count

    def is_normal(self, s: SpectralSpace) -> bool:
        return is_normal_exhaustive(s, DIRECT_SPACE_CAP)

    def is_cn(self, s: SpectralSpace) -> bool:
        return is_completely_normal_exhaustive(s, DIRECT_SPACE_CAP)

    def is_cn_chain(self, s: SpectralSpace) -> bool:
        for i in range(s.size):
            above = [j for j in range(s.size) if s.leq(i, j)]
            if any(not (s.leq(a, b) or s.leq(b, a)) for a in above for b in above):
                return False
        return True

    def max_t2(self, s: SpectralSpace) -> bool:
        maxima = self._maxima(s)
        opens = self._open_sets(s)
        for x, y in itertools.combinations(maxima, 2):
            if not any(u >> x & 1 and v >> y & 1 and not (u & v) & mask_from(maxima)
                       for u in opens for v in opens):
                return False
        return True

    def max_separation(self, ring: FiniteRing) -> bool:
        spec = self.space(ring)
        maxima = [spec.points[m] for m in bits(spec.maximal_mask)]
        jac = ring.full_mask
        for m in maxima:
            jac &= m
        for m, n in itertools.combinations(maxima, 2):
            if not any(
                jac >> ring.times(a, b) & 1
                for a in range(ring.size) if not m >> a & 1
                for b in range(ring.size) if not n >> b & 1
            ):
                return False
        return True

    def cn_equational(self, ring: FiniteRing) -> bool:
        CapValidator.check("ring", ring.size, self.limits.equational_cap)
        elements = [Element(ring, i) for i in range(ring.size)]
        for s, a in itertools.product(elements, repeat=2):
            found = False
            for k in range(1, ring.size + 1):
                sk = s ** k
                for x, x_prime in itertools.product(elements, repeat=2):
                    if ((sk - x * s * a) * (sk - x_prime * (s * s - s * a))).is_zero():
                        found = True
                        break
                if found:
                    break
            if not found:
                return False
        return True

    def cvu(self, pair: SubringPair, u: int, v: int) -> Tuple[bool, bool, bool]:
        ring = pair.ambient
        members = {r for r in range(ring.size) if pair.contains(ring.times(r, v))}
        inside = all(pair.contains(r) for r in members)
        as_ideal = inside and all(
            ring.plus(a, b) in members for a in members for b in members
        ) and all(ring.times(r, a) in members for r in pair.to_ambient for a in members)
        return inside, as_ideal, members != {ring.zero}
