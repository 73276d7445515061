"""
Corpus generation.

A ``CorpusSpec`` lists generator families and the caps they run under.
``Corpus`` turns it into deterministic streams of rings, subring pairs,
nested subring triples, homomorphisms, posets and poset maps. Rings above
``max_ring`` are skipped with a log line; family parameters that break a
hard cap are refused up front.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .claims import Claim, InstanceKind, NestedTriple
from .config import Config, Limits
from .ideals import enumerate_ideals
from .rings import (
    FiniteRing,
    RingHom,
    SubringPair,
    identity_hom,
    make_field,
    make_localization,
    make_poly_quotient,
    make_product,
    make_projection,
    make_quotient,
    make_zn,
    multiplicative_closure,
    enumerate_subrings_with_status,
)
from .topology import SpectralMap, SpectralSpace, enumerate_posets, inclusion
from .utils import is_subset

logger = logging.getLogger(__name__)


class CorpusError(Exception):
    """Raised when a corpus family breaks a cap or is malformed."""
    pass


@dataclass(frozen=True)
class ZnFamily:
    """Z_n for lo <= n <= hi."""

    lo: int = 2
    hi: int = 30
    name = "zn"

    def validate(self, limits: Limits) -> None:
        if self.lo < 2 or self.hi < self.lo:
            raise CorpusError(f"family {self.name}: need 2 <= lo <= hi, got {self.lo}..{self.hi}")

    def sizes(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def build(self, size: int) -> Iterator[FiniteRing]:
        yield make_zn(size)


@dataclass(frozen=True)
class FieldFamily:
    """Non-prime finite fields F_q."""

    orders: Tuple[int, ...] = (4, 8, 9, 16)
    name = "fields"

    def validate(self, limits: Limits) -> None:
        for q in self.orders:
            if q < 2 or len(sympy.factorint(q)) != 1:
                raise CorpusError(f"family {self.name}: {q} is not a prime power")

    def sizes(self) -> Iterator[int]:
        return iter(self.orders)

    def build(self, size: int) -> Iterator[FiniteRing]:
        yield make_field(size)


@dataclass(frozen=True)
class PolyQuotientFamily:
    """F_p[x]/(f) for every monic f of degree 2..max_degree."""

    primes: Tuple[int, ...] = (2, 3)
    max_degree: int = 3
    name = "poly"

    def validate(self, limits: Limits) -> None:
        for p in self.primes:
            if not sympy.isprime(p):
                raise CorpusError(f"family {self.name}: {p} is not prime")
        if self.max_degree < 2:
            raise CorpusError(f"family {self.name}: max_degree must be at least 2")

    def sizes(self) -> Iterator[int]:
        return iter(p ** d for p in self.primes for d in range(2, self.max_degree + 1))

    def build(self, size: int) -> Iterator[FiniteRing]:
        for p in self.primes:
            for d in range(2, self.max_degree + 1):
                if p ** d != size:
                    continue
                for low in itertools.product(range(p), repeat=d):
                    yield make_poly_quotient(p, list(low) + [1])


@dataclass(frozen=True)
class ProductFamily:
    """Products Z_m1 x ... x Z_mk with nondecreasing moduli and bounded size."""

    moduli: Tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8, 9)
    arities: Tuple[int, ...] = (2, 3)
    max_size: int = 36
    name = "products"

    def validate(self, limits: Limits) -> None:
        if any(m < 2 for m in self.moduli):
            raise CorpusError(f"family {self.name}: moduli must be at least 2")
        if any(k < 2 for k in self.arities):
            raise CorpusError(f"family {self.name}: arities must be at least 2")
        if self.max_size > limits.subring_cap:
            raise CorpusError(
                f"family {self.name}: max_size {self.max_size} exceeds subring_cap {limits.subring_cap}"
            )

    def factors(self) -> List[Tuple[int, ...]]:
        out = []
        for k in self.arities:
            for combo in itertools.combinations_with_replacement(sorted(set(self.moduli)), k):
                if int(np.prod(combo)) <= self.max_size:
                    out.append(combo)
        return sorted(out, key=lambda c: (int(np.prod(c)), c))

    def sizes(self) -> Iterator[int]:
        return iter(sorted({int(np.prod(c)) for c in self.factors()}))

    def build_with_factors(self, size: int) -> Iterator[Tuple[FiniteRing, FiniteRing, FiniteRing]]:
        """Products of this size with the two factors they were built from."""
        for combo in self.factors():
            if int(np.prod(combo)) == size:
                left, right = _product_of(combo[:-1]), make_zn(combo[-1])
                yield make_product(left, right), left, right

    def build(self, size: int) -> Iterator[FiniteRing]:
        for ring, _, _ in self.build_with_factors(size):
            yield ring


def _product_of(moduli: Sequence[int]) -> FiniteRing:
    ring = make_zn(moduli[0])
    for m in moduli[1:]:
        ring = make_product(ring, make_zn(m))
    return ring


@dataclass(frozen=True)
class PosetFamily:
    """All labeled posets on 1..max_points points."""

    max_points: int = 5
    name = "posets"

    def validate(self, limits: Limits) -> None:
        if self.max_points < 1:
            raise CorpusError(f"family {self.name}: max_points must be positive")
        if self.max_points > limits.poset_enum_cap:
            raise CorpusError(
                f"family {self.name}: max_points {self.max_points} exceeds "
                f"poset_enum_cap {limits.poset_enum_cap}"
            )


RingFamily = Union[ZnFamily, FieldFamily, PolyQuotientFamily, ProductFamily]
Family = Union[RingFamily, PosetFamily]


def default_families(limits: Limits = Limits()) -> Tuple[Family, ...]:
    return (
        ZnFamily(),
        FieldFamily(),
        PolyQuotientFamily(),
        ProductFamily(max_size=min(36, limits.subring_cap)),
        PosetFamily(max_points=min(limits.max_poset, limits.poset_enum_cap)),
    )


@dataclass(frozen=True)
class CorpusSpec:
    """
    Families plus the caps and seed they run under.

    A nonzero seed shuffles the ring order; zero keeps construction order.
    """

    families: Tuple[Family, ...] = field(default_factory=default_families)
    limits: Limits = field(default_factory=Limits)
    seed: int = 0

    def validate(self) -> None:
        if not self.families:
            raise CorpusError("corpus has no families")
        for family in self.families:
            family.validate(self.limits)

    @classmethod
    def from_config(cls, config: Config) -> "CorpusSpec":
        limits = config.limits
        return cls(families=default_families(limits), limits=limits, seed=config.get("seed", 0))


class Corpus:
    """
    Deterministic instance streams for a ``CorpusSpec``.

    Example:
        >>> corpus = Corpus(CorpusSpec(families=(ZnFamily(2, 6),)))
        >>> [r.name for r in corpus.rings()]
        ['Z_2', 'Z_3', 'Z_4', 'Z_5', 'Z_6']
    """

    def __init__(self, spec: CorpusSpec):
        spec.validate()
        self.spec = spec
        self.limits = spec.limits
        self.incomplete: List[str] = []
        self._factors: Dict[int, Tuple[FiniteRing, FiniteRing]] = {}
        self._subrings: Dict[int, List[SubringPair]] = {}

    def _ring_families(self) -> List[RingFamily]:
        return [f for f in self.spec.families if not isinstance(f, PosetFamily)]

    @cached_property
    def _ring_list(self) -> List[FiniteRing]:
        rings: List[FiniteRing] = []
        for family in self._ring_families():
            for size in family.sizes():
                if size > self.limits.max_ring:
                    logger.debug("Skipping %s rings of size %d above max_ring", family.name, size)
                    continue
                if isinstance(family, ProductFamily):
                    for ring, left, right in family.build_with_factors(size):
                        self._factors[id(ring)] = (left, right)
                        rings.append(ring)
                else:
                    rings.extend(family.build(size))
        if self.spec.seed:
            order = np.random.default_rng(self.spec.seed).permutation(len(rings))
            rings = [rings[i] for i in order]
        logger.info("Corpus holds %d rings", len(rings))
        return rings

    def rings(self) -> Iterator[FiniteRing]:
        return iter(self._ring_list)

    def subrings(self, ring: FiniteRing) -> List[SubringPair]:
        key = id(ring)
        if key not in self._subrings:
            found, complete = enumerate_subrings_with_status(
                ring,
                cap=self.limits.subring_cap,
                exhaustive_limit=self.limits.subring_exhaustive_limit,
                max_generators=self.limits.subring_max_generators,
            )
            if not complete:
                self.incomplete.append(ring.name)
            self._subrings[key] = found
        return self._subrings[key]

    def pairs(self) -> Iterator[SubringPair]:
        for ring in self.rings():
            yield from self.subrings(ring)

    def triples(self) -> Iterator[NestedTriple]:
        for ring in self.rings():
            subs = self.subrings(ring)
            for middle in subs:
                for inner in subs:
                    if is_subset(inner.member, middle.member):
                        yield NestedTriple(ring, middle.member, inner.member)

    def homs(self) -> Iterator[RingHom]:
        """
        Identity, quotients by proper ideals, localizations at the closure
        of one element, product projections and subring inclusions.
        """
        for ring in self.rings():
            if ring.size > self.limits.max_hom_ring:
                continue
            yield identity_hom(ring)
            for ideal in enumerate_ideals(ring, self.limits.lattice_cap):
                if ideal.is_proper:
                    yield make_quotient(ring, ideal)[1]
            seen = set()
            for g in range(ring.size):
                closure = multiplicative_closure(ring, [g])
                if closure in seen or closure >> ring.zero & 1:
                    continue
                seen.add(closure)
                yield make_localization(ring, closure)[1]
            factors = self._factors.get(id(ring))
            if factors is not None:
                for index in (0, 1):
                    yield make_projection(ring, factors[0], factors[1], index)
            for pair in self.subrings(ring):
                if not pair.is_whole:
                    yield pair.inclusion()

    def posets(self) -> Iterator[SpectralSpace]:
        for family in self.spec.families:
            if not isinstance(family, PosetFamily):
                continue
            top = min(family.max_points, self.limits.max_poset)
            for n in range(1, top + 1):
                yield from enumerate_posets(n, self.limits.poset_enum_cap)

    def maps(self) -> Iterator[SpectralMap]:
        """Inclusions of every nonempty subposet, for posets up to map_poset_cap points."""
        for s in self.posets():
            if s.size > self.limits.map_poset_cap:
                continue
            for mask in range(1, s.full_mask + 1):
                yield inclusion(s, mask)

    def stream(self, kind: InstanceKind) -> Iterator:
        streams = {
            InstanceKind.RING: self.rings,
            InstanceKind.PAIR: self.pairs,
            InstanceKind.TRIPLE: self.triples,
            InstanceKind.HOM: self.homs,
            InstanceKind.POSET: self.posets,
            InstanceKind.MAP: self.maps,
        }
        return streams[kind]()

    def instances_for(self, claim: Claim) -> Iterator:
        for kind in claim.kinds:
            yield from self.stream(kind)

    def counts(self) -> Dict[str, int]:
        return {kind.value: sum(1 for _ in self.stream(kind)) for kind in InstanceKind}


def build_corpus(spec: Optional[CorpusSpec] = None) -> Corpus:
    """
    Build the corpus for a spec, the default corpus when none is given.

    Raises:
        CorpusError: If a family breaks a cap
    """
    return Corpus(spec or CorpusSpec())
