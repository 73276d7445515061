"""
Density of subrings and the maps it induces on spectra.

A subring A of B is dense when for every ideal I of B and every b outside
rad(I) there is a in B outside rad(I) with a b in A.

Checking primes only is enough: if I is an ideal and b lies outside
rad(I), then b lies outside some prime P containing I, and an a outside P
with a b in A is outside rad(I) as well, since rad(I) lies inside P.
Conversely a failure at a prime P is a failure of the definition at
I = P, since rad(P) = P.
The two modes of ``is_dense`` must therefore agree, and the audit checks
that they do. The primes mode is the faster one, since a finite ring has
far fewer primes than ideals.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple, Union

from .ideals import (
    DEFAULT_LATTICE_CAP,
    _is_ideal_mask,
    enumerate_ideals,
    maximal_spectrum,
    radical_mask,
    spectrum,
)
from .rings import RingHom, SubringPair
from .topology import SpectralMap, SpectralSpace, point_mask, space_from_ring, subspace
from .utils import Failure, bits, is_subset, mask_from

logger = logging.getLogger(__name__)


class DensityError(Exception):
    """Raised when a density query is malformed."""
    pass


class DensityMode(str, enum.Enum):
    DEFINITION = "definition"
    PRIMES = "primes"


@dataclass
class DensityReport:
    """
    Outcome of a density check.

    ``witness_table`` maps (ideal member set, b) to the element a that
    works; ``witness_fail`` is the first (ideal, b) with no such a.
    Elements are ambient indices.
    """

    pair: SubringPair
    mode: DensityMode
    dense: bool
    witness_fail: Optional[Tuple[int, int]] = None
    witness_table: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.dense

    def failure_witness(self) -> Optional[Dict[str, Any]]:
        if self.witness_fail is None:
            return None
        ideal, b = self.witness_fail
        return {"ideal": bits(ideal), "b": b}


def is_dense(pair: SubringPair, mode: Union[DensityMode, str] = DensityMode.DEFINITION,
             cap: int = DEFAULT_LATTICE_CAP) -> DensityReport:
    """
    Decide whether pair.ring is dense in pair.ambient.

    Args:
        pair: Subring pair
        mode: "definition" scans every ideal, "primes" scans primes only
        cap: Ideal-lattice cap for the ambient ring

    Returns:
        DensityReport with a witness for every (ideal, b) or the first failure

    Raises:
        CapExceededError: If the ambient ring is above cap
    """
    mode = DensityMode(mode)
    ring = pair.ambient
    ideals = enumerate_ideals(ring, cap) if mode is DensityMode.DEFINITION else spectrum(ring, cap)
    table: Dict[Tuple[int, int], int] = {}

    for ideal in ideals:
        mask = ideal.members
        rad = radical_mask(ring, mask)
        candidates = [a for a in range(ring.size) if not rad >> a & 1]
        for b in range(ring.size):
            if rad >> b & 1:
                continue
            row = ring.mul_rows[b]
            found = next((a for a in candidates if pair.member >> row[a] & 1), None)
            if found is None:
                return DensityReport(pair, mode, False, witness_fail=(mask, b), witness_table=table)
            table[(mask, b)] = found

    return DensityReport(pair, mode, True, witness_table=table)


@lru_cache(maxsize=4096)
def dense(pair: SubringPair) -> bool:
    """Cached density flag, primes mode."""
    return is_dense(pair, DensityMode.PRIMES).dense


def contraction(hom: RingHom, cap: int = DEFAULT_LATTICE_CAP) -> SpectralMap:
    """
    The induced map Spec(codomain) -> Spec(domain), Q -> f^-1(Q).

    Raises:
        DensityError: If some preimage is not a prime of the domain
    """
    source = space_from_ring(hom.codomain, cap)
    target = space_from_ring(hom.domain, cap)
    index = {p.members: i for i, p in enumerate(target.points)}
    table = []
    for q in source.points:
        pre = hom.preimage_mask(q.members)
        if pre not in index:
            raise DensityError(f"preimage of {q} under {hom.name} is not prime")
        table.append(index[pre])
    return SpectralMap(source, target, tuple(table), name=f"{hom.name}*")


def pair_contraction(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP) -> SpectralMap:
    """The map i*: Spec B -> Spec A, P -> P meet A."""
    return contraction(pair.inclusion(), cap)


def _spaces(pair: SubringPair, cap: int,
            spaces: Optional[Tuple[SpectralSpace, SpectralSpace]]) -> Tuple[SpectralSpace, SpectralSpace]:
    if spaces is not None:
        return spaces
    return space_from_ring(pair.ring, cap), space_from_ring(pair.ambient, cap)


def lambda_map(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP,
               spaces: Optional[Tuple[SpectralSpace, SpectralSpace]] = None) -> Union[SpectralMap, Failure]:
    """
    Max B -> Max A, sending M to the unique maximal ideal of A over M meet A.

    Args:
        pair: Subring pair
        cap: Ideal-lattice cap
        spaces: (Spec A, Spec B) when already computed

    Returns:
        The map, or a Failure when some contraction lies under zero or
        several maximal ideals of A, which cannot happen when A is pm.
    """
    spec_a, spec_b = _spaces(pair, cap, spaces)
    max_a = spec_a.maximal_mask
    max_b = spec_b.maximal_mask
    source = subspace(spec_b, max_b, name=f"Max {pair.ambient.name}")
    target = subspace(spec_a, max_a, name=f"Max {pair.ring.name}")
    local = {orig: i for i, orig in enumerate(bits(max_a))}
    index = {point_mask(p): i for i, p in enumerate(spec_a.points)}

    table = []
    for m in bits(max_b):
        maximal = point_mask(spec_b.points[m])
        contracted = index[pair.restrict_mask(maximal)]
        above = bits(spec_a.up[contracted] & max_a)
        if len(above) != 1:
            return Failure(
                "contraction is not below exactly one maximal ideal",
                {"maximal": bits(maximal), "maximal_above": above},
            )
        table.append(local[above[0]])
    return SpectralMap(source, target, tuple(table), name="lambda")


def theta_map(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP,
              spaces: Optional[Tuple[SpectralSpace, SpectralSpace]] = None,
              assume_dense: Optional[bool] = None) -> Union[SpectralMap, Failure]:
    """
    Min B -> Min A, P -> P meet A, for a dense pair.

    Returns a Failure when the pair is not dense or a contraction of a
    minimal prime is not minimal.
    """
    is_dense_pair = dense(pair) if assume_dense is None else assume_dense
    if not is_dense_pair:
        return Failure("subring is not dense", {})
    spec_a, spec_b = _spaces(pair, cap, spaces)
    min_a = spec_a.minimal_mask
    min_b = spec_b.minimal_mask
    source = subspace(spec_b, min_b, name=f"Min {pair.ambient.name}")
    target = subspace(spec_a, min_a, name=f"Min {pair.ring.name}")
    local = {orig: i for i, orig in enumerate(bits(min_a))}
    index = {point_mask(p): i for i, p in enumerate(spec_a.points)}

    table = []
    for p in bits(min_b):
        prime = point_mask(spec_b.points[p])
        contracted = index[pair.restrict_mask(prime)]
        if contracted not in local:
            return Failure(
                "contraction of a minimal prime is not minimal",
                {"prime": bits(prime)},
            )
        table.append(local[contracted])
    return SpectralMap(source, target, tuple(table), name="theta")


def _maximal_contractions(pair: SubringPair, cap: int) -> List[int]:
    return [pair.restrict_mask(m.members) for m in maximal_spectrum(pair.ambient, cap)]


def weak_cn_wrt(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """
    Distinct maximal ideals of B whose contractions are incomparable have
    contractions lying under no common prime of A.
    """
    primes_a = [p.members for p in spectrum(pair.ring, cap)]
    contracted = _maximal_contractions(pair, cap)
    for c, d in itertools.combinations(contracted, 2):
        if is_subset(c, d) or is_subset(d, c):
            continue
        if any(is_subset(c, p) and is_subset(d, p) for p in primes_a):
            return False
    return True


def comaximal_contractions(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Contractions of distinct maximal ideals of B generate A."""
    ring = pair.ring
    contracted = _maximal_contractions(pair, cap)
    for c, d in itertools.combinations(contracted, 2):
        total = mask_from(ring.add_rows[x][y] for x in bits(c) for y in bits(d))
        if total != ring.full_mask:
            return False
    return True


def contractions_incomparable(pair: SubringPair, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    contracted = _maximal_contractions(pair, cap)
    return all(
        not is_subset(c, d) and not is_subset(d, c)
        for c, d in itertools.combinations(contracted, 2)
    )


@dataclass(frozen=True)
class CvuResult:
    """
    The set (c : v) = {r in B : r v in A} for u in A invertible in B.

    ``members`` is in ambient numbering.
    """

    u: int
    v: int
    members: int
    is_subset: bool
    is_ideal: bool
    nonzero: bool

    def elements(self) -> List[int]:
        return bits(self.members)


def cvu_set(pair: SubringPair, u: int, v: int) -> CvuResult:
    """
    Build (c : v) for u in A with inverse v in B.

    Raises:
        DensityError: If u is not in A or u v is not one
    """
    ring = pair.ambient
    if not pair.contains(u):
        raise DensityError(f"{u} is not an element of the subring")
    if ring.mul_rows[u][v] != ring.one:
        raise DensityError(f"{v} is not an inverse of {u}")

    members = mask_from(r for r in range(ring.size) if pair.contains(ring.mul_rows[r][v]))
    inside = is_subset(members, pair.member)
    as_ideal = inside and _is_ideal_mask(pair.ring, pair.restrict_mask(members))
    return CvuResult(
        u=u,
        v=v,
        members=members,
        is_subset=inside,
        is_ideal=as_ideal,
        nonzero=members != 1 << ring.zero,
    )

