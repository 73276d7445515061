"""
Finite spectral spaces, spectral maps and poset enumeration.

A finite T0 space is the same thing as a finite poset with the Alexandrov
topology: the closure of a point is its up-set, closed sets are up-sets
and open sets are down-sets. For Spec of a ring the order is inclusion of
primes, so ``x <= y`` means y lies in the closure of x.

``SpectralSpace`` stores, for every point i, the bit set ``up[i]`` of
points above it (itself included) and derives ``down`` from it.

Continuity, openness and closedness of a map only need checking on the
principal down-sets and up-sets, since every open set is a union of
principal down-sets, every closed set a union of principal up-sets, and
images commute with unions.
"""

import itertools
import logging
from dataclasses import asdict, dataclass
from functools import cached_property, lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .ideals import (
    DEFAULT_LATTICE_CAP,
    Ideal,
    jacobson,
    maximal_spectrum,
    prime_masks,
)
from .rings import FiniteRing
from .utils import Failure, bits, iter_bits, is_subset, mask_from, popcount
from .validation import CapValidator

logger = logging.getLogger(__name__)

# Labeled posets on 0..6 points
KNOWN_POSET_COUNTS = (1, 1, 3, 19, 219, 4231, 130023)

DEFAULT_CN_CAP = 12
EXHAUSTIVE_CAP = 6


class TopologyError(Exception):
    """Raised when a space or map is malformed."""
    pass


class TopologyInvariantError(Exception):
    """Raised when two computations of the same map property disagree."""
    pass


@dataclass(frozen=True, eq=False)
class SpectralSpace:
    """
    A finite spectral space, stored through its specialization order.

    Attributes:
        points: Point labels (prime ideals for ring spectra, ints for posets)
        up: up[i] is the bit set of j with i <= j
        name: Display name
        ring: The ring this is the spectrum of, if any
    """

    points: Tuple[Any, ...]
    up: Tuple[int, ...]
    name: str = "X"
    ring: Optional[FiniteRing] = None

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "up", tuple(int(u) for u in self.up))
        n = len(self.points)
        if len(self.up) != n:
            raise TopologyError(f"{n} points but {len(self.up)} up-sets")
        full = (1 << n) - 1
        for i, u in enumerate(self.up):
            if u & ~full:
                raise TopologyError(f"up-set of point {i} mentions unknown points")
            if not u >> i & 1:
                raise TopologyError(f"order is not reflexive at point {i}")
            for j in iter_bits(u):
                if j != i and self.up[j] >> i & 1:
                    raise TopologyError(f"order is not antisymmetric at ({i}, {j})")
                if not is_subset(self.up[j], u):
                    raise TopologyError(f"order is not transitive at ({i}, {j})")

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def down(self) -> Tuple[int, ...]:
        return tuple(
            mask_from(i for i in range(self.size) if self.up[i] >> j & 1)
            for j in range(self.size)
        )

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.down[i]
        return out

    def is_closed(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def is_open(self, mask: int) -> bool:
        return self.down_closure(mask) == mask

    @cached_property
    def maximal_mask(self) -> int:
        return mask_from(i for i in range(self.size) if self.up[i] == 1 << i)

    @cached_property
    def minimal_mask(self) -> int:
        return mask_from(i for i in range(self.size) if self.down[i] == 1 << i)

    def relations(self) -> List[Tuple[int, int]]:
        """Strict relations (i, j) with i < j, in lexicographic order."""
        return [(i, j) for i in range(self.size) for j in iter_bits(self.up[i]) if j != i]

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.relations())
        return graph

    def index_of(self, point: Any) -> int:
        try:
            return self.points.index(point)
        except ValueError:
            raise TopologyError(f"{point!r} is not a point of {self.name}")

    def __repr__(self) -> str:
        return f"SpectralSpace({self.name}, size={self.size})"


def point_mask(point: Any) -> int:
    """Member bit set of a spectrum point, which is an Ideal or already a bit set."""
    return point.members if isinstance(point, Ideal) else int(point)


def closure(s: SpectralSpace, pts: int) -> int:
    """Smallest closed set containing pts."""
    return s.closure(pts)


def poset_from_relations(n: int, relations: Sequence[Tuple[int, int]], name: str = "P") -> SpectralSpace:
    """
    Build a poset on 0..n-1 from strict relations, closing them transitively.

    Raises:
        TopologyError: If the relations contain a cycle or a self-loop
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    for i, j in relations:
        if not (0 <= i < n and 0 <= j < n):
            raise TopologyError(f"relation ({i}, {j}) mentions a point outside 0..{n - 1}")
        graph.add_edge(i, j)
    if nx.number_of_selfloops(graph) or not nx.is_directed_acyclic_graph(graph):
        raise TopologyError("relations are not antisymmetric")
    closed = nx.transitive_closure_dag(graph)
    up = [mask_from([i, *closed.successors(i)]) for i in range(n)]
    return SpectralSpace(tuple(range(n)), tuple(up), name=name)


def chain_poset(n: int) -> SpectralSpace:
    return poset_from_relations(n, [(i, i + 1) for i in range(n - 1)], name=f"C{n}")


def antichain_poset(n: int) -> SpectralSpace:
    return poset_from_relations(n, [], name=f"A{n}")


def v_poset() -> SpectralSpace:
    """One point below two incomparable maxima."""
    return poset_from_relations(3, [(0, 1), (0, 2)], name="V")


def lambda_poset() -> SpectralSpace:
    """Two incomparable points below one maximum."""
    return poset_from_relations(3, [(0, 2), (1, 2)], name="Lambda")


@lru_cache(maxsize=256)
def _ring_space(ring: FiniteRing) -> SpectralSpace:
    masks = prime_masks(ring, ring.size)
    up = [mask_from(j for j, q in enumerate(masks) if is_subset(p, q)) for p in masks]
    return SpectralSpace(
        tuple(Ideal(ring, m) for m in masks),
        tuple(up),
        name=f"Spec {ring.name}",
        ring=ring,
    )


def space_from_ring(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> SpectralSpace:
    """Spec of a ring with its Zariski topology. The same object is returned for the same ring."""
    CapValidator.check("ideal lattice", ring.size, cap)
    return _ring_space(ring)


def subspace(s: SpectralSpace, mask: int, name: Optional[str] = None) -> SpectralSpace:
    """Subspace on the selected points, numbered in ascending original order."""
    keep = bits(mask)
    local = {orig: i for i, orig in enumerate(keep)}
    up = [mask_from(local[j] for j in iter_bits(s.up[i] & mask)) for i in keep]
    return SpectralSpace(
        tuple(s.points[i] for i in keep),
        tuple(up),
        name=name or f"{s.name}|{keep}",
        ring=s.ring,
    )


def maximal_points(s: SpectralSpace) -> int:
    return s.maximal_mask


def minimal_points(s: SpectralSpace) -> int:
    return s.minimal_mask


def down_closure(s: SpectralSpace, pts: int) -> int:
    return s.down_closure(pts)


def is_open(s: SpectralSpace, pts: int) -> bool:
    return s.is_open(pts)


def is_closed(s: SpectralSpace, pts: int) -> bool:
    return s.is_closed(pts)


def basic_open(s: SpectralSpace, f: int) -> int:
    """D(f): primes of the underlying ring not containing f."""
    if s.ring is None:
        raise TopologyError(f"{s.name} is not the spectrum of a ring")
    return mask_from(i for i, p in enumerate(s.points) if f not in p)


def basic_closed(s: SpectralSpace, f: int) -> int:
    """V(f): primes of the underlying ring containing f."""
    return s.full_mask & ~basic_open(s, f)


# Maps


@dataclass(frozen=True, eq=False)
class SpectralMap:
    """
    A map of finite spaces given by its table.

    Attributes:
        source: Domain space
        target: Codomain space
        table: table[i] is the target index of source point i
        name: Display name
    """

    source: SpectralSpace
    target: SpectralSpace
    table: Tuple[int, ...]
    name: str = "f"

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.source.size:
            raise TopologyError(
                f"map table has {len(table)} entries, source has {self.source.size} points"
            )
        if any(v < 0 or v >= self.target.size for v in table):
            raise TopologyError("map table has entries outside the target")

    def image_mask(self, mask: Optional[int] = None) -> int:
        source = range(self.source.size) if mask is None else iter_bits(mask)
        return mask_from(self.table[i] for i in source)

    def preimage_mask(self, mask: int) -> int:
        return mask_from(i for i, j in enumerate(self.table) if mask >> j & 1)


def identity_map(s: SpectralSpace) -> SpectralMap:
    return SpectralMap(s, s, tuple(range(s.size)), name="id")


def inclusion(s: SpectralSpace, mask: int) -> SpectralMap:
    """Inclusion of the subspace on mask into s."""
    sub = subspace(s, mask)
    return SpectralMap(sub, s, tuple(bits(mask)), name="incl")


@dataclass(frozen=True)
class MapProperties:
    """
    Topological properties of a finite map.

    ``open`` is openness onto the image with its subspace topology, which
    is the notion that makes embeddings exactly the injective, continuous,
    open maps. ``closed`` is closedness into the whole target.
    """

    continuous: bool
    continuous_order: bool
    open: bool
    open_in_target: bool
    closed: bool
    closed_onto_image: bool
    injective: bool
    surjective: bool
    dense_image: bool
    embedding: bool
    homeomorphism: bool

    def to_dict(self) -> Dict[str, bool]:
        return asdict(self)


def map_props(m: SpectralMap) -> MapProperties:
    """Compute every property of a map from its principal down- and up-sets."""
    src, tgt, f = m.source, m.target, m.table
    image = m.image_mask()

    continuous = all(src.is_open(m.preimage_mask(tgt.down[j])) for j in range(tgt.size))
    continuous_order = all(
        tgt.leq(f[i], f[k]) for i in range(src.size) for k in iter_bits(src.up[i])
    )
    if continuous != continuous_order:
        raise TopologyInvariantError(
            f"continuity tests disagree on {m.name}: preimage={continuous} order={continuous_order}"
        )

    open_rel = open_tgt = closed_tgt = closed_img = True
    for i in range(src.size):
        opened = m.image_mask(src.down[i])
        for y in iter_bits(opened):
            if not is_subset(tgt.down[y] & image, opened):
                open_rel = False
            if not is_subset(tgt.down[y], opened):
                open_tgt = False
        shut = m.image_mask(src.up[i])
        for y in iter_bits(shut):
            if not is_subset(tgt.up[y], shut):
                closed_tgt = False
            if not is_subset(tgt.up[y] & image, shut):
                closed_img = False

    injective = len(set(f)) == len(f)
    surjective = image == tgt.full_mask
    dense_image = tgt.closure(image) == tgt.full_mask
    embedding = injective and continuous and open_rel

    return MapProperties(
        continuous=continuous,
        continuous_order=continuous_order,
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


# Predicates


def is_pm(s: SpectralSpace) -> bool:
    """Every point lies below exactly one maximal point."""
    maxima = s.maximal_mask
    return all(popcount(s.up[i] & maxima) == 1 for i in range(s.size))


def mu_retraction(s: SpectralSpace) -> Union[SpectralMap, Failure]:
    """
    The map sending each point to the unique maximal point above it.

    Returns:
        The retraction onto the maximal subspace, or a Failure naming a
        point with zero or several maximal points above it, or a Failure
        when the map is not a continuous retraction.
    """
    maxima = s.maximal_mask
    target = subspace(s, maxima, name=f"Max {s.name}")
    local = {orig: i for i, orig in enumerate(bits(maxima))}
    table = []
    for i in range(s.size):
        above = bits(s.up[i] & maxima)
        if len(above) != 1:
            return Failure(
                "point is not below exactly one maximal point",
                {"point": i, "maximal_above": above},
            )
        table.append(local[above[0]])

    retraction = SpectralMap(s, target, tuple(table), name="mu")
    if not map_props(retraction).continuous:
        return Failure("maximal-point map is not continuous", {"table": table})
    if any(table[orig] != loc for orig, loc in local.items()):
        return Failure("maximal-point map moves a maximal point", {"table": table})
    return retraction


def retractions(s: SpectralSpace, cap: int = 8) -> List[SpectralMap]:
    """All continuous retractions of s onto its maximal subspace."""
    CapValidator.check("poset", s.size, cap)
    maxima = bits(s.maximal_mask)
    target = subspace(s, s.maximal_mask, name=f"Max {s.name}")
    local = {orig: i for i, orig in enumerate(maxima)}
    movable = [i for i in range(s.size) if i not in local]

    found = []
    for choice in itertools.product(range(len(maxima)), repeat=len(movable)):
        table = [0] * s.size
        for orig, loc in local.items():
            table[orig] = loc
        for point, loc in zip(movable, choice):
            table[point] = loc
        candidate = SpectralMap(s, target, tuple(table), name="r")
        if map_props(candidate).continuous:
            found.append(candidate)
    return found


def pm_closed_downsets(s: SpectralSpace) -> bool:
    """Every maximal point has a closed down-set."""
    return all(s.is_closed(s.down[m]) for m in iter_bits(s.maximal_mask))


def is_normal_topological(s: SpectralSpace, cap: int = DEFAULT_CN_CAP) -> bool:
    """
    Disjoint closed sets have disjoint open neighbourhoods.

    The smallest open neighbourhood of a closed set F is its down-closure,
    and a common point below F and G already lies below up(f) and up(g)
    for some f in F and g in G. So only principal up-sets are tested.
    """
    CapValidator.check("space", s.size, cap)
    for f in range(s.size):
        for g in range(f + 1, s.size):
            if s.up[f] & s.up[g]:
                continue
            if s.down_closure(s.up[f]) & s.down_closure(s.up[g]):
                return False
    return True


def is_completely_normal_topological(s: SpectralSpace, cap: int = DEFAULT_CN_CAP) -> bool:
    """
    Separated sets have disjoint open neighbourhoods.

    If x lies below s in S and t in T with S, T separated, then s and t are
    incomparable and {s}, {t} are separated too. So it is enough that
    incomparable points have no common lower bound.
    """
    CapValidator.check("space", s.size, cap)
    for i in range(s.size):
        for j in range(i + 1, s.size):
            if not s.comparable(i, j) and s.down[i] & s.down[j]:
                return False
    return True


def _closed_sets(s: SpectralSpace) -> List[int]:
    return [mask for mask in range(1 << s.size) if s.is_closed(mask)]


def _hull(mask: int, family: Sequence[int], full: int) -> int:
    out = full
    for member in family:
        if is_subset(mask, member):
            out &= member
    return out


def is_normal_exhaustive(s: SpectralSpace, cap: int = EXHAUSTIVE_CAP) -> bool:
    """Normality tested over every pair of closed sets, using the smallest open set around each."""
    CapValidator.check("space", s.size, cap)
    closed_sets = _closed_sets(s)
    open_sets = [s.full_mask & ~c for c in closed_sets]
    around = {f: _hull(f, open_sets, s.full_mask) for f in closed_sets}
    for f in closed_sets:
        for g in closed_sets:
            if not f & g and around[f] & around[g]:
                return False
    return True


def is_completely_normal_exhaustive(s: SpectralSpace, cap: int = EXHAUSTIVE_CAP) -> bool:
    """Complete normality tested over every pair of separated subsets."""
    CapValidator.check("space", s.size, cap)
    closed_sets = _closed_sets(s)
    open_sets = [s.full_mask & ~c for c in closed_sets]
    subsets = range(1 << s.size)
    cl = [_hull(a, closed_sets, s.full_mask) for a in subsets]
    around = [_hull(a, open_sets, s.full_mask) for a in subsets]
    for a in subsets:
        for b in subsets:
            if cl[a] & b or a & cl[b]:
                continue
            if around[a] & around[b]:
                return False
    return True


def is_cn_chain(s: SpectralSpace) -> bool:
    """Every point's closure is a chain."""
    for i in range(s.size):
        above = bits(s.up[i])
        for a, b in itertools.combinations(above, 2):
            if not s.comparable(a, b):
                return False
    return True


def is_weak_cn(s: SpectralSpace) -> bool:
    """Incomparable points have disjoint closures."""
    for i in range(s.size):
        for j in range(i + 1, s.size):
            if not s.comparable(i, j) and s.up[i] & s.up[j]:
                return False
    return True


def no_incomparable_below_maximal(s: SpectralSpace) -> bool:
    """No maximal point has two incomparable points below it."""
    for m in iter_bits(s.maximal_mask):
        below = bits(s.down[m])
        for a, b in itertools.combinations(below, 2):
            if not s.comparable(a, b):
                return False
    return True


def max_is_t2(space_or_ring: Union[SpectralSpace, FiniteRing], cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """The maximal subspace is Hausdorff."""
    s = space_or_ring if isinstance(space_or_ring, SpectralSpace) else space_from_ring(space_or_ring, cap)
    sub = subspace(s, s.maximal_mask)
    for i in range(sub.size):
        for j in range(i + 1, sub.size):
            if sub.down[i] & sub.down[j]:
                return False
    return True


def maximal_separation_criterion(ring: FiniteRing, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """
    Distinct maximal ideals M, M' admit a outside M and a' outside M' with
    a a' in the Jacobson radical.
    """
    maxima = maximal_spectrum(ring, cap)
    jac = jacobson(ring, cap).members
    for m, n in itertools.combinations(maxima, 2):
        outside_m = [a for a in range(ring.size) if a not in m]
        outside_n = [b for b in range(ring.size) if b not in n]
        if not any(jac >> ring.mul_rows[a][b] & 1 for a in outside_m for b in outside_n):
            return False
    return True


# Enumeration


def _down_sets(up: Sequence[int], n: int) -> List[int]:
    down = [mask_from(i for i in range(n) if up[i] >> j & 1) for j in range(n)]
    return [m for m in range(1 << n) if all(is_subset(down[i], m) for i in iter_bits(m))]


def _up_sets(up: Sequence[int], n: int) -> List[int]:
    return [m for m in range(1 << n) if all(is_subset(up[i], m) for i in iter_bits(m))]


def _extend(up: Tuple[int, ...], n: int) -> Iterator[Tuple[int, ...]]:
    """All posets on n+1 points restricting to ``up`` on the first n."""
    new_bit = 1 << n
    ups = _up_sets(up, n)
    for below in _down_sets(up, n):
        allowed = (1 << n) - 1
        for d in iter_bits(below):
            allowed &= up[d] & ~(1 << d)
        for above in ups:
            if above & below or not is_subset(above, allowed):
                continue
            grown = [u | new_bit if below >> i & 1 else u for i, u in enumerate(up)]
            grown.append(new_bit | above)
            yield tuple(grown)


def enumerate_posets(n: int, cap: int = EXHAUSTIVE_CAP) -> Iterator[SpectralSpace]:
    """
    Every labeled partial order on 0..n-1, each exactly once.

    Point k is added to a poset on 0..k-1 by choosing its strict down-set D
    (a down-set) and strict up-set U (an up-set) with every element of D
    below every element of U.

    Raises:
        CapExceededError: If n > cap
    """
    CapValidator.check("poset", n, cap)
    if n < 0:
        raise TopologyError("poset size must be non-negative")

    def grow(up: Tuple[int, ...], k: int) -> Iterator[Tuple[int, ...]]:
        if k == n:
            yield up
            return
        for extended in _extend(up, k):
            yield from grow(extended, k + 1)

    count = 0
    for count, up in enumerate(grow((), 0), start=1):
        yield SpectralSpace(tuple(range(n)), up, name=f"P{n}#{count - 1}")
    logger.debug("Enumerated %d labeled posets on %d points", count, n)


def isomorphic_posets(a: SpectralSpace, b: SpectralSpace) -> bool:
    return a.size == b.size and nx.is_isomorphic(a.to_digraph(), b.to_digraph())
