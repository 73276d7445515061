"""
Claim catalog and checker.

Every claim is a function of one instance and a toolkit. It states its
hypothesis, returns ``inapplicable`` when the hypothesis fails, and
otherwise checks the conclusion. ``check_claim`` runs the function with
``FastToolkit``; a refutation is then replayed with ``DirectToolkit`` and
only reported if the brute-force primitives refute it too.

Instances are rings, subring pairs, nested triples (inner subring of a
middle subring of an ambient ring), ring homomorphisms, posets and maps
of posets.

Element lists in witnesses are always in the numbering of the largest
ring involved, so they can be checked against the ring file directly.
"""

import dataclasses
import enum
import itertools
import logging
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Tuple

from .config import Limits
from .density import lambda_map, theta_map
from .rings import FiniteRing, RingError, RingHom, SubringPair
from .topology import SpectralMap, SpectralSpace, point_mask
from .toolkits import DirectToolkit, FastToolkit
from .utils import Failure, bits, is_subset
from .validation import CapExceededError

logger = logging.getLogger(__name__)


class ClaimError(Exception):
    """Raised when a claim cannot be checked on an instance."""
    pass


class UnknownClaimError(ClaimError):
    """Raised for a claim id missing from the catalog."""
    pass


class VerdictStatus(str, enum.Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    INAPPLICABLE = "inapplicable"


@dataclass
class Verdict:
    """
    Outcome of one claim on one instance.

    Attributes:
        claim_id: Catalog id
        status: verified, refuted or inapplicable
        witness: Re-checkable data for a refutation
        note: Why the claim did not apply, when it did not
        details: Computed values the verdict rests on
        elapsed_ms: Wall time of the check
    """

    claim_id: str
    status: VerdictStatus
    witness: Optional[Dict[str, Any]] = None
    note: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: Optional[float] = None

    @property
    def refuted(self) -> bool:
        return self.status is VerdictStatus.REFUTED

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "claim": self.claim_id,
            "status": self.status.value,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        if self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _verified(**details) -> Verdict:
    return Verdict("", VerdictStatus.VERIFIED, details=details)


def _refuted(witness: Dict[str, Any], **details) -> Verdict:
    return Verdict("", VerdictStatus.REFUTED, witness=witness, details=details)


def _inapplicable(note: str, **details) -> Verdict:
    return Verdict("", VerdictStatus.INAPPLICABLE, note=note, details=details)


class InstanceKind(str, enum.Enum):
    RING = "ring"
    PAIR = "pair"
    TRIPLE = "triple"
    HOM = "hom"
    POSET = "poset"
    MAP = "map"


@dataclass(frozen=True, eq=False)
class NestedTriple:
    """
    Subrings inner of middle of ambient, both given as ambient bit sets.
    """

    ambient: FiniteRing
    middle: int
    inner: int

    def __post_init__(self):
        if not is_subset(self.inner, self.middle):
            raise RingError("inner subring is not contained in the middle one")

    @cached_property
    def middle_pair(self) -> SubringPair:
        return SubringPair(self.ambient, self.middle)

    @cached_property
    def inner_pair(self) -> SubringPair:
        return SubringPair(self.ambient, self.inner)

    @cached_property
    def inner_in_middle(self) -> SubringPair:
        outer = self.middle_pair
        return SubringPair(outer.ring, outer.restrict_mask(self.inner))


def instance_kind(instance: Any) -> InstanceKind:
    if isinstance(instance, FiniteRing):
        return InstanceKind.RING
    if isinstance(instance, SubringPair):
        return InstanceKind.PAIR
    if isinstance(instance, NestedTriple):
        return InstanceKind.TRIPLE
    if isinstance(instance, RingHom):
        return InstanceKind.HOM
    if isinstance(instance, SpectralSpace):
        return InstanceKind.POSET
    if isinstance(instance, SpectralMap):
        return InstanceKind.MAP
    raise ClaimError(f"unsupported instance type {type(instance).__name__}")


@dataclass(frozen=True)
class ClaimInstance:
    claim_id: str
    instance: Any

    @property
    def kind(self) -> InstanceKind:
        return instance_kind(self.instance)


@dataclass(frozen=True)
class Claim:
    """
    A catalog entry.

    ``consistency`` marks claims that compare two ways of computing the
    same notion rather than state a theorem.
    """

    claim_id: str
    title: str
    kinds: Tuple[InstanceKind, ...]
    check: Callable[[Any, FastToolkit], Verdict]
    consistency: bool = False


CATALOG: Dict[str, Claim] = {}


def _claim(claim_id: str, title: str, *kinds: InstanceKind, consistency: bool = False):
    def register(check: Callable[[Any, FastToolkit], Verdict]):
        CATALOG[claim_id] = Claim(claim_id, title, tuple(kinds), check, consistency)
        return check
    return register


class _PairView:
    """Both spectra of a pair and the contraction between them, for one toolkit."""

    def __init__(self, pair: SubringPair, kit: FastToolkit):
        self.pair = pair
        self.kit = kit
        self.spec_a = kit.space(pair.ring)
        self.spec_b = kit.space(pair.ambient)
        index = {point_mask(p): i for i, p in enumerate(self.spec_a.points)}
        try:
            self.contracted = [
                index[pair.restrict_mask(point_mask(p))] for p in self.spec_b.points
            ]
        except KeyError:
            raise ClaimError(f"a contraction in {pair} is not a prime of the subring")

    def b_elements(self, i: int) -> List[int]:
        return bits(point_mask(self.spec_b.points[i]))

    def a_elements(self, j: int) -> List[int]:
        return bits(self.pair.extend_mask(point_mask(self.spec_a.points[j])))

    @property
    def maximal_b(self) -> List[int]:
        return bits(self.spec_b.maximal_mask)

    def istar(self) -> SpectralMap:
        return SpectralMap(self.spec_b, self.spec_a, tuple(self.contracted), name="i*")

    def lam(self):
        return lambda_map(self.pair, spaces=(self.spec_a, self.spec_b))

    def theta(self, is_dense: bool):
        return theta_map(self.pair, spaces=(self.spec_a, self.spec_b), assume_dense=is_dense)

    def weak_cn_wrt(self) -> Optional[Dict[str, Any]]:
        """None when the pair is weakly CN; otherwise the offending maximal ideals."""
        for m, n in itertools.combinations(self.maximal_b, 2):
            c, d = self.contracted[m], self.contracted[n]
            if self.spec_a.comparable(c, d):
                continue
            if self.spec_a.up[c] & self.spec_a.up[d]:
                return {"maximal": [self.b_elements(m), self.b_elements(n)]}
        return None

    def contractions_incomparable(self) -> Optional[Dict[str, Any]]:
        for m, n in itertools.combinations(self.maximal_b, 2):
            if self.spec_a.comparable(self.contracted[m], self.contracted[n]):
                return {"maximal": [self.b_elements(m), self.b_elements(n)]}
        return None


def _dense_pair_view(pair: SubringPair, kit: FastToolkit) -> Optional[_PairView]:
    return _PairView(pair, kit) if kit.dense(pair) else None


def _is_homeomorphism(kit: FastToolkit, m) -> Tuple[bool, Dict[str, Any]]:
    if isinstance(m, Failure):
        return False, {"failure": m.to_dict()}
    props = kit.map_props(m)
    return props.homeomorphism, {"map": list(m.table), "properties": props.to_dict()}


# Pair claims


@_claim("C1", "dense subring: contraction of primes is injective", InstanceKind.PAIR)
def _check_contraction_injective(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    first: Dict[int, int] = {}
    for i, c in enumerate(view.contracted):
        if c in first:
            return _refuted({
                "primes": [view.b_elements(first[c]), view.b_elements(i)],
                "contraction": view.a_elements(c),
            })
        first[c] = i
    return _verified(primes=len(view.contracted))


@_claim("C2", "dense subring: incomparable primes contract to incomparable primes", InstanceKind.PAIR)
def _check_incomparable_preserved(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    spec_b, spec_a = view.spec_b, view.spec_a
    incomparable = [
        (i, j) for i, j in itertools.combinations(range(spec_b.size), 2)
        if not spec_b.comparable(i, j)
    ]
    if not incomparable:
        return _inapplicable("fewer than two incomparable primes")
    for i, j in incomparable:
        if spec_a.comparable(view.contracted[i], view.contracted[j]):
            return _refuted({
                "primes": [view.b_elements(i), view.b_elements(j)],
                "contractions": [view.a_elements(view.contracted[i]), view.a_elements(view.contracted[j])],
            })
    return _verified(pairs=len(incomparable))


@_claim("C3", "dense subring: inclusion of contractions reflects inclusion of primes", InstanceKind.PAIR)
def _check_order_reflected(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    if view.spec_b.size < 2:
        return _inapplicable("fewer than two primes")
    for i, j in itertools.permutations(range(view.spec_b.size), 2):
        if view.spec_a.leq(view.contracted[i], view.contracted[j]) and not view.spec_b.leq(i, j):
            return _refuted({"primes": [view.b_elements(i), view.b_elements(j)]})
    return _verified()


@_claim("C4", "dense subring: contraction is a bijection of minimal primes", InstanceKind.PAIR)
def _check_minimal_bijection(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    min_a = set(bits(view.spec_a.minimal_mask))
    images: Dict[int, int] = {}
    for i in bits(view.spec_b.minimal_mask):
        c = view.contracted[i]
        if c not in min_a:
            return _refuted({"reason": "contraction not minimal", "prime": view.b_elements(i)})
        if c in images:
            return _refuted({
                "reason": "two minimal primes share a contraction",
                "primes": [view.b_elements(images[c]), view.b_elements(i)],
            })
        images[c] = i
    missed = sorted(min_a - set(images))
    if missed:
        return _refuted({"reason": "minimal prime not hit", "prime": view.a_elements(missed[0])})
    return _verified(minimal_primes=len(images))


@_claim("C5", "dense pm subring: no prime lies under two contracted maximal ideals", InstanceKind.PAIR)
def _check_no_prime_under_two_maximals(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    if not kit.is_pm(view.spec_b):
        return _inapplicable("ambient ring is not pm")
    maxima = view.maximal_b
    if len(maxima) < 2:
        return _inapplicable("fewer than two maximal ideals")
    spec_a = view.spec_a
    for m, n in itertools.combinations(maxima, 2):
        below = point_mask(spec_a.points[view.contracted[m]]) & point_mask(spec_a.points[view.contracted[n]])
        for q in range(spec_a.size):
            if is_subset(point_mask(spec_a.points[q]), below):
                return _refuted({
                    "maximal": [view.b_elements(m), view.b_elements(n)],
                    "prime": view.a_elements(q),
                })
    return _verified()


@_claim("C6", "dense iff contraction is injective and open onto its image", InstanceKind.PAIR)
def _check_dense_iff_injective_open(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    is_dense = kit.dense(pair)
    props = kit.map_props(view.istar())
    rhs = props.injective and props.open
    values = {"dense": is_dense, "injective": props.injective, "open": props.open}
    if is_dense != rhs:
        return _refuted(values)
    return _verified(**values)


@_claim("C7", "dense iff contraction is an embedding with dense image", InstanceKind.PAIR)
def _check_dense_iff_dense_embedding(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    is_dense = kit.dense(pair)
    props = kit.map_props(view.istar())
    rhs = props.embedding and props.dense_image
    values = {"dense": is_dense, "embedding": props.embedding, "dense_image": props.dense_image}
    if is_dense != rhs:
        return _refuted(values)
    return _verified(**values)


@_claim("C8", "dense subring: a contracted maximal ideal is not strictly below a contracted prime", InstanceKind.PAIR)
def _check_maximal_contraction_top(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    for m in view.maximal_b:
        for p in range(view.spec_b.size):
            c, d = view.contracted[m], view.contracted[p]
            if c != d and view.spec_a.leq(c, d):
                return _refuted({"maximal": view.b_elements(m), "prime": view.b_elements(p)})
    return _verified()


@_claim("C11", "comaximal contractions: contractions incomparable and pair weakly CN", InstanceKind.PAIR)
def _check_comaximal_consequences(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    if len(view.maximal_b) < 2:
        return _inapplicable("fewer than two maximal ideals")
    if not kit.comaximal(pair):
        return _inapplicable("contractions of maximal ideals are not comaximal")
    clash = view.contractions_incomparable()
    if clash is not None:
        return _refuted({"reason": "comparable contractions", **clash})
    weak = view.weak_cn_wrt()
    if weak is not None:
        return _refuted({"reason": "pair is not weakly CN", **weak})
    return _verified()


@_claim("C12", "dense and weakly CN pair: contractions of maximal ideals are comaximal", InstanceKind.PAIR)
def _check_dense_weak_cn_comaximal(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    if len(view.maximal_b) < 2:
        return _inapplicable("fewer than two maximal ideals")
    if view.weak_cn_wrt() is not None:
        return _inapplicable("pair is not weakly CN")
    if not kit.comaximal(pair):
        return _refuted({"reason": "contractions of maximal ideals are not comaximal"})
    return _verified()


@_claim("C13", "dense subring with CN spectrum: ambient spectrum is CN and pm", InstanceKind.PAIR)
def _check_cn_lifts(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    if not kit.is_cn(view.spec_a):
        return _inapplicable("subring spectrum is not CN")
    cn_b, pm_b = kit.is_cn(view.spec_b), kit.is_pm(view.spec_b)
    if not (cn_b and pm_b):
        return _refuted({"ambient_cn": cn_b, "ambient_pm": pm_b})
    return _verified()


@_claim("C14", "pm, dense and weakly CN: the maximal-ideal map is a homeomorphism", InstanceKind.PAIR)
def _check_lambda_homeomorphism(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    if not kit.is_pm(view.spec_a):
        return _inapplicable("subring is not pm")
    if not kit.dense(pair):
        return _inapplicable("subring is not dense")
    if view.weak_cn_wrt() is not None:
        return _inapplicable("pair is not weakly CN")
    ok, evidence = _is_homeomorphism(kit, view.lam())
    if not ok:
        return _refuted(evidence)
    return _verified()


@_claim("C15", "dense subring: contraction of minimal primes is a homeomorphism", InstanceKind.PAIR)
def _check_theta_homeomorphism(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    ok, evidence = _is_homeomorphism(kit, view.theta(True))
    if not ok:
        return _refuted(evidence)
    return _verified()


@_claim("C18", "pm subring: the maximal-ideal map is continuous, closed, onto; homeomorphism iff comaximal",
        InstanceKind.PAIR)
def _check_lambda_properties(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    if not kit.is_pm(view.spec_a):
        return _inapplicable("subring is not pm")
    lam = view.lam()
    if isinstance(lam, Failure):
        return _refuted({"failure": lam.to_dict()})
    props = kit.map_props(lam)
    if not (props.continuous and props.closed and props.surjective):
        return _refuted({"properties": props.to_dict()})
    comaximal = kit.comaximal(pair)
    if props.homeomorphism != comaximal:
        return _refuted({"homeomorphism": props.homeomorphism, "comaximal": comaximal})
    return _verified(homeomorphism=props.homeomorphism)


@_claim("C23", "dense subring: (c : v) is a nonzero ideal of the subring for every unit", InstanceKind.PAIR)
def _check_cvu_sets(pair: SubringPair, kit: FastToolkit) -> Verdict:
    if not kit.dense(pair):
        return _inapplicable("subring is not dense")
    ring = pair.ambient
    checked = 0
    for u in pair.to_ambient:
        for v in range(ring.size):
            if ring.times(u, v) != ring.one:
                continue
            inside, as_ideal, nonzero = kit.cvu(pair, u, v)
            checked += 1
            if not (inside and as_ideal and nonzero):
                return _refuted({
                    "u": u, "v": v,
                    "is_subset": inside, "is_ideal": as_ideal, "nonzero": nonzero,
                })
    return _verified(units=checked)


@_claim("C24", "every prime of the subring contains the contraction of some prime", InstanceKind.PAIR)
def _check_prime_below(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _PairView(pair, kit)
    for q in range(view.spec_a.size):
        if not any(view.spec_a.leq(c, q) for c in view.contracted):
            return _refuted({"prime": view.a_elements(q)})
    return _verified()


@_claim("C25", "dense subring with CN spectrum: the maximal-ideal map is a homeomorphism", InstanceKind.PAIR)
def _check_lambda_homeomorphism_cn(pair: SubringPair, kit: FastToolkit) -> Verdict:
    view = _dense_pair_view(pair, kit)
    if view is None:
        return _inapplicable("subring is not dense")
    if not kit.is_cn(view.spec_a):
        return _inapplicable("subring spectrum is not CN")
    ok, evidence = _is_homeomorphism(kit, view.lam())
    if not ok:
        return _refuted(evidence)
    return _verified()


# Triple claims


@_claim("C9", "density is transitive", InstanceKind.TRIPLE)
def _check_density_transitive(triple: NestedTriple, kit: FastToolkit) -> Verdict:
    if not kit.dense(triple.inner_in_middle):
        return _inapplicable("inner subring is not dense in the middle one")
    if not kit.dense(triple.middle_pair):
        return _inapplicable("middle subring is not dense in the ambient ring")
    if not kit.dense(triple.inner_pair):
        return _refuted({"inner": bits(triple.inner), "middle": bits(triple.middle)})
    return _verified()


@_claim("C10", "a ring between a dense subring and the ambient ring is dense", InstanceKind.TRIPLE)
def _check_density_upward(triple: NestedTriple, kit: FastToolkit) -> Verdict:
    if not kit.dense(triple.inner_pair):
        return _inapplicable("inner subring is not dense in the ambient ring")
    if not kit.dense(triple.middle_pair):
        return _refuted({"inner": bits(triple.inner), "middle": bits(triple.middle)})
    return _verified()


@_claim("C26", "CN subring dense in two nested rings: both maximal-ideal maps are homeomorphisms",
        InstanceKind.TRIPLE)
def _check_lambda_nested(triple: NestedTriple, kit: FastToolkit) -> Verdict:
    outer, inner = triple.inner_pair, triple.inner_in_middle
    if not kit.is_cn(kit.space(outer.ring)):
        return _inapplicable("inner spectrum is not CN")
    if not (kit.dense(outer) and kit.dense(inner)):
        return _inapplicable("inner subring is not dense in both rings")
    for label, pair in (("ambient", outer), ("middle", inner)):
        ok, evidence = _is_homeomorphism(kit, _PairView(pair, kit).lam())
        if not ok:
            return _refuted({"over": label, **evidence})
    return _verified()


# Homomorphism claims


def _induced_map(hom: RingHom, kit: FastToolkit) -> SpectralMap:
    spec_dom = kit.space(hom.domain)
    spec_cod = kit.space(hom.codomain)
    index = {point_mask(p): i for i, p in enumerate(spec_dom.points)}
    try:
        table = [index[hom.preimage_mask(point_mask(q))] for q in spec_cod.points]
    except KeyError:
        raise ClaimError(f"a preimage under {hom.name} is not prime")
    return SpectralMap(spec_cod, spec_dom, tuple(table), name=f"{hom.name}*")


@_claim("C16", "kernel in nilradical iff induced map has dense image iff every prime lies over a preimage",
        InstanceKind.HOM)
def _check_hom_equivalence(hom: RingHom, kit: FastToolkit) -> Verdict:
    kernel = hom.kernel_mask()
    nil = kit.nilradical(hom.domain)
    in_nil = is_subset(kernel, nil)
    fstar = _induced_map(hom, kit)
    dense_image = kit.map_props(fstar).dense_image
    pre = [hom.preimage_mask(point_mask(q)) for q in fstar.source.points]
    prime_below = all(
        any(is_subset(c, point_mask(p)) for c in pre) for p in fstar.target.points
    )
    values = {
        "kernel_in_nilradical": in_nil,
        "dense_image": dense_image,
        "preimage_below_every_prime": prime_below,
    }
    if not in_nil == dense_image == prime_below:
        return _refuted({**values, "kernel": bits(kernel), "nilradical": bits(nil)})
    return _verified(**values)


@_claim("C27", "induced map is continuous, with dense image when the map is injective", InstanceKind.HOM)
def _check_induced_map(hom: RingHom, kit: FastToolkit) -> Verdict:
    props = kit.map_props(_induced_map(hom, kit))
    if not props.continuous:
        return _refuted({"reason": "induced map is not continuous"})
    if hom.is_injective() and not props.dense_image:
        return _refuted({"reason": "injective map with non-dense image"})
    return _verified(injective=hom.is_injective())


# Ring and poset claims


def _space_of(instance, kit: FastToolkit) -> SpectralSpace:
    return kit.space(instance) if isinstance(instance, FiniteRing) else instance


@_claim("C17", "pm iff maximal retraction iff unique maximal over O_M iff normal",
        InstanceKind.RING, InstanceKind.POSET)
def _check_pm_equivalences(instance, kit: FastToolkit) -> Verdict:
    s = _space_of(instance, kit)
    values = {
        "pm": kit.is_pm(s),
        "retract": kit.mu_exists(s),
        "normal": kit.is_normal(s),
    }
    if isinstance(instance, FiniteRing):
        maxima = [point_mask(s.points[m]) for m in bits(s.maximal_mask)]
        values["unique_maximal_over_om"] = all(
            sum(1 for n in maxima if is_subset(kit.o_m(instance, m), n)) == 1 for m in maxima
        )
    else:
        values["closed_downsets"] = kit.pm_closed_downsets(s)
    if len(set(values.values())) != 1:
        return _refuted(values)
    if values["pm"]:
        count = kit.retraction_count(s)
        t2 = kit.max_t2(s)
        if count != 1 or not t2:
            return _refuted({**values, "retractions": count, "max_t2": t2})
    return _verified(**values)


@_claim("C19", "equational test agrees with topological complete normality", InstanceKind.RING)
def _check_equational(ring: FiniteRing, kit: FastToolkit) -> Verdict:
    if ring.size > kit.limits.equational_cap:
        return _inapplicable(f"ring size {ring.size} above equational cap {kit.limits.equational_cap}")
    equational = kit.cn_equational(ring)
    topological = kit.is_cn(kit.space(ring))
    if equational != topological:
        return _refuted({"equational": equational, "topological": topological})
    return _verified(cn=equational)


@_claim("C20", "maximal spectrum is Hausdorff iff the Jacobson criterion holds", InstanceKind.RING)
def _check_max_t2(ring: FiniteRing, kit: FastToolkit) -> Verdict:
    t2 = kit.max_t2(kit.space(ring))
    criterion = kit.max_separation(ring)
    if t2 != criterion:
        return _refuted({"max_t2": t2, "criterion": criterion})
    return _verified(max_t2=t2)


@_claim("C21", "weak CN agrees with no incomparable pair below a maximal point",
        InstanceKind.POSET, InstanceKind.RING, consistency=True)
def _check_weak_cn_forms(instance, kit: FastToolkit) -> Verdict:
    if isinstance(instance, FiniteRing):
        return _inapplicable("weak CN of a ring is relative to a subring; only posets carry the absolute notion")
    weak = kit.is_weak_cn(instance)
    below = kit.no_incomparable_below_maximal(instance)
    if weak != below:
        return _refuted({"weak_cn": weak, "no_incomparable_below_maximal": below})
    return _verified(weak_cn=weak)


@_claim("C22", "weakly CN and pm implies CN", InstanceKind.POSET, InstanceKind.RING)
def _check_weak_cn_pm(instance, kit: FastToolkit) -> Verdict:
    s = _space_of(instance, kit)
    if not kit.is_weak_cn(s):
        return _inapplicable("not weakly CN")
    if not kit.is_pm(s):
        return _inapplicable("not pm")
    chain, topological = kit.is_cn_chain(s), kit.is_cn(s)
    if not (chain and topological):
        return _refuted({"cn_chain": chain, "cn_topological": topological})
    return _verified()


@_claim("C28", "dense embedding into a CN space: source is CN and pm", InstanceKind.MAP)
def _check_embedding_cn(m: SpectralMap, kit: FastToolkit) -> Verdict:
    props = kit.map_props(m)
    if not (props.embedding and props.dense_image):
        return _inapplicable("map is not an embedding with dense image")
    if not kit.is_cn(m.target):
        return _inapplicable("target is not CN")
    cn, pm = kit.is_cn(m.source), kit.is_pm(m.source)
    if not (cn and pm):
        return _refuted({"source_cn": cn, "source_pm": pm})
    return _verified()


CLAIM_IDS: Tuple[str, ...] = tuple(sorted(CATALOG, key=lambda c: int(c[1:])))


def get_claim(claim_id: str) -> Claim:
    try:
        return CATALOG[claim_id]
    except KeyError:
        raise UnknownClaimError(f"unknown claim id {claim_id!r}")


def recheck_refutation(claim_id: str, instance: Any, limits: Limits = Limits()) -> bool:
    """
    Replay a claim with brute-force primitives.

    Returns:
        True if the direct computation refutes the claim as well

    Raises:
        ClaimError: If the instance is too large for the brute-force path
    """
    claim = get_claim(claim_id)
    try:
        replay = claim.check(instance, DirectToolkit(limits))
    except CapExceededError as e:
        raise ClaimError(f"cannot re-validate {claim_id}: {e}")
    return replay.status is VerdictStatus.REFUTED


def check_claim(ci: ClaimInstance, limits: Limits = Limits(), recheck: bool = True) -> Verdict:
    """
    Check one claim on one instance.

    Args:
        ci: Claim id and instance
        limits: Enumeration caps
        recheck: Replay refutations with brute-force primitives

    Returns:
        Verdict with timing

    Raises:
        UnknownClaimError: If the claim id is not in the catalog
        ClaimError: If the claim does not take this kind of instance, or a
            refutation fails to re-validate
        CapExceededError: If the instance is above a cap
    """
    claim = get_claim(ci.claim_id)
    kind = ci.kind
    if kind not in claim.kinds:
        raise ClaimError(f"{claim.claim_id} does not take a {kind.value} instance")

    start = time.perf_counter()
    verdict = claim.check(ci.instance, FastToolkit(limits))
    if verdict.refuted and recheck:
        if not recheck_refutation(claim.claim_id, ci.instance, limits):
            raise ClaimError(
                f"{claim.claim_id} refutation did not re-validate with direct computation"
            )
        logger.warning("%s refuted and re-validated: %s", claim.claim_id, verdict.witness)
    elapsed = (time.perf_counter() - start) * 1000.0
    return dataclasses.replace(verdict, claim_id=claim.claim_id, elapsed_ms=round(elapsed, 3))


def hom_equivalence_check(hom: RingHom, limits: Limits = Limits()) -> Verdict:
    """The three-way equivalence for a homomorphism, as a verdict."""
    return check_claim(ClaimInstance("C16", hom), limits)
