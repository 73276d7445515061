"""
Finite commutative rings with identity.

A ring of size n has elements 0..n-1 and is stored as two n x n numpy
operation tables. Tables are read-only once the ring is built, and every
constructor runs the full axiom scan, so any ``FiniteRing`` in memory is a
commutative ring with identity.

Subsets of a ring (ideals, subrings, element lists) are carried around as
integer bit sets, see ``utils.mask_from`` and ``utils.bits``.

Localization
------------
For a finite ring R and a multiplicatively closed S, let
K = {x : s x = 0 for some s in S}. K is an ideal, every s in S becomes a
non-zero-divisor in R/K, and a non-zero-divisor of a finite ring is a unit.
The universal property then identifies S^-1 R with R/K, which is how
``make_localization`` builds it.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from .utils import bits, iter_bits, mask_from, popcount
from .validation import CapValidator

if TYPE_CHECKING:
    from .ideals import Ideal

logger = logging.getLogger(__name__)


class RingError(Exception):
    """Raised when a ring, homomorphism or subring cannot be built."""
    pass


class RingAxiomError(RingError):
    """Raised when operation tables violate a ring axiom."""

    def __init__(self, law: str, witness: Tuple[int, ...]):
        self.law = law
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"{law} fails at {self.witness}")


class ZeroRingError(RingError):
    """Raised when a constructor would return the zero ring."""
    pass


def _first_violation(ok: np.ndarray) -> Optional[Tuple[int, ...]]:
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def _frozen_table(table, n: int, label: str) -> np.ndarray:
    array = np.asarray(table, dtype=np.int64)
    if array.shape != (n, n):
        raise RingError(f"{label} table must be {n}x{n}, got shape {array.shape}")
    if n and (array.min() < 0 or array.max() >= n):
        raise RingError(f"{label} table has entries outside 0..{n - 1}")
    array = array.copy()
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """
    A finite commutative ring with identity.

    Rings compare and hash by identity; use ``is_isomorphic`` for
    structural comparison.

    Attributes:
        size: Number of elements
        add: Addition table, add[a, b] = a + b
        mul: Multiplication table, mul[a, b] = a * b
        zero: Index of the additive identity
        one: Index of the multiplicative identity
        name: Display name
        allow_zero: Accept the one-element ring
    """

    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    name: str = "R"
    allow_zero: bool = False

    def __post_init__(self):
        n = self.size
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise RingError(f"ring size must be a positive integer, got {n!r}")
        object.__setattr__(self, "size", int(n))
        object.__setattr__(self, "add", _frozen_table(self.add, n, "add"))
        object.__setattr__(self, "mul", _frozen_table(self.mul, n, "mul"))
        for label, value in (("zero", self.zero), ("one", self.one)):
            if not 0 <= value < n:
                raise RingError(f"{label} index {value} outside 0..{n - 1}")
        object.__setattr__(self, "zero", int(self.zero))
        object.__setattr__(self, "one", int(self.one))
        if n == 1 and not self.allow_zero:
            raise ZeroRingError(f"{self.name} is the zero ring")
        self.check_axioms()

    def check_axioms(self) -> None:
        """
        Scan every ring axiom over the full tables.

        Raises:
            RingAxiomError: With the failing law and the first offending tuple
        """
        A, M = self.add, self.mul
        idx = np.arange(self.size)
        laws = (
            ("addition is commutative", A == A.T),
            ("addition is associative", A[A, :] == A[:, A]),
            ("zero is an additive identity", A[self.zero] == idx),
            ("every element has an additive inverse", (A == self.zero).any(axis=1)),
            ("multiplication is commutative", M == M.T),
            ("multiplication is associative", M[M, :] == M[:, M]),
            ("one is a multiplicative identity", M[self.one] == idx),
            ("multiplication distributes over addition",
             M[:, A] == A[M[:, :, None], M[:, None, :]]),
        )
        for law, ok in laws:
            witness = _first_violation(ok)
            if witness is not None:
                raise RingAxiomError(law, witness)

    @cached_property
    def add_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.add.tolist())

    @cached_property
    def mul_rows(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row) for row in self.mul.tolist())

    @cached_property
    def neg_table(self) -> Tuple[int, ...]:
        return tuple(int(np.flatnonzero(self.add[a] == self.zero)[0]) for a in range(self.size))

    @cached_property
    def neg_array(self) -> np.ndarray:
        array = np.array(self.neg_table, dtype=np.int64)
        array.setflags(write=False)
        return array

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def elements(self) -> range:
        return range(self.size)

    def plus(self, a: int, b: int) -> int:
        return self.add_rows[a][b]

    def times(self, a: int, b: int) -> int:
        return self.mul_rows[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def minus(self, a: int, b: int) -> int:
        return self.add_rows[a][self.neg_table[b]]

    def power(self, a: int, k: int) -> int:
        """a**k for k >= 0, with a**0 = one."""
        if k < 0:
            raise RingError("negative powers are not defined")
        result = self.one
        rows = self.mul_rows
        base = a
        while k:
            if k & 1:
                result = rows[result][base]
            base = rows[base][base]
            k >>= 1
        return result

    def element(self, index: int) -> "Element":
        return Element(self, index)

    def units_mask(self) -> int:
        """Bit set of invertible elements."""
        return mask_from(a for a in range(self.size) if self.one in self.mul_rows[a])

    def additive_order(self, a: int) -> int:
        order, x = 1, a
        while x != self.zero:
            x = self.add_rows[x][a]
            order += 1
        return order

    def power_signature(self, a: int) -> Tuple[int, int]:
        """(tail length, cycle length) of the sequence a, a^2, a^3, ..."""
        seen: Dict[int, int] = {}
        x, step = a, 0
        while x not in seen:
            seen[x] = step
            x = self.mul_rows[x][a]
            step += 1
        return seen[x], step - seen[x]

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, size={self.size})"


@dataclass(frozen=True)
class Element:
    """
    Operator-overloading view of a ring element.

    Plain ints 0 and 1 are read as the ring's zero and one, so expressions
    like ``s**k - x * s * a`` can be written directly.
    """

    ring: FiniteRing
    index: int

    def _coerce(self, other: Union["Element", int]) -> "Element":
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise RingError("cannot combine elements of different rings")
            return other
        if other == 0:
            return Element(self.ring, self.ring.zero)
        if other == 1:
            return Element(self.ring, self.ring.one)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring.add_rows[self.index][other.index])

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Element(self.ring, self.ring.neg_table[self.index])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, self.ring.mul_rows[self.index][other.index])

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if type(k) is not int or k < 0:
            raise TypeError("exponent must be a non-negative int")
        result = Element(self.ring, self.ring.one)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return self.index == self.ring.zero

    def __int__(self) -> int:
        return self.index


@dataclass(frozen=True, eq=False)
class RingHom:
    """
    A unital ring homomorphism given by its table.

    Attributes:
        domain: Source ring
        codomain: Target ring
        table: table[a] is the image of a
        name: Display name
    """

    domain: FiniteRing
    codomain: FiniteRing
    table: Tuple[int, ...]
    name: str = "f"

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.domain.size:
            raise RingError(
                f"hom table has {len(table)} entries, domain has {self.domain.size}"
            )
        if any(v < 0 or v >= self.codomain.size for v in table):
            raise RingError("hom table has entries outside the codomain")

        f = np.array(table, dtype=np.int64)
        src, dst = self.domain, self.codomain
        if f[src.one] != dst.one:
            raise RingError(f"{self.name} does not send one to one")
        for label, a_table, b_table in (("addition", src.add, dst.add), ("multiplication", src.mul, dst.mul)):
            witness = _first_violation(f[a_table] == b_table[f[:, None], f[None, :]])
            if witness is not None:
                raise RingError(f"{self.name} does not preserve {label} at {witness}")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def image_mask(self, mask: Optional[int] = None) -> int:
        source = range(self.domain.size) if mask is None else iter_bits(mask)
        return mask_from(self.table[a] for a in source)

    def preimage_mask(self, mask: int) -> int:
        return mask_from(a for a, b in enumerate(self.table) if mask >> b & 1)

    def kernel_mask(self) -> int:
        return self.preimage_mask(1 << self.codomain.zero)

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.codomain.size

    def compose(self, inner: "RingHom") -> "RingHom":
        """self after inner."""
        if inner.codomain is not self.domain:
            raise RingError("homomorphisms are not composable")
        return RingHom(inner.domain, self.codomain,
                       tuple(self.table[b] for b in inner.table),
                       name=f"{self.name}.{inner.name}")


def identity_hom(ring: FiniteRing) -> RingHom:
    return RingHom(ring, ring, tuple(range(ring.size)), name=f"id_{ring.name}")


def _is_closed_subring(ring: FiniteRing, mask: int) -> bool:
    if not (mask >> ring.zero & 1 and mask >> ring.one & 1):
        return False
    members = bits(mask)
    for a in members:
        if not mask >> ring.neg_table[a] & 1:
            return False
        add_row, mul_row = ring.add_rows[a], ring.mul_rows[a]
        for b in members:
            if not (mask >> add_row[b] & 1 and mask >> mul_row[b] & 1):
                return False
    return True


@dataclass(frozen=True, eq=False)
class SubringPair:
    """
    A subring A of an ambient ring B, given by its member bit set.

    ``ring`` is A extracted as a ring of its own, with elements renumbered
    0..|A|-1 in ascending ambient order. ``to_ambient`` and
    ``from_ambient`` translate between the two numberings.
    """

    ambient: FiniteRing
    member: int

    def __post_init__(self):
        if self.member <= 0 or self.member > self.ambient.full_mask:
            raise RingError("subring member set is empty or out of range")
        if not _is_closed_subring(self.ambient, self.member):
            raise RingError(
                f"{sorted(bits(self.member))} is not a subring of {self.ambient.name}"
            )

    @cached_property
    def to_ambient(self) -> Tuple[int, ...]:
        return tuple(bits(self.member))

    @cached_property
    def from_ambient(self) -> Dict[int, int]:
        return {b: i for i, b in enumerate(self.to_ambient)}

    @property
    def size(self) -> int:
        return len(self.to_ambient)

    def contains(self, b: int) -> bool:
        return bool(self.member >> b & 1)

    @cached_property
    def ring(self) -> FiniteRing:
        idx = np.array(self.to_ambient, dtype=np.int64)
        back = np.full(self.ambient.size, -1, dtype=np.int64)
        back[idx] = np.arange(len(idx))
        add = back[self.ambient.add[np.ix_(idx, idx)]]
        mul = back[self.ambient.mul[np.ix_(idx, idx)]]
        label = ",".join(str(b) for b in self.to_ambient)
        return FiniteRing(
            size=len(idx),
            add=add,
            mul=mul,
            zero=self.from_ambient[self.ambient.zero],
            one=self.from_ambient[self.ambient.one],
            name=f"{self.ambient.name}|{{{label}}}",
        )

    def inclusion(self) -> RingHom:
        return RingHom(self.ring, self.ambient, self.to_ambient, name="incl")

    def restrict_mask(self, ambient_mask: int) -> int:
        """Intersect an ambient subset with A, in A's own numbering."""
        return mask_from(i for i, b in enumerate(self.to_ambient) if ambient_mask >> b & 1)

    def extend_mask(self, local_mask: int) -> int:
        """Translate a subset of A from A's numbering to ambient numbering."""
        return mask_from(self.to_ambient[i] for i in iter_bits(local_mask))

    @property
    def is_whole(self) -> bool:
        return self.member == self.ambient.full_mask

    def __repr__(self) -> str:
        return f"SubringPair({self.ambient.name}, {list(self.to_ambient)})"


# Constructors


def _ring_from_vectors(modulus: int, vectors: np.ndarray, mul_coeffs: np.ndarray, name: str) -> FiniteRing:
    """Build a ring whose elements are coefficient vectors mod p."""
    weights = modulus ** np.arange(vectors.shape[1], dtype=np.int64)
    add = ((vectors[:, None, :] + vectors[None, :, :]) % modulus) @ weights
    mul = (mul_coeffs % modulus) @ weights
    return FiniteRing(len(vectors), add, mul, zero=0, one=1, name=name)


def make_zn(n: int, name: Optional[str] = None) -> FiniteRing:
    """
    Integers modulo n.

    Raises:
        RingError: If n < 2
    """
    if n < 2:
        raise RingError(f"Z_n requires n >= 2, got {n}")
    idx = np.arange(n, dtype=np.int64)
    return FiniteRing(
        n,
        (idx[:, None] + idx[None, :]) % n,
        (idx[:, None] * idx[None, :]) % n,
        zero=0,
        one=1,
        name=name or f"Z_{n}",
    )


def _poly_text(coeffs: Sequence[int]) -> str:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        base = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        if power == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(base)
        else:
            terms.append(f"{c}{base}")
    return "+".join(terms) or "0"


def make_poly_quotient(p: int, coeffs: Sequence[int], name: Optional[str] = None) -> FiniteRing:
    """
    The ring F_p[x]/(f) for a monic f of degree d >= 1.

    Elements are the residues c_0 + c_1 x + ... + c_{d-1} x^{d-1}, numbered
    by c_0 + c_1 p + ... + c_{d-1} p^{d-1}. So 0 is zero, 1 is one and,
    when d >= 2, p is the class of x.

    Args:
        p: A prime
        coeffs: Coefficients of f, lowest degree first, e.g. [1, 1, 1] for x^2+x+1
        name: Optional display name

    Raises:
        RingError: If p is not prime or f is not monic of degree >= 1
    """
    if not sympy.isprime(p):
        raise RingError(f"{p} is not prime")
    f = [int(c) % p for c in coeffs]
    if len(f) < 2 or f[-1] != 1:
        raise RingError(f"polynomial {list(coeffs)} is not monic of degree >= 1 over F_{p}")

    d = len(f) - 1
    vectors = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)[:, ::-1]
    n = len(vectors)

    product = np.zeros((n, n, 2 * d - 1), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            product[:, :, i + j] += vectors[:, None, i] * vectors[None, :, j]
    tail = np.array(f[:d], dtype=np.int64)
    for k in range(2 * d - 2, d - 1, -1):
        lead = product[:, :, k] % p
        product[:, :, k - d:k] -= lead[:, :, None] * tail[None, None, :]
        product[:, :, k] = 0
    product = product[:, :, :d]

    label = name or f"F_{p}[x]/({_poly_text(f)})"
    return _ring_from_vectors(p, vectors, product, label)


def irreducible_polynomial(p: int, degree: int) -> List[int]:
    """First monic irreducible polynomial of the given degree over F_p, lowest degree first."""
    x = sympy.Symbol("x")
    for low in itertools.product(range(p), repeat=degree):
        coeffs = list(low[::-1]) + [1]
        if coeffs[0] == 0:
            continue
        if sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
            return coeffs
    raise RingError(f"no irreducible polynomial of degree {degree} over F_{p}")


def make_field(q: int) -> FiniteRing:
    """
    The field with q elements.

    Raises:
        RingError: If q is not a prime power
    """
    factors = sympy.factorint(q) if q >= 2 else {}
    if len(factors) != 1:
        raise RingError(f"{q} is not a prime power")
    (p, d), = factors.items()
    if d == 1:
        return make_zn(p, name=f"F_{p}")
    return make_poly_quotient(p, irreducible_polynomial(p, d), name=f"F_{q}")


def make_product(r1: FiniteRing, r2: FiniteRing) -> FiniteRing:
    """
    Direct product r1 x r2; the pair (i, j) has index i * |r2| + j.

    Raises:
        ZeroRingError: If either factor is the zero ring
    """
    for factor in (r1, r2):
        if factor.size == 1:
            raise ZeroRingError(f"{factor.name} is the zero ring and cannot be a product factor")
    n1, n2 = r1.size, r2.size

    def combine(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        table = t1[:, None, :, None] * n2 + t2[None, :, None, :]
        return table.reshape(n1 * n2, n1 * n2)

    return FiniteRing(
        n1 * n2,
        combine(r1.add, r2.add),
        combine(r1.mul, r2.mul),
        zero=r1.zero * n2 + r2.zero,
        one=r1.one * n2 + r2.one,
        name=f"{r1.name}x{r2.name}",
    )


def make_projection(product: FiniteRing, r1: FiniteRing, r2: FiniteRing, factor: int) -> RingHom:
    """
    Projection of ``make_product(r1, r2)`` onto factor 0 or 1.
    """
    if product.size != r1.size * r2.size:
        raise RingError("product ring does not match its factors")
    if factor == 0:
        table = tuple(i // r2.size for i in range(product.size))
        return RingHom(product, r1, table, name="pr1")
    if factor == 1:
        table = tuple(i % r2.size for i in range(product.size))
        return RingHom(product, r2, table, name="pr2")
    raise RingError(f"factor must be 0 or 1, got {factor}")


def _zero_ring(name: str) -> FiniteRing:
    return FiniteRing(1, [[0]], [[0]], zero=0, one=0, name=name, allow_zero=True)


def _quotient_by_mask(r: FiniteRing, kmask: int, name: str, allow_zero: bool = False) -> Tuple[FiniteRing, RingHom]:
    if kmask == r.full_mask:
        if not allow_zero:
            raise ZeroRingError(f"{name} is the zero ring")
        zero = _zero_ring(name)
        return zero, RingHom(r, zero, (0,) * r.size, name="q")

    class_of: Dict[int, int] = {}
    reps: List[int] = []
    kernel = bits(kmask)
    for a in range(r.size):
        if a in class_of:
            continue
        cls = len(reps)
        reps.append(a)
        for k in kernel:
            class_of[r.add_rows[a][k]] = cls

    m = len(reps)
    table = np.array([class_of[a] for a in range(r.size)], dtype=np.int64)
    rep = np.array(reps, dtype=np.int64)
    add = table[r.add[np.ix_(rep, rep)]]
    mul = table[r.mul[np.ix_(rep, rep)]]
    quotient = FiniteRing(m, add, mul, zero=int(table[r.zero]), one=int(table[r.one]), name=name)
    return quotient, RingHom(r, quotient, tuple(table.tolist()), name="q")


def make_quotient(r: FiniteRing, i: "Ideal") -> Tuple[FiniteRing, RingHom]:
    """
    Quotient r/i with its projection.

    Residue classes are numbered by ascending smallest representative.

    Raises:
        ZeroRingError: If i is the whole ring
    """
    if i.ring is not r:
        raise RingError("ideal belongs to a different ring")
    label = ",".join(str(a) for a in bits(i.members))
    return _quotient_by_mask(r, i.members, f"{r.name}/{{{label}}}")


def multiplicative_closure(r: FiniteRing, generators: Sequence[int]) -> int:
    """Smallest multiplicatively closed bit set containing one and the generators."""
    closed = 1 << r.one
    frontier = [r.one]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = r.mul_rows[x][g]
                if not closed >> y & 1:
                    closed |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return closed


def make_localization(r: FiniteRing, s: Union[int, Sequence[int]], allow_zero: bool = False) -> Tuple[FiniteRing, RingHom]:
    """
    Localization S^-1 r with its canonical map.

    Args:
        r: Ring
        s: Multiplicatively closed subset, as a bit set or an element list
        allow_zero: Return the zero ring when 0 is in S instead of raising

    Raises:
        RingError: If S is not multiplicatively closed or misses one
        ZeroRingError: If 0 is in S and allow_zero is False
    """
    smask = s if isinstance(s, int) else mask_from(s)
    members = bits(smask)
    if not smask >> r.one & 1:
        raise RingError("multiplicative set must contain one")
    for a in members:
        for b in members:
            if not smask >> r.mul_rows[a][b] & 1:
                raise RingError(f"{members} is not multiplicatively closed: {a}*{b}")

    annihilated = mask_from(
        x for x in range(r.size) if any(r.mul_rows[t][x] == r.zero for t in members)
    )
    label = ",".join(str(a) for a in members)
    return _quotient_by_mask(r, annihilated, f"{r.name}[{{{label}}}^-1]", allow_zero=allow_zero)


# Subrings


def _closure(r: FiniteRing, mask: int) -> int:
    current = mask | (1 << r.zero) | (1 << r.one)
    while True:
        members = bits(current)
        grown = current
        for a in members:
            add_row, mul_row = r.add_rows[a], r.mul_rows[a]
            for b in members:
                grown |= (1 << add_row[b]) | (1 << mul_row[b])
        if grown == current:
            return current
        current = grown


def subring_generated(r: FiniteRing, gens: Sequence[int]) -> SubringPair:
    """Smallest subring of r containing gens."""
    for g in gens:
        if not 0 <= g < r.size:
            raise RingError(f"generator {g} outside 0..{r.size - 1}")
    return SubringPair(r, _closure(r, mask_from(gens)))


def enumerate_subrings_with_status(
    r: FiniteRing,
    cap: int = 36,
    exhaustive_limit: int = 16,
    max_generators: int = 3,
) -> Tuple[List[SubringPair], bool]:
    """
    All subrings of r, smallest first, plus a completeness flag.

    Every subring is reached from the prime subring by adding one generator
    at a time. Up to ``exhaustive_limit`` elements the search runs to a fixed
    point; above it, it stops after ``max_generators`` generators and the
    flag is False unless the last round found nothing new.

    Raises:
        CapExceededError: If |r| > cap
    """
    CapValidator.check("ring", r.size, cap)
    depth = None if r.size <= exhaustive_limit else max_generators

    base = _closure(r, 0)
    seen = {base}
    frontier = [base]
    level = 0
    while frontier and (depth is None or level < depth):
        nxt = []
        for current in frontier:
            for g in range(r.size):
                if current >> g & 1:
                    continue
                grown = _closure(r, current | (1 << g))
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
        level += 1

    complete = not frontier
    if not complete:
        logger.warning(
            "Subring search on %s stopped after %d generators; list may be incomplete",
            r.name, max_generators,
        )
    ordered = sorted(seen, key=lambda m: (popcount(m), m))
    return [SubringPair(r, m) for m in ordered], complete


def enumerate_subrings(r: FiniteRing, cap: int = 36, exhaustive_limit: int = 16, max_generators: int = 3) -> List[SubringPair]:
    """All subrings of r, ordered by size and then by member set."""
    subrings, _ = enumerate_subrings_with_status(r, cap, exhaustive_limit, max_generators)
    return subrings


# Isomorphism


def _signature(r: FiniteRing, a: int) -> Tuple[int, int, int]:
    tail, cycle = r.power_signature(a)
    return r.additive_order(a), tail, cycle


def _minimal_generators(r: FiniteRing) -> List[int]:
    gens: List[int] = []
    closed = _closure(r, 0)
    for a in range(r.size):
        if not closed >> a & 1:
            gens.append(a)
            closed = _closure(r, closed | (1 << a))
            if closed == r.full_mask:
                break
    return gens


def _extend(r1: FiniteRing, r2: FiniteRing, seed: Dict[int, int]) -> Optional[Tuple[int, ...]]:
    f = dict(seed)
    changed = True
    while changed:
        changed = False
        known = list(f.items())
        for a, fa in known:
            for b, fb in known:
                for src, img in (
                    (r1.add_rows[a][b], r2.add_rows[fa][fb]),
                    (r1.mul_rows[a][b], r2.mul_rows[fa][fb]),
                ):
                    if src in f:
                        if f[src] != img:
                            return None
                    else:
                        f[src] = img
                        changed = True
    if len(f) != r1.size or len(set(f.values())) != r1.size:
        return None
    return tuple(f[a] for a in range(r1.size))


def find_isomorphism(r1: FiniteRing, r2: FiniteRing) -> Optional[RingHom]:
    """An isomorphism r1 -> r2, or None."""
    if r1.size != r2.size:
        return None
    sig1 = [_signature(r1, a) for a in range(r1.size)]
    sig2 = [_signature(r2, b) for b in range(r2.size)]
    if sorted(sig1) != sorted(sig2):
        return None

    gens = _minimal_generators(r1)
    candidates = [[b for b in range(r2.size) if sig2[b] == sig1[g]] for g in gens]
    for images in itertools.product(*candidates):
        seed = {r1.zero: r2.zero, r1.one: r2.one}
        consistent = True
        for g, h in zip(gens, images):
            if seed.get(g, h) != h:
                consistent = False
                break
            seed[g] = h
        if not consistent:
            continue
        table = _extend(r1, r2, seed)
        if table is not None:
            return RingHom(r1, r2, table, name="iso")
    return None


def is_isomorphic(r1: FiniteRing, r2: FiniteRing) -> bool:
    return find_isomorphism(r1, r2) is not None
