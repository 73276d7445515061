"""
Equational test for complete normality of Spec of a finite ring.

Spec R is completely normal exactly when for all s, a in R there are
x, x' in R and k >= 1 with

    (s^k - x s a) (s^k - x' (s^2 - s a)) = 0.

The search below walks k upward and, for each k, evaluates both factors
for every x and x' as numpy vectors, then reads the first zero of the
product table in row-major order. So the witness returned is the one
with the smallest k, then the smallest x, then the smallest x'.

k never needs to exceed |R|: s^k is eventually periodic with tail and
period both at most |R|, and once a power repeats the search repeats.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional, Tuple, Union

import numpy as np

from .rings import FiniteRing
from .utils import Failure
from .validation import CapValidator

logger = logging.getLogger(__name__)

DEFAULT_EQUATIONAL_CAP = 16


@dataclass(frozen=True)
class CnWitness:
    """Witness (x, x', k) for the pair (s, a)."""

    s: int
    a: int
    x: int
    x_prime: int
    k: int

    def evaluate(self, ring: FiniteRing) -> bool:
        """Re-check the identity with plain element arithmetic."""
        s, a = ring.element(self.s), ring.element(self.a)
        x, x_prime = ring.element(self.x), ring.element(self.x_prime)
        left = s ** self.k - x * s * a
        right = s ** self.k - x_prime * (s * s - s * a)
        return (left * right).is_zero()

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def cn_witness(ring: FiniteRing, s: int, a: int) -> Union[CnWitness, Failure]:
    """
    Smallest witness for (s, a), or a Failure when none exists for k <= |R|.
    """
    mul, add, neg = ring.mul, ring.add, ring.neg_array
    sa = mul[s, a]
    twist = add[mul[s, s], neg[sa]]
    left_terms = neg[mul[:, sa]]
    right_terms = neg[mul[:, twist]]

    seen = set()
    power = ring.one
    for k in range(1, ring.size + 1):
        power = mul[power, s]
        if power in seen:
            continue
        seen.add(int(power))
        left = add[power, left_terms]
        right = add[power, right_terms]
        hits = np.argwhere(mul[left[:, None], right[None, :]] == ring.zero)
        if len(hits):
            x, x_prime = (int(v) for v in hits[0])
            return CnWitness(s=s, a=a, x=x, x_prime=x_prime, k=k)

    return Failure("no witness with k <= |R|", {"s": s, "a": a})


@dataclass
class EquationalResult:
    """Outcome of the equational test over all pairs (s, a)."""

    holds: bool
    witnesses: Dict[Tuple[int, int], CnWitness] = field(default_factory=dict)
    failure: Optional[Failure] = None

    def __bool__(self) -> bool:
        return self.holds


def cn_equational(ring: FiniteRing, cap: int = DEFAULT_EQUATIONAL_CAP) -> EquationalResult:
    """
    Run the equational test on every pair (s, a).

    Every witness found is re-evaluated through ``CnWitness.evaluate``
    before it is accepted.

    Raises:
        CapExceededError: If |ring| > cap
        ArithmeticError: If a witness does not re-evaluate to zero
    """
    CapValidator.check("ring", ring.size, cap)
    witnesses: Dict[Tuple[int, int], CnWitness] = {}
    for s in range(ring.size):
        for a in range(ring.size):
            found = cn_witness(ring, s, a)
            if isinstance(found, Failure):
                logger.debug("Equational test fails on %s at s=%d a=%d", ring.name, s, a)
                return EquationalResult(False, witnesses, found)
            if not found.evaluate(ring):
                raise ArithmeticError(f"witness {found} does not satisfy the identity in {ring.name}")
            witnesses[(s, a)] = found
    return EquationalResult(True, witnesses)
