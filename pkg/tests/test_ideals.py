"""Tests for the ideal lattice and the prime spectrum."""

import pytest

from spectral_workbench.ideals import (
    Ideal,
    IdealError,
    contract,
    enumerate_ideals,
    ideal_generated,
    ideal_intersection,
    ideal_product,
    ideal_sum,
    is_maximal,
    is_prime,
    jacobson,
    kernel,
    maximal_spectrum,
    minimal_spectrum,
    nilradical,
    o_m,
    prime_radical,
    primes_containing,
    principal_ideal,
    radical,
    spectrum,
)
from spectral_workbench.rings import make_product, make_quotient, make_zn
from spectral_workbench.utils import bits, mask_from
from spectral_workbench.validation import CapExceededError


class TestIdeal:
    """Test ideal construction and validation."""

    def test_rejects_non_ideal(self, z6):
        """Test that {0, 1} is not an ideal of Z_6."""
        with pytest.raises(IdealError, match=r"\[0, 1\] is not an ideal of Z_6"):
            Ideal(z6, 0b11)

    def test_rejects_empty(self, z6):
        """Test that the empty set is refused."""
        with pytest.raises(IdealError, match="empty or out of range"):
            Ideal(z6, 0)

    def test_membership_and_size(self, z6):
        """Test the container protocol."""
        i = Ideal(z6, mask_from([0, 2, 4]))
        assert 4 in i
        assert 3 not in i
        assert len(i) == 3
        assert i.is_proper
        assert not Ideal(z6, z6.full_mask).is_proper

    def test_generated(self, z6, z2xz2):
        """Test ideals generated by single elements."""
        assert ideal_generated(z6, [2]).elements() == [0, 2, 4]
        assert ideal_generated(z2xz2, [2]).elements() == [0, 2]
        assert ideal_generated(z6, []).elements() == [0]
        assert ideal_generated(z6, [2, 3]).elements() == list(range(6))

    def test_generated_rejects_bad_generator(self, z6):
        """Test that generators must be elements."""
        with pytest.raises(IdealError, match="generator 7 outside"):
            ideal_generated(z6, [7])

    def test_principal(self, z4):
        """Test (2) in Z_4."""
        assert principal_ideal(z4, 2).elements() == [0, 2]
        assert principal_ideal(z4, 3).elements() == [0, 1, 2, 3]


class TestLatticeOperations:
    """Test sums, intersections and products."""

    def test_sum_and_intersection(self, z6):
        """Test (2) + (3) = Z_6 and (2) meet (3) = (0)."""
        two, three = principal_ideal(z6, 2), principal_ideal(z6, 3)
        assert not ideal_sum(two, three).is_proper
        assert ideal_intersection(two, three).elements() == [0]

    def test_product(self, z4):
        """Test (2)(2) = (0) in Z_4."""
        two = principal_ideal(z4, 2)
        assert ideal_product(two, two).elements() == [0]

    def test_different_rings_rejected(self, z4, z6):
        """Test that ideals of different rings do not combine."""
        with pytest.raises(IdealError, match="different rings"):
            ideal_sum(principal_ideal(z4, 2), principal_ideal(z6, 2))


class TestEnumeration:
    """Test the ideal lattice enumeration."""

    @pytest.mark.parametrize("n,count", [(2, 2), (4, 3), (6, 4), (8, 4), (12, 6)])
    def test_zn_ideal_counts(self, n, count):
        """Test that Z_n has one ideal per divisor of n."""
        assert len(enumerate_ideals(make_zn(n))) == count

    def test_field_has_two_ideals(self, f4):
        """Test that a field has only (0) and itself."""
        assert [len(i) for i in enumerate_ideals(f4)] == [1, 4]

    def test_ordering(self, z2xz2):
        """Test ordering by size, then by member set."""
        masks = [i.members for i in enumerate_ideals(z2xz2)]
        assert masks == [0b0001, 0b0011, 0b0101, 0b1111]

    def test_cap(self, z6):
        """Test that a ring above the lattice cap is refused."""
        with pytest.raises(CapExceededError, match="ideal lattice size 6 exceeds cap 4"):
            enumerate_ideals(z6, cap=4)


class TestRadicalsAndPrimes:
    """Test radicals, primality and the spectrum."""

    def test_radical_in_z8(self):
        """Test rad((4)) = (2) in Z_8."""
        z8 = make_zn(8)
        assert radical(principal_ideal(z8, 4)).elements() == [0, 2, 4, 6]

    def test_radical_is_idempotent(self, z6):
        """Test that the radical of a radical ideal is itself."""
        i = principal_ideal(z6, 2)
        assert radical(radical(i)) == radical(i)

    def test_zero_ideal_of_z4_not_prime(self, z4):
        """Test that 2 * 2 = 0 breaks primality of (0)."""
        assert not is_prime(Ideal(z4, 1))
        assert is_prime(principal_ideal(z4, 2))

    def test_whole_ring_not_prime(self, z6):
        """Test that primes are proper."""
        assert not is_prime(Ideal(z6, z6.full_mask))
        assert not is_maximal(Ideal(z6, z6.full_mask))

    def test_spectrum_sizes(self, z6, z4, f4):
        """Test that Spec counts the prime factors."""
        assert [p.elements() for p in spectrum(z6)] == [[0, 3], [0, 2, 4]]
        assert len(spectrum(z4)) == 1
        assert [p.elements() for p in spectrum(f4)] == [[0]]

    def test_three_fold_product(self):
        """Test that Z_2 x Z_2 x Z_2 has three primes."""
        z2 = make_zn(2)
        ring = make_product(make_product(z2, z2), z2)
        assert len(spectrum(ring)) == 3

    def test_primes_are_maximal_and_minimal(self, z6):
        """Test that every prime of a finite ring is both maximal and minimal."""
        primes = [p.members for p in spectrum(z6)]
        assert [m.members for m in maximal_spectrum(z6)] == primes
        assert [m.members for m in minimal_spectrum(z6)] == primes
        assert all(is_maximal(p) for p in spectrum(z6))

    def test_nilradical_and_jacobson(self, z4, z6):
        """Test N(Z_4) = J(Z_4) = (2) and N(Z_6) = J(Z_6) = (0)."""
        assert nilradical(z4).elements() == [0, 2]
        assert jacobson(z4).elements() == [0, 2]
        assert nilradical(z6).elements() == [0]
        assert jacobson(z6).elements() == [0]

    def test_primes_containing(self, z6):
        """Test primes over (2) and over (0)."""
        assert [p.elements() for p in primes_containing(principal_ideal(z6, 2))] == [[0, 2, 4]]
        assert len(primes_containing(Ideal(z6, 1))) == 2

    def test_prime_radical_matches_radical(self, z4, z6):
        """Test that the intersection of primes over I is rad(I)."""
        for ring in (z4, z6, make_zn(12)):
            for i in enumerate_ideals(ring):
                assert prime_radical(i).members == radical(i).members

    def test_prime_radical_of_whole_ring(self, z6):
        """Test that no prime contains the whole ring."""
        whole = Ideal(z6, z6.full_mask)
        assert prime_radical(whole) == whole


class TestDerivedIdeals:
    """Test O_m, contraction and kernels."""

    def test_o_m_in_local_ring(self, z4):
        """Test that O_(2) is (2) in Z_4."""
        m = principal_ideal(z4, 2)
        assert o_m(z4, m).elements() == [0, 2]

    def test_o_m_in_z6(self, z6):
        """Test that O_m is m itself when m is the only prime below it."""
        m = principal_ideal(z6, 2)
        assert o_m(z6, m) == m

    def test_o_m_rejects_non_maximal(self, z4):
        """Test that (0) of Z_4 is not maximal."""
        with pytest.raises(IdealError, match="not a maximal ideal"):
            o_m(z4, Ideal(z4, 1))

    def test_contract_and_kernel(self, z6):
        """Test the contraction of (0) along Z_6 -> Z_6/(3)."""
        quotient, q = make_quotient(z6, principal_ideal(z6, 3))
        assert kernel(q).elements() == [0, 3]
        assert contract(q, Ideal(quotient, 1 << quotient.zero)) == kernel(q)

    def test_contract_of_prime_is_prime(self, z6):
        """Test that contracted primes stay prime."""
        quotient, q = make_quotient(z6, principal_ideal(z6, 3))
        for p in spectrum(quotient):
            assert is_prime(contract(q, p))

    def test_contract_rejects_foreign_ideal(self, z4, z6):
        """Test that the ideal must live in the codomain."""
        quotient, q = make_quotient(z6, principal_ideal(z6, 3))
        with pytest.raises(IdealError, match="codomain"):
            contract(q, principal_ideal(z4, 2))

    def test_ideal_masks_are_bit_sets(self, z6):
        """Test the bit set encoding of members."""
        assert bits(principal_ideal(z6, 3).members) == [0, 3]
