"""Tests for finite rings, homomorphisms and subrings."""

import math

import pytest

from spectral_workbench.ideals import Ideal
from spectral_workbench.rings import (
    FiniteRing,
    RingAxiomError,
    RingError,
    RingHom,
    SubringPair,
    ZeroRingError,
    enumerate_subrings,
    enumerate_subrings_with_status,
    find_isomorphism,
    identity_hom,
    irreducible_polynomial,
    is_isomorphic,
    make_field,
    make_localization,
    make_poly_quotient,
    make_product,
    make_projection,
    make_quotient,
    make_zn,
    multiplicative_closure,
    subring_generated,
)
from spectral_workbench.utils import bits, mask_from
from spectral_workbench.validation import CapExceededError


class TestFiniteRing:
    """Test table validation and element arithmetic."""

    def test_zn_tables(self):
        """Test the mod-n tables of Z_2, Z_4 and Z_6."""
        assert make_zn(2).plus(1, 1) == 0
        assert make_zn(4).times(2, 2) == 0
        z6 = make_zn(6)
        assert z6.plus(3, 4) == 1
        assert z6.times(3, 4) == 0
        assert z6.name == "Z_6"

    def test_zn_rejects_small_modulus(self):
        """Test that Z_1 and below are refused."""
        with pytest.raises(RingError, match="n >= 2"):
            make_zn(1)

    def test_tables_are_read_only(self, z6):
        """Test that operation tables cannot be modified after construction."""
        with pytest.raises(ValueError):
            z6.add[0, 0] = 1

    def test_zero_ring_rejected_by_default(self):
        """Test that the one-element ring needs an explicit opt-in."""
        with pytest.raises(ZeroRingError):
            FiniteRing(1, [[0]], [[0]], zero=0, one=0)
        zero = FiniteRing(1, [[0]], [[0]], zero=0, one=0, allow_zero=True)
        assert zero.size == 1

    def test_axiom_error_names_law_and_witness(self):
        """Test that a non-commutative multiplication is reported with a witness."""
        add = [[0, 1], [1, 0]]
        mul = [[0, 0], [1, 1]]
        with pytest.raises(RingAxiomError, match="multiplication is commutative fails at") as exc:
            FiniteRing(2, add, mul, zero=0, one=1)
        assert exc.value.law == "multiplication is commutative"
        assert exc.value.witness == (0, 1)

    def test_missing_identity_rejected(self):
        """Test that a bad 'one' index fails the identity law."""
        z3 = make_zn(3)
        with pytest.raises(RingAxiomError, match="one is a multiplicative identity"):
            FiniteRing(3, z3.add, z3.mul, zero=0, one=2)

    def test_table_shape_checked(self):
        """Test that tables of the wrong shape are refused."""
        with pytest.raises(RingError, match="must be 3x3"):
            FiniteRing(3, [[0, 1], [1, 0]], [[0, 0], [0, 1]], zero=0, one=1)

    def test_table_entries_checked(self):
        """Test that out-of-range entries are refused."""
        with pytest.raises(RingError, match="outside 0..1"):
            FiniteRing(2, [[0, 1], [1, 2]], [[0, 0], [0, 1]], zero=0, one=1)

    def test_power_and_units(self, z6):
        """Test powers, units and additive orders in Z_6."""
        assert z6.power(2, 0) == z6.one
        assert z6.power(2, 3) == 2
        assert bits(z6.units_mask()) == [1, 5]
        assert z6.additive_order(2) == 3
        assert z6.additive_order(0) == 1
        with pytest.raises(RingError, match="negative powers"):
            z6.power(2, -1)

    def test_power_signature(self, z4):
        """Test tail and cycle length of the power sequence."""
        assert z4.power_signature(2) == (1, 1)
        assert z4.power_signature(3) == (0, 2)

    def test_element_arithmetic(self, z6):
        """Test operator overloading with int coercion of 0 and 1."""
        x = z6.element(2)
        assert (x + 1).index == 3
        assert (1 - x).index == 5
        assert (x * z6.element(3)).is_zero()
        assert (x ** 2).index == 4
        assert (x ** 0).index == z6.one
        assert int(-x) == 4

    def test_element_rejects_other_rings(self, z4, z6):
        """Test that elements of different rings do not mix."""
        with pytest.raises(RingError, match="different rings"):
            z4.element(1) + z6.element(1)

    def test_element_rejects_other_ints(self, z6):
        """Test that only 0 and 1 are coerced."""
        with pytest.raises(TypeError):
            z6.element(1) + 2


class TestConstructors:
    """Test polynomial quotients, fields and products."""

    def test_f4_is_a_field(self):
        """Test that F_2[x]/(x^2+x+1) has every nonzero element invertible."""
        f4 = make_poly_quotient(2, [1, 1, 1])
        assert f4.size == 4
        assert f4.units_mask() == 0b1110

    def test_nilpotent_quotient(self):
        """Test that x is nilpotent in F_2[x]/(x^2)."""
        ring = make_poly_quotient(2, [0, 0, 1])
        assert ring.times(2, 2) == ring.zero

    def test_split_quotient_is_a_product(self):
        """Test that F_2[x]/(x^2+x) is isomorphic to Z_2 x Z_2."""
        ring = make_poly_quotient(2, [0, 1, 1])
        assert is_isomorphic(ring, make_product(make_zn(2), make_zn(2)))

    def test_poly_quotient_rejects_non_monic(self):
        """Test that non-monic and constant polynomials are refused."""
        with pytest.raises(RingError, match="not monic"):
            make_poly_quotient(3, [1, 2])
        with pytest.raises(RingError, match="not monic"):
            make_poly_quotient(2, [1])

    def test_poly_quotient_rejects_composite_modulus(self):
        """Test that the coefficient ring must be a prime field."""
        with pytest.raises(RingError, match="not prime"):
            make_poly_quotient(4, [1, 1, 1])

    def test_make_field(self):
        """Test that F_q has q - 1 units for prime powers q."""
        for q in (2, 3, 4, 8, 9):
            field = make_field(q)
            assert field.size == q
            assert len(bits(field.units_mask())) == q - 1
        assert make_field(4).name == "F_4"

    def test_make_field_rejects_non_prime_power(self):
        """Test that F_6 does not exist."""
        with pytest.raises(RingError, match="not a prime power"):
            make_field(6)

    def test_irreducible_polynomial(self):
        """Test the first irreducible quadratic over F_2."""
        assert irreducible_polynomial(2, 2) == [1, 1, 1]

    def test_product_indexing(self, z2xz2):
        """Test that (i, j) has index 2i + j and one is (1, 1)."""
        assert z2xz2.size == 4
        assert z2xz2.one == 3
        assert z2xz2.times(2, 1) == 0
        assert z2xz2.plus(2, 1) == 3
        assert z2xz2.name == "Z_2xZ_2"

    @pytest.mark.parametrize("m,n", [(2, 3), (2, 2), (2, 4), (3, 4), (3, 3), (2, 5)])
    def test_product_isomorphic_to_zmn_iff_coprime(self, m, n):
        """Test the Chinese remainder criterion by isomorphism search."""
        product = make_product(make_zn(m), make_zn(n))
        assert is_isomorphic(product, make_zn(m * n)) == (math.gcd(m, n) == 1)

    def test_product_with_zero_ring_rejected(self):
        """Test that a zero factor is refused."""
        zero = FiniteRing(1, [[0]], [[0]], zero=0, one=0, allow_zero=True)
        with pytest.raises(ZeroRingError):
            make_product(make_zn(2), zero)

    def test_projections(self):
        """Test both projections of Z_2 x Z_3."""
        z2, z3 = make_zn(2), make_zn(3)
        product = make_product(z2, z3)
        first = make_projection(product, z2, z3, 0)
        second = make_projection(product, z2, z3, 1)
        assert first.is_surjective() and second.is_surjective()
        assert bits(first.kernel_mask()) == [0, 1, 2]
        assert bits(second.kernel_mask()) == [0, 3]
        with pytest.raises(RingError, match="factor must be 0 or 1"):
            make_projection(product, z2, z3, 2)


class TestQuotientsAndLocalizations:
    """Test quotient rings and localizations."""

    def test_quotient_z4_by_2(self, z4):
        """Test Z_4/(2) is Z_2 with kernel {0, 2}."""
        quotient, q = make_quotient(z4, Ideal(z4, 0b0101))
        assert quotient.size == 2
        assert bits(q.kernel_mask()) == [0, 2]
        assert q.is_surjective()
        assert is_isomorphic(quotient, make_zn(2))

    def test_quotient_z6_by_3(self, z6):
        """Test Z_6/(3) is Z_3 with kernel {0, 3}."""
        quotient, q = make_quotient(z6, Ideal(z6, mask_from([0, 3])))
        assert is_isomorphic(quotient, make_zn(3))
        assert bits(q.kernel_mask()) == [0, 3]

    def test_quotient_of_product(self, z2xz2):
        """Test Z_2 x Z_2 modulo {0} x Z_2 is Z_2."""
        quotient, q = make_quotient(z2xz2, Ideal(z2xz2, 0b0011))
        assert quotient.size == 2
        assert bits(q.kernel_mask()) == [0, 1]

    def test_quotient_by_whole_ring_rejected(self, z6):
        """Test that the zero quotient is refused."""
        with pytest.raises(ZeroRingError):
            make_quotient(z6, Ideal(z6, z6.full_mask))

    def test_quotient_rejects_foreign_ideal(self, z4, z6):
        """Test that the ideal must belong to the ring."""
        with pytest.raises(RingError, match="different ring"):
            make_quotient(z6, Ideal(z4, 0b0101))

    def test_localization_z6_at_3(self, z6):
        """Test Z_6 localized at {1, 3} is Z_2 with kernel {0, 2, 4}."""
        local, f = make_localization(z6, [1, 3])
        assert local.size == 2
        assert f.table == (0, 1, 0, 1, 0, 1)
        assert bits(f.kernel_mask()) == [0, 2, 4]

    def test_localization_at_units_is_identity(self, z4):
        """Test Z_4 localized at {1, 3} keeps every element."""
        local, f = make_localization(z4, [1, 3])
        assert local.size == 4
        assert f.kernel_mask() == 1
        assert f.is_injective()

    def test_localization_at_one(self, z6):
        """Test that S = {1} gives an isomorphism."""
        local, f = make_localization(z6, 1 << z6.one)
        assert f.is_injective() and f.is_surjective()

    def test_localization_makes_s_invertible(self, z6):
        """Test that the image of S consists of units."""
        local, f = make_localization(z6, [1, 3])
        units = local.units_mask()
        assert all(units >> f(s) & 1 for s in (1, 3))

    def test_localization_with_zero_in_s(self, z6):
        """Test that 0 in S gives the zero ring only when allowed."""
        with pytest.raises(ZeroRingError):
            make_localization(z6, [0, 1])
        zero, f = make_localization(z6, [0, 1], allow_zero=True)
        assert zero.size == 1
        assert f.table == (0,) * 6

    def test_localization_rejects_non_closed_set(self, z6):
        """Test that S must be multiplicatively closed and contain one."""
        with pytest.raises(RingError, match="not multiplicatively closed"):
            make_localization(z6, [1, 2])
        with pytest.raises(RingError, match="must contain one"):
            make_localization(z6, [3])

    def test_multiplicative_closure(self, z6):
        """Test closures of single elements in Z_6."""
        assert bits(multiplicative_closure(z6, [3])) == [1, 3]
        assert bits(multiplicative_closure(z6, [2])) == [1, 2, 4]
        assert bits(multiplicative_closure(z6, [5])) == [1, 5]


class TestRingHom:
    """Test homomorphism validation and helpers."""

    def test_valid_reduction(self, z4):
        """Test reduction mod 2 is a homomorphism."""
        f = RingHom(z4, make_zn(2), (0, 1, 0, 1), name="red")
        assert bits(f.kernel_mask()) == [0, 2]
        assert f.image_mask() == 0b11
        assert f.preimage_mask(0b10) == mask_from([1, 3])

    def test_one_must_map_to_one(self, z4):
        """Test that the zero map is not unital."""
        with pytest.raises(RingError, match="does not send one to one"):
            RingHom(z4, make_zn(2), (0, 0, 0, 0), name="zero")

    def test_addition_must_be_preserved(self, z4):
        """Test that a map breaking addition is refused."""
        with pytest.raises(RingError, match="does not preserve addition"):
            RingHom(z4, make_zn(2), (0, 1, 1, 0), name="bad")

    def test_table_length_checked(self, z4):
        """Test that the table covers the domain."""
        with pytest.raises(RingError, match="hom table has 3 entries"):
            RingHom(z4, make_zn(2), (0, 1, 0))

    def test_compose(self, z6):
        """Test composition with the identity and a quotient."""
        quotient, q = make_quotient(z6, Ideal(z6, mask_from([0, 2, 4])))
        composed = q.compose(identity_hom(z6))
        assert composed.table == q.table
        with pytest.raises(RingError, match="not composable"):
            identity_hom(z6).compose(q)

    def test_identity(self, z6):
        """Test the identity homomorphism."""
        f = identity_hom(z6)
        assert f.is_injective() and f.is_surjective()
        assert f.kernel_mask() == 1


class TestSubrings:
    """Test subring pairs, generation and enumeration."""

    def test_pair_validation(self, z6):
        """Test that non-subrings are refused."""
        with pytest.raises(RingError, match="is not a subring of Z_6"):
            SubringPair(z6, 0b11)
        with pytest.raises(RingError, match="empty or out of range"):
            SubringPair(z6, 0)

    def test_extracted_ring(self, diagonal):
        """Test that the diagonal of Z_2 x Z_2 extracts to Z_2."""
        assert diagonal.to_ambient == (0, 3)
        assert diagonal.from_ambient == {0: 0, 3: 1}
        assert diagonal.size == 2
        assert is_isomorphic(diagonal.ring, make_zn(2))
        assert not diagonal.is_whole

    def test_mask_translation(self, diagonal):
        """Test translating subsets between the two numberings."""
        assert diagonal.restrict_mask(0b1000) == 0b10
        assert diagonal.restrict_mask(0b0110) == 0
        assert diagonal.extend_mask(0b10) == 0b1000

    def test_inclusion(self, diagonal):
        """Test the inclusion homomorphism."""
        incl = diagonal.inclusion()
        assert incl.table == (0, 3)
        assert incl.is_injective()
        assert not incl.is_surjective()

    def test_subring_generated(self, z6, z2xz2, f4):
        """Test prime subrings of Z_6, Z_2 x Z_2 and F_4."""
        assert subring_generated(z6, []).is_whole
        assert bits(subring_generated(z2xz2, []).member) == [0, 3]
        assert bits(subring_generated(f4, []).member) == [0, 1]

    def test_subring_generated_is_idempotent(self, f4):
        """Test that closing a generated subring changes nothing."""
        once = subring_generated(f4, [2])
        twice = subring_generated(f4, bits(once.member))
        assert once.member == twice.member

    def test_subring_generated_rejects_bad_generator(self, z6):
        """Test that generators must be elements."""
        with pytest.raises(RingError, match="generator 9 outside"):
            subring_generated(z6, [9])

    def test_enumerate_prime_order(self):
        """Test that Z_p has a single subring."""
        assert len(enumerate_subrings(make_zn(7))) == 1

    def test_enumerate_z2xz2(self, z2xz2):
        """Test that Z_2 x Z_2 has the diagonal and itself."""
        assert [bits(p.member) for p in enumerate_subrings(z2xz2)] == [[0, 3], [0, 1, 2, 3]]

    def test_enumerate_f4(self, f4):
        """Test that F_4 has F_2 and itself."""
        assert [p.size for p in enumerate_subrings(f4)] == [2, 4]

    def test_enumerate_above_cap(self, z6):
        """Test that a ring above the cap is refused, not truncated."""
        with pytest.raises(CapExceededError, match="ring size 6 exceeds cap 4"):
            enumerate_subrings(z6, cap=4)

    def test_enumerate_reports_completeness(self, z2xz2):
        """Test the completeness flag in exhaustive mode."""
        found, complete = enumerate_subrings_with_status(z2xz2)
        assert complete
        assert len(found) == 2


class TestIsomorphism:
    """Test the isomorphism search."""

    def test_z6_and_z2xz3(self):
        """Test that the found isomorphism is a valid ring map."""
        iso = find_isomorphism(make_product(make_zn(2), make_zn(3)), make_zn(6))
        assert iso is not None
        assert iso.is_injective() and iso.is_surjective()

    def test_z4_not_z2xz2(self, z4, z2xz2):
        """Test that Z_4 and Z_2 x Z_2 are told apart."""
        assert not is_isomorphic(z4, z2xz2)
        assert find_isomorphism(z4, make_zn(5)) is None

    def test_f4_not_z2xz2(self, f4, z2xz2):
        """Test that F_4 and Z_2 x Z_2 are told apart."""
        assert not is_isomorphic(f4, z2xz2)
