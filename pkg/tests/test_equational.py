"""Tests for the equational complete-normality test."""

import pytest

from spectral_workbench.equational import CnWitness, cn_equational, cn_witness
from spectral_workbench.rings import make_field, make_product, make_zn
from spectral_workbench.validation import CapExceededError


class TestCnWitness:
    """Test the witness search for a single pair."""

    def test_nilpotent_pair_in_z4(self, z4):
        """Test the smallest witness for s = a = 2 in Z_4."""
        witness = cn_witness(z4, 2, 2)
        assert witness == CnWitness(s=2, a=2, x=0, x_prime=0, k=1)
        assert witness.evaluate(z4)

    def test_zero_s(self, z6):
        """Test that s = 0 is witnessed at k = 1."""
        witness = cn_witness(z6, 0, 5)
        assert witness.k == 1
        assert witness.evaluate(z6)

    def test_unit_s(self, f4):
        """Test that every pair in a field has a witness."""
        for s in range(1, 4):
            for a in range(4):
                assert cn_witness(f4, s, a).evaluate(f4)

    def test_to_dict(self, z4):
        """Test the JSON form of a witness."""
        assert cn_witness(z4, 2, 2).to_dict() == {"s": 2, "a": 2, "x": 0, "x_prime": 0, "k": 1}

    def test_evaluate_rejects_wrong_witness(self, z6):
        """Test that evaluate recomputes instead of trusting the fields."""
        assert not CnWitness(s=1, a=0, x=0, x_prime=0, k=1).evaluate(z6)


class TestCnEquational:
    """Test the identity over whole rings."""

    @pytest.mark.parametrize("make", [
        lambda: make_zn(6),
        lambda: make_zn(12),
        lambda: make_field(4),
        lambda: make_product(make_zn(2), make_zn(4)),
    ])
    def test_holds_on_finite_rings(self, make):
        """Test that the identity holds, since finite spectra are discrete."""
        ring = make()
        result = cn_equational(ring)
        assert result
        assert result.failure is None
        assert len(result.witnesses) == ring.size ** 2

    def test_cap(self):
        """Test that rings above the cap are refused."""
        with pytest.raises(CapExceededError, match="ring size 9 exceeds cap 8"):
            cn_equational(make_zn(9), cap=8)
