"""Tests for subring density and the induced spectral maps."""

import pytest

from spectral_workbench.density import (
    DensityError,
    DensityMode,
    comaximal_contractions,
    contraction,
    contractions_incomparable,
    cvu_set,
    dense,
    is_dense,
    lambda_map,
    pair_contraction,
    theta_map,
    weak_cn_wrt,
)
from spectral_workbench.ideals import principal_ideal
from spectral_workbench.rings import SubringPair, enumerate_subrings, make_quotient, make_zn
from spectral_workbench.topology import map_props
from spectral_workbench.utils import Failure


class TestIsDense:
    """Test the density check in both modes."""

    def test_diagonal_not_dense(self, diagonal):
        """Test that the diagonal fails at the ideal {0, (0,1)} with b = (1,0)."""
        report = is_dense(diagonal, DensityMode.DEFINITION)
        assert not report
        assert report.failure_witness() == {"ideal": [0, 1], "b": 2}

    def test_diagonal_primes_mode(self, diagonal):
        """Test that the primes scan finds the same failure."""
        report = is_dense(diagonal, "primes")
        assert report.mode is DensityMode.PRIMES
        assert report.failure_witness() == {"ideal": [0, 1], "b": 2}

    def test_whole_ring_is_dense(self, whole_z6):
        """Test that A = B is dense, with a witness for every pair checked."""
        report = is_dense(whole_z6)
        assert report.dense
        assert report.failure_witness() is None
        assert report.witness_table

    def test_witnesses_are_valid(self, f4):
        """Test every recorded witness of F_2 in F_4."""
        pair = SubringPair(f4, 0b0011)
        report = is_dense(pair)
        assert report.dense
        for (ideal, b), a in report.witness_table.items():
            assert not ideal >> a & 1
            assert pair.contains(f4.times(a, b))

    def test_unknown_mode(self, diagonal):
        """Test that modes are validated."""
        with pytest.raises(ValueError):
            is_dense(diagonal, "sometimes")

    def test_cached_flag(self, diagonal, whole_z6):
        """Test the cached primes-mode flag."""
        assert dense(diagonal) is False
        assert dense(whole_z6) is True

    def test_modes_agree_and_match_injectivity(self):
        """Test definition mode, primes mode and injectivity of i* on every pair up to size 12."""
        from spectral_workbench.rings import make_field, make_product

        z2, z3 = make_zn(2), make_zn(3)
        rings = [make_zn(n) for n in range(2, 13)]
        rings += [make_product(z2, z2), make_product(z2, z3), make_product(z2, make_zn(4)),
                  make_product(make_product(z2, z2), z2), make_field(4), make_field(8)]
        for ring in rings:
            for pair in enumerate_subrings(ring):
                by_definition = is_dense(pair, DensityMode.DEFINITION).dense
                by_primes = is_dense(pair, DensityMode.PRIMES).dense
                assert by_definition == by_primes
                assert by_definition == map_props(pair_contraction(pair)).injective


class TestContraction:
    """Test the induced map on spectra."""

    def test_reduction_mod_two(self, z4):
        """Test that Spec Z_2 -> Spec Z_4 sends the point to (2)."""
        quotient, q = make_quotient(z4, principal_ideal(z4, 2))
        star = contraction(q)
        assert star.name == "q*"
        assert star.table == (0,)
        assert star.target.points[0].elements() == [0, 2]

    def test_diagonal_contraction_collapses(self, diagonal):
        """Test that both primes of Z_2 x Z_2 contract to (0) of the diagonal."""
        props = map_props(pair_contraction(diagonal))
        assert props.continuous
        assert props.surjective
        assert not props.injective

    def test_whole_ring_contraction_is_homeomorphism(self, whole_z6):
        """Test that the identity pair contracts to a homeomorphism."""
        assert map_props(pair_contraction(whole_z6)).homeomorphism


class TestInducedMaps:
    """Test lambda and theta."""

    def test_lambda_on_diagonal(self, diagonal):
        """Test that lambda merges the two maximal ideals."""
        lam = lambda_map(diagonal)
        assert lam.name == "lambda"
        assert lam.table == (0, 0)
        assert not map_props(lam).injective

    def test_lambda_on_whole_ring(self, whole_z6):
        """Test that lambda is a bijection for A = B."""
        lam = lambda_map(whole_z6)
        assert lam.table == (0, 1)

    def test_theta_requires_density(self, diagonal):
        """Test that theta is refused for a non-dense pair."""
        result = theta_map(diagonal)
        assert isinstance(result, Failure)
        assert result.reason == "subring is not dense"

    def test_theta_on_dense_pair(self, whole_z6):
        """Test theta for A = B."""
        theta = theta_map(whole_z6)
        assert theta.name == "theta"
        assert theta.table == (0, 1)
        assert map_props(theta).homeomorphism


class TestMaximalPairs:
    """Test the predicates on contractions of maximal ideals."""

    def test_whole_ring(self, whole_z6):
        """Test that distinct maximal ideals of Z_6 stay comaximal."""
        assert comaximal_contractions(whole_z6)
        assert contractions_incomparable(whole_z6)
        assert weak_cn_wrt(whole_z6)

    def test_diagonal(self, diagonal):
        """Test that the diagonal merges its maximal contractions."""
        assert not comaximal_contractions(diagonal)
        assert not contractions_incomparable(diagonal)
        assert weak_cn_wrt(diagonal)

    def test_local_ring(self, z4):
        """Test that a single maximal ideal gives nothing to compare."""
        pair = SubringPair(z4, z4.full_mask)
        assert comaximal_contractions(pair)
        assert contractions_incomparable(pair)


class TestCvu:
    """Test the sets (c : v)."""

    def test_whole_z9(self):
        """Test (c : 5) for u = 2 in Z_9 is everything."""
        z9 = make_zn(9)
        result = cvu_set(SubringPair(z9, z9.full_mask), 2, 5)
        assert result.elements() == list(range(9))
        assert result.is_subset and result.is_ideal and result.nonzero

    def test_diagonal_unit(self, diagonal):
        """Test (c : v) for the identity of the diagonal."""
        result = cvu_set(diagonal, 3, 3)
        assert result.elements() == [0, 3]
        assert result.is_ideal

    def test_u_must_be_in_subring(self, diagonal):
        """Test that u is taken from A."""
        with pytest.raises(DensityError, match="1 is not an element of the subring"):
            cvu_set(diagonal, 1, 1)

    def test_v_must_invert_u(self, whole_z6):
        """Test that u v must be one."""
        with pytest.raises(DensityError, match="2 is not an inverse of 5"):
            cvu_set(whole_z6, 5, 2)
