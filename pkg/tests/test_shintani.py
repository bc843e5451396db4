"""The cone engine: digit orbits, per-cell zeta values, L-values at s=0."""

from fractions import Fraction

import pytest

from heckezero.cfrac import MinusCF, minus_expand
from heckezero.characters import DirichletCharacter, gen_bernoulli_b1
from heckezero.errors import (DeltaOutOfRange, IdealNotCoprime,
                              IncompatiblePair)
from heckezero.exact import QuadSurd
from heckezero.quadfield import (IdealLattice, ideal_inverse, make_field,
                                 maximal_order)
from heckezero.shintani import (check_delta_hypotheses, lattice_unit_order,
                                orbit_shift_check, partial_hecke_L_zero,
                                partial_zeta_zero, partial_zeta_zero_reference,
                                yamamoto_identity_residual, yamamoto_sequence)

CHI3 = DirichletCharacter.from_identifier("q=3;gens=2:1")   # quadratic mod 3


class TestYamamotoSequence:
    def test_seed_values(self):
        seq = yamamoto_sequence(3, 1, 1, MinusCF((), (3,)), steps=4)
        # x_{-1} = 1 - C/q mapped into (0,1], x_0 = D/q
        assert seq.x_at(-1) == Fraction(2, 3)
        assert seq.x_at(0) == Fraction(1, 3)
        # x_{i+1} = frac_pos(b_i x_i - x_{i-1})
        assert seq.x_at(1) == Fraction(1, 3)
        assert seq.x_at(2) == Fraction(2, 3)

    def test_range_invariant(self):
        for word in ((3,), (4, 2), (5, 2, 2)):
            for q in (2, 3, 5):
                for C in range(1, q + 1):
                    for D in range(1, q + 1):
                        seq = yamamoto_sequence(q, C, D, MinusCF((), word),
                                                steps=12)
                        for i in range(-1, 12):
                            x = seq.x_at(i)
                            assert 0 < x <= 1 and (q * x).denominator == 1

    def test_boundary_seed(self):
        # C = q gives x_{-1} = 1 (not 0)
        seq = yamamoto_sequence(3, 3, 1, MinusCF((), (3,)), steps=2)
        assert seq.x_at(-1) == 1


class TestPartialZeta:
    def test_oracles(self):
        assert partial_zeta_zero(3, 1, 1, MinusCF((), (3,))) == Fraction(-1, 9)
        assert partial_zeta_zero(3, 1, 1, MinusCF((), (4, 2))) == Fraction(2, 9)

    def test_q_one_vanishes(self):
        # the two maximal-order words; an arbitrary word need not vanish
        for word in ((3,), (4, 2)):
            assert partial_zeta_zero(1, 1, 1, MinusCF((), word)) == 0

    def test_dual_route_agreement(self):
        # integer kernel vs the direct Bernoulli-polynomial sum
        for word in ((3,), (4, 2), (5, 2, 2), (7, 2, 3)):
            mcf = MinusCF((), word)
            for q in (2, 3, 4, 5):
                for C in range(1, q + 1):
                    for D in range(1, q + 1):
                        assert partial_zeta_zero(q, C, D, mcf) == \
                            partial_zeta_zero_reference(q, C, D, mcf)

    def test_q_squared_integrality(self):
        for word in ((3,), (4, 2), (5, 2, 2)):
            mcf = MinusCF((), word)
            for q in (3, 5, 7):
                for C in range(1, q + 1):
                    for D in range(1, q + 1):
                        v = partial_zeta_zero(q, C, D, mcf) * 12 * q * q
                        assert v.denominator == 1


class TestDeltaHypotheses:
    def test_accepts_reduced(self):
        check_delta_hypotheses(QuadSurd(3, 1, 2, 5))
        check_delta_hypotheses(QuadSurd(2, 1, 1, 2))

    def test_rejects(self):
        with pytest.raises(DeltaOutOfRange):
            check_delta_hypotheses(QuadSurd(1, 1, 2, 5))    # < 2
        with pytest.raises(DeltaOutOfRange):
            check_delta_hypotheses(QuadSurd(0, 1, 1, 5))    # conj < 0


class TestHeckeL:
    def test_oracle_d5(self):
        F = make_field(5)
        delta = QuadSurd(3, 1, 2, 5)
        b = maximal_order(F)
        val = partial_hecke_L_zero(F, delta, b, CHI3)
        assert val == Fraction(2, 3)

    def test_oracle_d2(self):
        F = make_field(2)
        delta = QuadSurd(2, 1, 1, 2)
        b = ideal_inverse(F, IdealLattice.from_surds(
            QuadSurd.from_rational(1, 2), delta, F))
        val = partial_hecke_L_zero(F, delta, b, CHI3)
        assert val == Fraction(2, 3)

    def test_matches_bernoulli_product(self):
        # 2/3 = (-1/3) * (-2) with the two first Bernoulli numbers
        from heckezero.characters import char_eval, kronecker
        assert gen_bernoulli_b1(CHI3) == Fraction(-1, 3)
        psi = lambda a: char_eval(CHI3, a) * kronecker(5, a)
        assert gen_bernoulli_b1(psi, 15) == Fraction(-2)

    def test_rejects_incompatible_pair(self):
        F = make_field(5)
        delta = QuadSurd(3, 1, 2, 5)
        bad = IdealLattice(3, 0, 3, 1)      # 3O: product is 3O, not O
        with pytest.raises(IncompatiblePair):
            partial_hecke_L_zero(F, delta, bad, CHI3)

    def test_rejects_non_coprime(self):
        # [1, (11+sqrt79)/3] is the inverse of the norm-3 prime [3, 1+sqrt79]
        F = make_field(79)
        delta = QuadSurd(11, 1, 3, 79)
        b = IdealLattice(3, 1, 1, 1)
        with pytest.raises(IdealNotCoprime):
            partial_hecke_L_zero(F, delta, b, CHI3)


class TestIdentity:
    @pytest.mark.parametrize("d", [2, 3, 5, 13, 15, 29])
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_residual_zero(self, d, q):
        F = make_field(d)
        mcf = minus_expand(F.tp_fund_unit)
        for C in range(1, q + 1):
            for D in range(1, q + 1):
                assert yamamoto_identity_residual(F, mcf, q, C, D) == 0

    def test_lattice_unit_order_vs_order_order(self):
        # [1, 2*sqrt2] has index 2 in the order of Q(sqrt2): mod q = 2 the
        # unit acts trivially on O/2O but swaps the basis of the sublattice
        F = make_field(2)
        delta = QuadSurd(3, 2, 1, 2)       # 3 + 2*sqrt2, the tp unit itself
        from heckezero.quadfield import unit_order_mod_q
        assert unit_order_mod_q(F, 2) == 1
        assert lattice_unit_order(F, delta, 2) == 2

    @pytest.mark.parametrize("d", [2, 3, 5, 13, 15])
    def test_orbit_shift(self, d):
        F = make_field(d)
        mcf = minus_expand(F.tp_fund_unit)
        for q in (2, 3, 5):
            for C in range(1, q + 1):
                for D in range(1, q + 1):
                    assert orbit_shift_check(F, mcf, q, C, D)
