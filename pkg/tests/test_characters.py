"""Dirichlet characters, generalized Bernoulli numbers, mod-p realizations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckezero.characters import (DirichletCharacter, char_eval,
                                  char_invariants, enumerate_characters,
                                  gen_bernoulli_b1, is_primitive, kronecker,
                                  modp_realizations)
from heckezero.exact import CycloElement

CHI3 = DirichletCharacter.from_identifier("q=3;gens=2:1")


class TestEnumeration:
    @pytest.mark.parametrize("q,count", [(3, 2), (5, 4), (7, 6), (8, 4),
                                         (9, 6), (15, 8), (21, 12)])
    def test_group_size(self, q, count):
        chars = enumerate_characters(q)
        assert len(chars) == count
        assert sum(1 for c in chars if c.is_trivial()) == 1

    def test_identifier_round_trip(self):
        for q in (3, 5, 7, 8, 9, 15, 21):
            for chi in enumerate_characters(q):
                again = DirichletCharacter.from_identifier(chi.identifier())
                assert again == chi

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 15])
    def test_multiplicativity(self, q):
        for chi in enumerate_characters(q):
            for a in range(1, q + 1):
                for b in range(1, q + 1):
                    assert char_eval(chi, a * b) == \
                        char_eval(chi, a) * char_eval(chi, b)

    @pytest.mark.parametrize("q", [3, 5, 7, 9, 15])
    def test_orthogonality(self, q):
        # sum over the group of chi(a) is 0 unless a = 1 mod q
        chars = enumerate_characters(q)
        for a in range(2, q):
            s = CycloElement.zero(1)
            for chi in chars:
                s = s + char_eval(chi, a)
            expect = len(chars) if a % q == 1 else 0
            assert s == expect


class TestInvariants:
    def test_quadratic_mod3(self):
        assert char_invariants(CHI3) == ("odd", 3)
        assert is_primitive(CHI3)
        assert CHI3.order == 2

    def test_parity_counts(self):
        for q in (5, 7, 9):
            chars = enumerate_characters(q)
            odd = [c for c in chars if char_invariants(c)[0] == "odd"]
            assert len(odd) == len(chars) // 2

    def test_imprimitive(self):
        # the character mod 9 induced from the quadratic mod 3
        chars = enumerate_characters(9)
        conds = sorted(char_invariants(c)[1] for c in chars)
        assert conds == [1, 3, 9, 9, 9, 9]

    def test_conjugate(self):
        for chi in enumerate_characters(5):
            cc = chi.conjugate()
            for a in range(1, 6):
                prod = char_eval(chi, a) * char_eval(cc, a)
                if char_eval(chi, a).is_zero():
                    assert prod == 0
                else:
                    assert prod == 1


class TestBernoulli:
    def test_frozen_values(self):
        assert gen_bernoulli_b1(CHI3) == Fraction(-1, 3)
        # quartic character mod 5 sending 2 -> zeta_4: B1 = (-3 - zeta_4)/5
        chi5 = DirichletCharacter.from_identifier("q=5;gens=2:1")
        want = CycloElement(4, (Fraction(-3, 5), Fraction(-1, 5)))
        assert gen_bernoulli_b1(chi5) == want

    def test_odd_product_character(self):
        # chi3 * kronecker(5, .) mod 15 has B1 = -2
        from heckezero.characters import char_eval
        psi = lambda a: char_eval(CHI3, a) * kronecker(5, a)
        assert gen_bernoulli_b1(psi, 15) == Fraction(-2)

    @pytest.mark.parametrize("q", [3, 5, 7])
    def test_even_characters_vanish(self, q):
        for chi in enumerate_characters(q):
            if char_invariants(chi)[0] == "even" and not chi.is_trivial():
                assert gen_bernoulli_b1(chi) == 0


class TestKronecker:
    def test_known_values(self):
        assert kronecker(5, 2) == -1
        assert kronecker(5, 4) == 1
        assert kronecker(8, 3) == -1
        assert kronecker(8, 7) == 1
        assert kronecker(5, 5) == 0

    def test_periodicity_and_multiplicativity(self):
        for D in (5, 8, 12, 13):
            for a in range(1, 40):
                assert kronecker(D, a) == kronecker(D, a + D)
                for b in range(1, 12):
                    assert kronecker(D, a * b) == \
                        kronecker(D, a) * kronecker(D, b)


class TestRealizations:
    def test_quadratic_mod3_to_p5(self):
        # order 2 mod 5: only t = 4
        reals = modp_realizations(CHI3, 5)
        assert [r.zeta_image for r in reals] == [4]
        assert all(r.p == 5 and r.order == 2 for r in reals)

    def test_quartic_mod5_to_p5(self):
        chi5 = DirichletCharacter.from_identifier("q=5;gens=2:1")
        reals = modp_realizations(chi5, 5)
        assert sorted(r.zeta_image for r in reals) == [2, 3]

    def test_apply_is_ring_map(self):
        chi5 = DirichletCharacter.from_identifier("q=5;gens=2:1")
        for real in modp_realizations(chi5, 13):
            p = real.p
            x = char_eval(chi5, 2) + char_eval(chi5, 3) * 7
            y = char_eval(chi5, 4) - 2
            assert real.apply(x * y) == (real.apply(x) * real.apply(y)) % p
            assert real.apply(x + y) == (real.apply(x) + real.apply(y)) % p
