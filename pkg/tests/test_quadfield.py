"""Field data, ideal lattices, class numbers, and unit orders."""

from fractions import Fraction
import random

import pytest

from heckezero.errors import NotAnIdeal, NotSquarefree
from heckezero.exact import QuadSurd
from heckezero.quadfield import (FieldData, IdealLattice, class_numbers,
                                 ideal_inverse, ideal_norm,
                                 is_fractional_ideal, lattice_product,
                                 make_field, maximal_order, norm_residue,
                                 unit_order_mod_q)

FUND_UNITS = {
    2: QuadSurd(1, 1, 1, 2),
    3: QuadSurd(2, 1, 1, 3),
    5: QuadSurd(1, 1, 2, 5),
    13: QuadSurd(3, 1, 2, 13),
    29: QuadSurd(5, 1, 2, 29),
    229: QuadSurd(15, 1, 2, 229),
}

CLASS_NUMBERS = {
    2: (1, 1),
    3: (1, 2),
    5: (1, 1),
    13: (1, 1),
    15: (2, 4),
    79: (3, 6),
    82: (4, 4),
    199: (1, 2),
    229: (3, 3),
    293: (1, 1),
}


class TestMakeField:
    def test_rejects_bad_d(self):
        for d in (1, 0, -3, 12):
            with pytest.raises((NotSquarefree, ValueError)):
                make_field(d)

    @pytest.mark.parametrize("d,eps", sorted(FUND_UNITS.items()))
    def test_fundamental_unit(self, d, eps):
        F = make_field(d)
        assert F.fund_unit == eps
        assert F.fund_unit_norm in (1, -1)
        assert eps.norm() == F.fund_unit_norm

    @pytest.mark.parametrize("d", sorted(FUND_UNITS))
    def test_totally_positive_unit(self, d):
        F = make_field(d)
        eps = F.tp_fund_unit
        assert eps.norm() == 1
        assert eps > 1 and 0 < eps.conj() < 1
        if F.fund_unit_norm == -1:
            assert eps == F.fund_unit * F.fund_unit
        else:
            assert eps == F.fund_unit

    def test_discriminant(self):
        assert make_field(5).discriminant == 5
        assert make_field(2).discriminant == 8
        assert make_field(3).discriminant == 12
        assert make_field(13).discriminant == 13


class TestClassNumbers:
    @pytest.mark.parametrize("d,expected", sorted(CLASS_NUMBERS.items()))
    def test_frozen_values(self, d, expected):
        assert class_numbers(d) == expected

    @pytest.mark.parametrize("d", sorted(CLASS_NUMBERS))
    def test_narrow_ratio(self, d):
        # h+ equals h or 2h, with h+ = h exactly when a norm -1 unit exists.
        F = make_field(d)
        h, h_plus = class_numbers(d)
        if F.fund_unit_norm == -1:
            assert h_plus == h
        else:
            assert h_plus == 2 * h


class TestIdealLattice:
    def test_maximal_order(self):
        F = make_field(5)
        O = maximal_order(F)
        assert ideal_norm(F, O) == 1
        assert is_fractional_ideal(F, O)

    def test_norm_multiplicative(self):
        random.seed(7)
        for d in (2, 3, 5, 13, 15, 29):
            F = make_field(d)
            O = maximal_order(F)
            for _ in range(10):
                a = QuadSurd(random.randint(-9, 9), random.randint(1, 9),
                             1, d)
                L = lattice_product(F, O, _principal(F, a))
                M = lattice_product(F, O, _principal(F, a + 1))
                prod = lattice_product(F, L, M)
                assert ideal_norm(F, prod) == ideal_norm(F, L) * ideal_norm(F, M)

    def test_inverse(self):
        random.seed(11)
        for d in (2, 3, 5, 13, 15, 29):
            F = make_field(d)
            O = maximal_order(F)
            for _ in range(10):
                a = QuadSurd(random.randint(-9, 9), random.randint(1, 9), 1, d)
                L = lattice_product(F, O, _principal(F, a))
                inv = ideal_inverse(F, L)
                assert lattice_product(F, L, inv) == O
                assert ideal_norm(F, L) * ideal_norm(F, inv) == 1

    def test_non_ideal_lattice(self):
        # [1, sqrt(2)]/2 is a lattice but not stable under the order of Q(sqrt 2)
        F = make_field(5)
        L = IdealLattice(2, 0, 1, 2)
        assert not is_fractional_ideal(F, L)


def _principal(F, a):
    """The principal fractional ideal a*O as a lattice."""
    return IdealLattice.from_surds(a, a * F.omega, F)


class TestNormResidue:
    def test_trivial_ideal(self):
        # b = O, delta = (3+sqrt5)/2: N((C+D*delta)) mod q.
        F = make_field(5)
        O = maximal_order(F)
        delta = QuadSurd(3, 1, 2, 5)
        q = 3
        for C in range(1, q + 1):
            for D in range(1, q + 1):
                x = C + D * delta
                want = int(x.norm()) % q
                assert norm_residue(F, O, delta, C, D, q) == want


class TestUnitOrder:
    def test_known_orders(self):
        # the totally positive unit of Q(sqrt5) is (3+sqrt5)/2, the square of
        # the golden ratio; its reduction mod 4 has order 3, mod 3 order 4.
        assert unit_order_mod_q(make_field(5), 4) == 3
        assert unit_order_mod_q(make_field(5), 3) == 4
        assert unit_order_mod_q(make_field(5), 1) == 1

    @pytest.mark.parametrize("d", [2, 3, 5, 13, 15, 29])
    @pytest.mark.parametrize("q", [2, 3, 5, 7])
    def test_order_annihilates(self, d, q):
        F = make_field(d)
        lam = unit_order_mod_q(F, q)
        eps = F.tp_fund_unit ** lam
        c = eps.coords(F.omega)
        assert c[0].denominator == 1 and c[1].denominator == 1
        assert (int(c[0]) - 1) % q == 0 and int(c[1]) % q == 0
