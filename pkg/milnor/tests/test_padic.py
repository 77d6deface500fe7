from __future__ import annotations

from django.test import SimpleTestCase

from milnor.exceptions import ExponentOverflowError, InvalidOperationError, NotInIndexSetError
from milnor.padic import (
    PadicDigits,
    b_func,
    c_func,
    count_decompositions,
    digits,
    i_recursion_sides,
    in_index_set_I,
    in_index_set_J,
    index_set_I,
    index_set_J,
    j_decompose,
    j_recursion_sides,
    multinomial_mod_p,
)


class DigitTests(SimpleTestCase):
    def test_digits(self):
        assert digits(10, 3) == (1, 0, 1)
        assert digits(0, 5) == ()
        with self.assertRaises(InvalidOperationError):
            digits(-1, 3)

    def test_padic_digits(self):
        d = PadicDigits.of(46, 3)
        assert d.alpha(0) == 1
        assert d.alpha(-1) == 0
        assert d.alpha(9) == 0
        assert d.value() == 46

    def test_multinomial(self):
        assert multinomial_mod_p([1, 1], 3) == 2
        assert multinomial_mod_p([2, 2], 3) == 0
        assert multinomial_mod_p([3, 1], 3) == 1
        assert multinomial_mod_p([0, 4], 5) == 1
        assert multinomial_mod_p([2, 1, 1], 5) == 2


class IndexSetTests(SimpleTestCase):
    def test_small_windows(self):
        for u in range(3):
            assert index_set_I(3, u, u + 1) == {0}
            assert index_set_I(3, u, u + 2) == {0}
            assert index_set_J(3, u, u + 1) == {0}
            assert index_set_J(3, u, u + 2) == {0}

    def test_i_two_digit_window(self):
        assert index_set_I(3, 0, 4) == {0, 1, 3}

    def test_j_keeps_the_lone_bottom_digit(self):
        assert index_set_J(3, 2, 5) == {0, 9}

    def test_j_excludes_three_in_a_row(self):
        members = index_set_J(3, 0, 6)
        assert 1 + 3 in members
        assert 1 + 3 + 9 not in members
        assert 1 + 9 + 27 in members
        assert 2 not in members

    def test_membership_matches_enumeration(self):
        for p in (3, 5):
            everything = range(p**6)
            assert {a for a in everything if in_index_set_I(p, 0, 8, a)} == index_set_I(p, 0, 8)
            assert {a for a in everything if in_index_set_J(p, 0, 8, a)} == index_set_J(p, 0, 8)

    def test_window_validation(self):
        with self.assertRaises(InvalidOperationError):
            index_set_I(3, 2, 2)
        with self.assertRaises(InvalidOperationError):
            index_set_J(3, -1, 4)

    def test_windows_beyond_the_exponent_range(self):
        with self.assertRaises(ExponentOverflowError):
            index_set_I(3, 0, 10**6)
        with self.assertRaises(ExponentOverflowError):
            index_set_J(3, 10**9, 10**9 + 4)
        with self.assertRaises(ExponentOverflowError):
            in_index_set_J(3, 0, 10**9, 5)
        assert in_index_set_I(3, 0, 40, 1)

    def test_recursions(self):
        for p in (3, 5):
            for u in range(3):
                for v in range(u + 1, u + 7):
                    with self.subTest(p=p, u=u, v=v):
                        lhs, rhs = i_recursion_sides(p, u, v)
                        assert lhs == rhs
                        lhs, rhs = j_recursion_sides(p, u, v)
                        assert lhs == rhs


class DecompositionTests(SimpleTestCase):
    def test_zero(self):
        dec = j_decompose(3, 0, 6, 0)
        assert dec.blocks == ()
        assert dec.parts == (0,)
        assert b_func(3, 0, 6, 0) == (3**5 - 1) // 2
        assert c_func(3, 0, 6, 0) == 0

    def test_single_pair(self):
        dec = j_decompose(3, 1, 6, 3 + 9)
        assert dec.blocks == (1,)
        assert dec.parts == (0, 0)

    def test_parts_land_in_their_windows(self):
        a = 1 + 9 + 27 + 243
        dec = j_decompose(3, 0, 9, a)
        assert dec.blocks == (2,)
        assert dec.parts == (1, 243)
        assert dec.windows() == [(0, 3), (5, 9)]
        assert c_func(3, 0, 9, a) == 244

    def test_reassembly_and_uniqueness(self):
        for a in sorted(index_set_J(3, 0, 9)):
            with self.subTest(a=a):
                assert j_decompose(3, 0, 9, a).reassemble() == a
                assert count_decompositions(3, 0, 9, a) == 1

    def test_b_is_a_valid_exponent(self):
        for p in (3, 5):
            for a in index_set_J(p, 0, 8):
                assert b_func(p, 0, 8, a) >= 0

    def test_outside_j(self):
        with self.assertRaises(NotInIndexSetError):
            j_decompose(3, 0, 6, 2)
        with self.assertRaises(NotInIndexSetError):
            b_func(3, 0, 6, 1 + 3 + 9)
