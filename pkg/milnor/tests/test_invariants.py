from __future__ import annotations

from itertools import combinations

from django.test import SimpleTestCase

from milnor.algebra import Context, apply_matrix, degree, make_generator, mul, power
from milnor.codec import parse_element
from milnor.exceptions import ArityError, IndexOutOfRangeError, InvalidOperationError, UnknownIdentifierError
from milnor.invariants import (
    B,
    BracketSpec,
    InvariantName,
    L,
    Ls,
    bracket,
    dickson_q,
    divide_by_L,
    mui_expansion_check,
    mui_m,
    mui_v,
)
from milnor.tests.factories import matrices, rng, special_linear, unitriangular


class BracketTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 3)

    def test_rank_one_and_two(self):
        assert L(self.ctx, 0) == 1
        assert L(self.ctx, 1) == make_generator(self.ctx, "y", 1)
        assert L(self.ctx, 2) == parse_element(self.ctx, "y1*y2^3 + 2*y1^3*y2")

    def test_repeated_exponent_vanishes(self):
        assert B(self.ctx, 0, (1, 1)).is_zero

    def test_swapping_columns_negates(self):
        assert B(self.ctx, 1, (0, 2)) == -B(self.ctx, 1, (2, 0))

    def test_exterior_bracket(self):
        assert B(self.ctx, 1, ()) == make_generator(self.ctx, "x", 1)
        x1, x2 = make_generator(self.ctx, "x", 1), make_generator(self.ctx, "x", 2)
        y1, y2 = make_generator(self.ctx, "y", 1), make_generator(self.ctx, "y", 2)
        assert B(self.ctx, 1, (0,)) == x1 * y2 - x2 * y1

    def test_degree(self):
        assert degree(B(self.ctx, 1, (0, 1))) == 1 + 2 * (1 + 3)

    def test_shape_errors(self):
        with self.assertRaises(ArityError):
            BracketSpec(self.ctx, 1, (0,), 3)
        with self.assertRaises(IndexOutOfRangeError):
            BracketSpec(self.ctx, 2, (), 1)
        with self.assertRaises(InvalidOperationError):
            BracketSpec(self.ctx, 0, (-1,), 1)

    def test_spec_text(self):
        assert str(BracketSpec(self.ctx, 1, (0, 2), 3)) == "B(1;[0,2];3)"


class DicksonTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 3)

    def test_q_times_l_is_ls(self):
        for n in (1, 2, 3):
            for s in range(n):
                with self.subTest(n=n, s=s):
                    assert dickson_q(self.ctx, n, s) * L(self.ctx, n) == Ls(self.ctx, n, s)

    def test_self_check_passes(self):
        dickson_q(self.ctx, 2, 0, self_check=True)
        mui_v(self.ctx, 3, self_check=True)

    def test_boundary_values(self):
        assert dickson_q(self.ctx, 2, 2) == 1
        assert dickson_q(self.ctx, 2, -1).is_zero
        with self.assertRaises(IndexOutOfRangeError):
            dickson_q(self.ctx, 2, 3)

    def test_degree(self):
        p = self.ctx.p
        for s in range(3):
            assert degree(dickson_q(self.ctx, 3, s)) == 2 * (p**3 - p**s)

    def test_divide_by_l(self):
        assert divide_by_L(Ls(self.ctx, 2, 0), 2) == dickson_q(self.ctx, 2, 0)


class MuiTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 3)

    def test_v_is_a_quotient_of_l(self):
        assert mui_v(self.ctx, 1) == L(self.ctx, 1)
        for m in (2, 3):
            assert mul(mui_v(self.ctx, m), L(self.ctx, m - 1)) == L(self.ctx, m)

    def test_v_range(self):
        with self.assertRaises(IndexOutOfRangeError):
            mui_v(self.ctx, 0)

    def test_m_with_empty_list_is_l(self):
        assert mui_m(self.ctx, 2, ()) == L(self.ctx, 2)

    def test_m_rank_one(self):
        assert mui_m(Context(3, 1), 1, (0,)) == make_generator(Context(3, 1), "x", 1)

    def test_m_power_of_l(self):
        assert mui_m(self.ctx, 2, (1,), 2) == mui_m(self.ctx, 2, (1,)) * L(self.ctx, 2)

    def test_m_validation(self):
        with self.assertRaises(InvalidOperationError):
            mui_m(self.ctx, 2, (1, 0))
        with self.assertRaises(InvalidOperationError):
            mui_m(self.ctx, 2, (2,))
        with self.assertRaises(InvalidOperationError):
            mui_m(self.ctx, 2, (0,), 3)

    def test_expansion(self):
        for k, e in ((1, (1, 2)), (2, (3,)), (1, (0, 4))):
            with self.subTest(k=k, e=e):
                assert mui_expansion_check(BracketSpec(self.ctx, k, e, 3))

    def test_bracket_is_sl_invariant_up_to_determinant(self):
        ctx = Context(3, 2)
        m = bracket(BracketSpec(ctx, 1, (1,), 2))
        for g in matrices(ctx, 3, seed=21):
            assert apply_matrix(g, m) == g.det() * m


class GroupInvarianceTests(SimpleTestCase):
    contexts = ((3, 2), (3, 3), (5, 2))

    def test_dickson_is_gl_invariant(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            qs = [dickson_q(ctx, n, s) for s in range(n)]
            for g in matrices(ctx, 20, seed=p + n):
                for s, q in enumerate(qs):
                    with self.subTest(p=p, n=n, s=s, g=g.entries):
                        assert apply_matrix(g, q) == q

    def test_v_and_m_are_unitriangular_invariant(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            fixed = [mui_v(ctx, m) for m in range(1, n + 1)]
            fixed += [mui_m(ctx, n, slist) for k in range(1, n + 1) for slist in combinations(range(n), k)]
            for g in unitriangular(ctx, 20, seed=2 * p + n):
                for a in fixed:
                    with self.subTest(p=p, n=n, a=str(a), g=g.entries):
                        assert apply_matrix(g, a) == a

    def test_md_and_ld_are_special_linear_invariant(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            for d in range(1, p):
                fixed = [power(L(ctx, n), d)]
                fixed += [mui_m(ctx, n, slist, d) for slist in combinations(range(n), 1)]
                for g in special_linear(ctx, d, 5, seed=3 * p + n + d):
                    for a in fixed:
                        with self.subTest(p=p, n=n, d=d, g=g.entries):
                            assert apply_matrix(g, a) == a

    def test_brackets_are_divisible_by_l(self):
        generator = rng(17)
        for p, n in self.contexts:
            ctx = Context(p, n)
            for _ in range(10):
                e = tuple(generator.sample(range(5), n))
                with self.subTest(p=p, n=n, e=e):
                    b = B(ctx, 0, e)
                    assert divide_by_L(b, n) * L(ctx, n) == b


class InvariantNameTests(SimpleTestCase):
    def test_text_forms(self):
        assert str(InvariantName("Q", (2, 1))) == "Q(2,1)"
        assert str(InvariantName("M", (2,), (0, 1))) == "M(2;0,1)"
        assert str(InvariantName("Md", (2, 2), (0,))) == "Md(2,2;0)"

    def test_build(self):
        ctx = Context(3, 2)
        assert InvariantName("Ls", (2, 1)).build(ctx) == Ls(ctx, 2, 1)
        assert InvariantName("Md", (2, 2), (0,)).build(ctx) == mui_m(ctx, 2, (0,), 2)

    def test_errors(self):
        with self.assertRaises(UnknownIdentifierError):
            InvariantName("W", (1,))
        with self.assertRaises(ArityError):
            InvariantName("Q", (2,))
        with self.assertRaises(ArityError):
            InvariantName("L", (2,), (0,))

    def test_cached_values_are_stable(self):
        ctx = Context(3, 2)
        assert power(L(ctx, 2), 2) == power(L(ctx, 2), 2, squaring=True)
