from __future__ import annotations

from django.test import SimpleTestCase

from milnor.algebra import Context, constant, degree, make_generator, power
from milnor.codec import parse_element
from milnor.exceptions import ExponentOverflowError, InhomogeneousElementError, InvalidOperationError
from milnor.steenrod import (
    MilnorOpType,
    apply,
    apply_unfolded,
    cartan_product,
    dimension_shift,
    s_splits,
    st_delta,
    st_u,
    steenrod_p,
)
from milnor.tests.factories import elements, monomials, ops


class OpTypeTests(SimpleTestCase):
    def test_trailing_zeros_dropped(self):
        assert MilnorOpType((), (1, 0, 0)) == MilnorOpType.power(1)

    def test_rejects_unsorted_s(self):
        with self.assertRaises(InvalidOperationError):
            MilnorOpType((1, 0), ())

    def test_rejects_negative_r(self):
        with self.assertRaises(InvalidOperationError):
            MilnorOpType((), (-1,))

    def test_delta_needs_positive_index(self):
        with self.assertRaises(InvalidOperationError):
            MilnorOpType.delta(0)

    def test_huge_indices_are_rejected_before_any_work(self):
        with self.assertRaises(ExponentOverflowError):
            MilnorOpType.delta(10**9)
        with self.assertRaises(ExponentOverflowError):
            MilnorOpType.st_u(10**9)
        with self.assertRaises(ExponentOverflowError):
            MilnorOpType((), (0,) * 50 + (1,))
        with self.assertRaises(ExponentOverflowError):
            st_u(10**9, parse_element(Context(3, 1), "x1"))
        with self.assertRaises(ExponentOverflowError):
            st_delta(10**9, parse_element(Context(3, 1), "y1"))

    def test_trailing_zeros_do_not_count_towards_the_index(self):
        assert MilnorOpType((), (1,) + (0,) * 60) == MilnorOpType.power(1)

    def test_dimension_shift(self):
        assert dimension_shift(MilnorOpType((0,), ()), 3) == 1
        assert dimension_shift(MilnorOpType.power(1), 3) == 4
        assert dimension_shift(MilnorOpType.delta(2), 5) == 48

    def test_s_splits_cover_every_subset(self):
        splits = s_splits((0, 1, 2))
        assert len(splits) == 8
        signs = {(s.S1, s.S2): s.sign for s in splits}
        assert signs[((1,), (0, 2))] == -1
        assert signs[((0, 2), (1,))] == -1
        assert signs[((0, 1), (2,))] == 1


class GeneratorValueTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)

    def element(self, text):
        return parse_element(self.ctx, text)

    def test_bockstein_on_x(self):
        assert apply(MilnorOpType.st_u(0), self.element("x1")) == self.element("y1")

    def test_st_u_on_x(self):
        assert st_u(1, self.element("x2")) == self.element("y2^3")

    def test_st_u_kills_y_only(self):
        assert st_u(2, self.element("y1^4*y2 + 2")).is_zero

    def test_st_u_antiderivation(self):
        assert st_u(0, self.element("x1*x2")) == self.element("y1*x2 + 2*x1*y2")
        assert st_u(0, self.element("x1*x2*y1")) == self.element("x2*y1^2 + 2*x1*y1*y2")

    def test_st_delta(self):
        assert st_delta(1, self.element("y1*y2")) == self.element("y1^3*y2 + y1*y2^3")
        assert st_delta(2, self.element("x1")).is_zero
        assert st_delta(1, constant(self.ctx, 2)).is_zero
        assert st_delta(1, self.element("y1^3")).is_zero

    def test_reduced_powers(self):
        y1 = make_generator(self.ctx, "y", 1)
        assert steenrod_p(0, self.element("x1*y2")) == self.element("x1*y2")
        assert steenrod_p(1, y1) == power(y1, 3)
        assert steenrod_p(1, power(y1, 2)) == 2 * power(y1, 4)
        assert steenrod_p(2, y1).is_zero

    def test_negative_indices(self):
        with self.assertRaises(InvalidOperationError):
            st_u(-1, self.element("x1"))
        with self.assertRaises(InvalidOperationError):
            steenrod_p(-1, self.element("y1"))


class EngineTests(SimpleTestCase):
    def test_fast_path_matches_unfolded_recursion(self):
        ctx = Context(3, 2)
        for op in ops(8, seed=1):
            for a in elements(ctx, 3, seed=2, max_exponent=2):
                with self.subTest(op=str(op), a=str(a)):
                    assert apply(op, a) == apply_unfolded(op, a)

    def test_fast_path_matches_unfolded_recursion_at_five(self):
        ctx = Context(5, 2)
        for op in ops(5, seed=3):
            for a in elements(ctx, 2, seed=4, max_exponent=2):
                with self.subTest(op=str(op), a=str(a)):
                    assert apply(op, a) == apply_unfolded(op, a)

    def test_specialised_operations_match_apply(self):
        ctx = Context(3, 3)
        for a in elements(ctx, 4, seed=6):
            with self.subTest(a=str(a)):
                assert st_u(1, a) == apply(MilnorOpType.st_u(1), a)
                assert st_delta(1, a) == apply(MilnorOpType.delta(1), a)

    def test_st_delta_is_a_derivation(self):
        ctx = Context(3, 2)
        a, b = elements(ctx, 2, seed=12)
        assert st_delta(1, a * b) == st_delta(1, a) * b + a * st_delta(1, b)

    def test_st_u_is_an_antiderivation(self):
        ctx = Context(3, 3)
        pairs = monomials(ctx, 8, seed=13)
        for a, b in zip(pairs[::2], pairs[1::2]):
            with self.subTest(a=str(a), b=str(b)):
                sign = -1 if degree(a) % 2 else 1
                assert st_u(0, a * b) == st_u(0, a) * b + sign * (a * st_u(0, b))

    def test_cartan_product_is_independent_of_grouping(self):
        ctx = Context(3, 2)
        f, g, h = monomials(ctx, 3, seed=14)
        op = MilnorOpType((0,), (1,))
        assert cartan_product(op, [f, g, h]) == apply(op, f * g * h)
        assert cartan_product(op, [f * g, h]) == apply(op, f * g * h)

    def test_cartan_product_needs_homogeneous_factors(self):
        ctx = Context(3, 2)
        mixed = parse_element(ctx, "x1 + y1")
        with self.assertRaises(InhomogeneousElementError):
            cartan_product(MilnorOpType.power(1), [mixed, mixed])


class PropertyTests(SimpleTestCase):
    contexts = ((3, 2), (3, 3), (5, 2))

    def test_st_u_squares_to_zero(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            for a in elements(ctx, 6, seed=p * n, terms=4):
                for u in range(3):
                    with self.subTest(p=p, n=n, u=u, a=str(a)):
                        assert st_u(u, st_u(u, a)).is_zero

    def test_degree_moves_by_the_dimension_shift(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            for op in ops(10, seed=p + n):
                for a in monomials(ctx, 6, seed=p * n):
                    image = apply(op, a)
                    if image.is_zero:
                        continue
                    with self.subTest(p=p, n=n, op=str(op), a=str(a)):
                        assert degree(image) == degree(a) + dimension_shift(op, p)

    def test_fast_path_matches_unfolded_recursion_for_high_exponents(self):
        for p, seed in ((3, 40), (5, 41)):
            ctx = Context(p, 2)
            for op in ops(4, seed=seed):
                for a in elements(ctx, 2, seed=seed + 1, terms=2, max_exponent=20):
                    with self.subTest(p=p, op=str(op), a=str(a)):
                        assert apply(op, a) == apply_unfolded(op, a)
