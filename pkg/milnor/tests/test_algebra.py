from __future__ import annotations

from django.test import SimpleTestCase

from milnor.algebra import (
    INHOMOGENEOUS,
    Context,
    MatrixFp,
    Term,
    apply_matrix,
    constant,
    degree,
    exact_div,
    frobenius,
    make_generator,
    power,
    y_monomial,
    zero,
)
from milnor.exceptions import (
    ContextMismatchError,
    ExteriorDivisorError,
    IndexOutOfRangeError,
    InvalidContextError,
    InvalidOperationError,
    NegativeExponentError,
    NotDivisibleError,
)
from milnor.invariants import L, Ls, dickson_q, mui_v
from milnor.tests.factories import elements, matrices, monomials, rng


class ContextTests(SimpleTestCase):
    def test_rejects_two(self):
        with self.assertRaises(InvalidContextError):
            Context(2, 1)

    def test_rejects_composite(self):
        with self.assertRaises(InvalidContextError):
            Context(9, 1)

    def test_rejects_empty_rank(self):
        with self.assertRaises(InvalidContextError):
            Context(3, 0)

    def test_accepts_odd_prime(self):
        assert str(Context(5, 2)) == "(p=5, n=2)"


class ArithmeticTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)
        self.x1 = make_generator(self.ctx, "x", 1)
        self.x2 = make_generator(self.ctx, "x", 2)
        self.y1 = make_generator(self.ctx, "y", 1)
        self.y2 = make_generator(self.ctx, "y", 2)

    def test_characteristic(self):
        assert self.x1 + self.x1 + self.x1 == 0

    def test_exterior_square_vanishes(self):
        assert (self.x1 * self.x1).is_zero

    def test_exterior_anticommutes(self):
        assert self.x2 * self.x1 == -(self.x1 * self.x2)

    def test_even_factors_commute(self):
        assert self.x1 * self.y2 == self.y2 * self.x1

    def test_koszul_sign_in_monomial_product(self):
        left = self.x1 * power(self.y2, 3)
        right = self.x2 * self.y1
        assert str(left * right) == "x1*x2*y1*y2^3"

    def test_frobenius_is_additive(self):
        assert power(self.y1 + self.y2, 3) == power(self.y1, 3) + power(self.y2, 3)

    def test_frobenius_scales_exponents(self):
        assert frobenius(self.y1 * self.y2, 2) == y_monomial(self.ctx, (9, 9))

    def test_frobenius_needs_y_only(self):
        with self.assertRaises(InvalidOperationError):
            frobenius(self.x1)
        with self.assertRaises(NegativeExponentError):
            frobenius(self.y1, -1)

    def test_power_paths_agree(self):
        for a in elements(self.ctx, 5, seed=3, max_exponent=2):
            with self.subTest(a=str(a)):
                assert power(a, 7) == power(a, 7, squaring=True)

    def test_zeroth_power_is_one(self):
        assert power(zero(self.ctx), 0) == 1

    def test_context_mismatch(self):
        other = make_generator(Context(5, 2), "y", 1)
        with self.assertRaises(ContextMismatchError):
            self.y1 + other

    def test_generator_range(self):
        with self.assertRaises(IndexOutOfRangeError):
            make_generator(self.ctx, "y", 3)

    def test_from_terms_validates(self):
        with self.assertRaises(NegativeExponentError):
            y_monomial(self.ctx, (-1, 0))
        with self.assertRaises(IndexOutOfRangeError):
            y_monomial(self.ctx, (1,))


class RingPropertyTests(SimpleTestCase):
    contexts = ((3, 2), (3, 3), (5, 2), (5, 3))

    def test_homogeneous_elements_commute_up_to_sign(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            found = monomials(ctx, 40, seed=10 * p + n)
            for a, b in zip(found[::2], found[1::2]):
                with self.subTest(p=p, n=n, a=str(a), b=str(b)):
                    sign = -1 if degree(a) * degree(b) % 2 else 1
                    assert a * b == sign * (b * a)

    def test_homogeneous_sums_commute_up_to_sign(self):
        ctx = Context(3, 3)
        found = monomials(ctx, 60, seed=5)
        by_degree: dict[int, list] = {}
        for a in found:
            by_degree.setdefault(degree(a), []).append(a)
        sums = [s for s in (sum(group[1:], group[0]) for group in by_degree.values()) if s]
        for a in sums:
            for b in sums:
                with self.subTest(a=str(a), b=str(b)):
                    sign = -1 if degree(a) * degree(b) % 2 else 1
                    assert a * b == sign * (b * a)

    def test_multiplication_is_associative(self):
        for p, n in self.contexts:
            ctx = Context(p, n)
            found = elements(ctx, 30, seed=20 * p + n)
            for a, b, c in zip(found[::3], found[1::3], found[2::3]):
                with self.subTest(p=p, n=n, a=str(a), b=str(b), c=str(c)):
                    assert (a * b) * c == a * (b * c)

    def test_multiplication_distributes(self):
        ctx = Context(5, 2)
        a, b, c = elements(ctx, 3, seed=31)
        assert a * (b + c) == a * b + a * c


class DegreeTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)

    def test_degrees(self):
        x1 = make_generator(self.ctx, "x", 1)
        y1 = make_generator(self.ctx, "y", 1)
        assert degree(x1 * y1) == 3
        assert degree(zero(self.ctx)) is None
        assert degree(x1 + y1) == INHOMOGENEOUS

    def test_term_order(self):
        x1 = make_generator(self.ctx, "x", 1)
        x2 = make_generator(self.ctx, "x", 2)
        y1 = make_generator(self.ctx, "y", 1)
        assert str(y1 + x1 * x2 + constant(self.ctx, 2)) == "x1*x2 + y1 + 2"


class DivisionTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)
        self.y1 = make_generator(self.ctx, "y", 1)
        self.y2 = make_generator(self.ctx, "y", 2)

    def test_simple_quotient(self):
        assert exact_div(self.y1 * self.y1, self.y1) == self.y1

    def test_dickson_quotient(self):
        assert exact_div(Ls(self.ctx, 2, 1), L(self.ctx, 2)) == dickson_q(self.ctx, 2, 1)

    def test_multiply_back(self):
        divisor = mui_v(self.ctx, 2)
        for a in elements(self.ctx, 4, seed=11):
            with self.subTest(a=str(a)):
                assert exact_div(a * divisor, divisor) == a

    def test_not_divisible(self):
        with self.assertRaises(NotDivisibleError):
            exact_div(self.y1 + self.y2, self.y1)

    def test_divide_by_zero(self):
        with self.assertRaises(NotDivisibleError):
            exact_div(self.y1, zero(self.ctx))

    def test_exterior_divisor(self):
        with self.assertRaises(ExteriorDivisorError):
            exact_div(self.y1, make_generator(self.ctx, "x", 1))


class MatrixTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)

    def test_identity_acts_trivially(self):
        g = MatrixFp.identity(self.ctx)
        for a in elements(self.ctx, 3, seed=5):
            assert apply_matrix(g, a) == a

    def test_action_is_multiplicative_in_the_group(self):
        g, h = matrices(self.ctx, 2, seed=7)
        for a in elements(self.ctx, 3, seed=8):
            with self.subTest(a=str(a)):
                assert apply_matrix(g @ h, a) == apply_matrix(g, apply_matrix(h, a))

    def test_transvection_fixes_v2(self):
        g = MatrixFp(self.ctx, ((1, 1), (0, 1)))
        v2 = mui_v(self.ctx, 2)
        assert apply_matrix(g, v2) == v2

    def test_l_scales_by_determinant(self):
        for g in matrices(self.ctx, 4, seed=9):
            with self.subTest(g=g.entries):
                assert apply_matrix(g, L(self.ctx, 2)) == g.det() * L(self.ctx, 2)

    def test_dickson_is_gl_invariant(self):
        q = dickson_q(self.ctx, 2, 1)
        for g in matrices(self.ctx, 3, seed=10):
            assert apply_matrix(g, q) == q

    def test_random_groups(self):
        generator = rng(4)
        t = MatrixFp.random_unitriangular(self.ctx, generator)
        assert t.det() == 1
        s = MatrixFp.random_special_linear(self.ctx, 2, generator)
        assert s.in_special_linear(2)

    def test_shape(self):
        with self.assertRaises(IndexOutOfRangeError):
            MatrixFp(self.ctx, ((1, 0, 0),))

    def test_term_type(self):
        assert Term(1, (1,), (0, 2)).degree == 5
