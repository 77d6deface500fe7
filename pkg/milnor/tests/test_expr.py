from __future__ import annotations

import random

from django.test import SimpleTestCase

from milnor.algebra import Context, make_generator
from milnor.exceptions import ArityError, ExpressionSyntaxError, IndexOutOfRangeError, UnknownIdentifierError
from milnor.expr import (
    Act,
    BinOp,
    Bracket,
    Gen,
    Invariant,
    Literal,
    Op,
    Power,
    StSR,
    evaluate,
    parse_expr,
    tokenize,
    unparse,
)
from milnor.invariants import InvariantName


def run(src, p=3, n=2):
    return evaluate(parse_expr(src), Context(p, n))


class TokenizerTests(SimpleTestCase):
    def test_positions(self):
        tokens = list(tokenize("Q(2,\n 10)"))
        assert [(t.kind, t.text, t.line, t.column) for t in tokens] == [
            ("name", "Q", 1, 1),
            ("punct", "(", 1, 2),
            ("int", "2", 1, 3),
            ("punct", ",", 1, 4),
            ("int", "10", 2, 2),
            ("punct", ")", 2, 4),
            ("eof", "", 2, 5),
        ]

    def test_bad_character(self):
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            list(tokenize("x(1) $ 2"))
        assert ctx.exception.column == 6


class ParserTests(SimpleTestCase):
    def test_application(self):
        assert parse_expr("StDelta(1, Q(2,1))") == Op("StDelta", 1, Invariant(InvariantName("Q", (2, 1))))

    def test_precedence(self):
        tree = parse_expr("x(1) + y(1) * y(2)^3")
        assert tree == BinOp("+", Gen("x", 1), BinOp("*", Gen("y", 1), Power(Gen("y", 2), 3)))

    def test_left_associative(self):
        tree = parse_expr("1 - 2 - 3")
        assert tree == BinOp("-", BinOp("-", Literal(1), Literal(2)), Literal(3))

    def test_mui_forms(self):
        assert parse_expr("M(2;0,1)") == Invariant(InvariantName("M", (2,), (0, 1)))
        assert parse_expr("Md(2,2;0)") == Invariant(InvariantName("Md", (2, 2), (0,)))
        assert parse_expr("M(2;)") == Invariant(InvariantName("M", (2,)))

    def test_bracket_and_matrix(self):
        assert parse_expr("B(1;[0,2];3)") == Bracket(1, (0, 2), 3)
        assert parse_expr("Act([[1,1],[0,1]], V(2))") == Act(((1, 1), (0, 1)), Invariant(InvariantName("V", (2,))))
        assert parse_expr("StSR([0], [1], x(1))") == StSR((0,), (1,), Gen("x", 1))

    def test_truncated_input(self):
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse_expr("Q(2,")
        assert (ctx.exception.line, ctx.exception.column) == (1, 5)

    def test_trailing_input(self):
        with self.assertRaises(ExpressionSyntaxError) as ctx:
            parse_expr("x(1) y(1)")
        assert ctx.exception.column == 6

    def test_unknown_identifier(self):
        with self.assertRaises(UnknownIdentifierError):
            parse_expr("Sq(1, x(1))")

    def test_arity(self):
        with self.assertRaises(ArityError):
            parse_expr("Q(2)")
        with self.assertRaises(ArityError):
            parse_expr("x(1,2)")


class EvaluationTests(SimpleTestCase):
    def test_dickson_case(self):
        assert run("StDelta(1, Q(2,1))") == run("Q(2,0)")

    def test_bockstein(self):
        assert run("Stu(0, x(1))", n=1) == make_generator(Context(3, 1), "y", 1)

    def test_definitional(self):
        assert run("L(2) - B(0;[0,1];2)").is_zero

    def test_transvection(self):
        assert run("Act([[1,1],[0,1]], V(2)) - V(2)").is_zero

    def test_milnor_basis_operation(self):
        assert run("StSR([], [1], y(1))") == run("P(1, y(1))") == run("y(1)^3")

    def test_arithmetic(self):
        assert run("3 * x(1)").is_zero
        assert run("(x(1) + y(1))^2 - y(1)^2 - 2*x(1)*y(1)").is_zero

    def test_generator_range(self):
        with self.assertRaises(IndexOutOfRangeError):
            run("y(3)")


def random_tree(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.25:
        choice = rng.randrange(5)
        if choice == 0:
            return Literal(rng.randrange(10))
        if choice == 1:
            return Gen(rng.choice("xy"), rng.randint(1, 3))
        if choice == 2:
            return Invariant(InvariantName("Q", (rng.randint(1, 3), rng.randint(0, 2))))
        if choice == 3:
            return Invariant(InvariantName("Md", (2, 2), (rng.randint(0, 1),)))
        return Bracket(1, (rng.randint(0, 3),), 2)
    choice = rng.randrange(6)
    if choice < 3:
        op = "+-*"[choice]
        return BinOp(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if choice == 3:
        return Power(random_tree(rng, depth - 1), rng.randint(0, 4))
    if choice == 4:
        return Op(rng.choice(("Stu", "StDelta", "P")), rng.randint(0, 3), random_tree(rng, depth - 1))
    rows = tuple(tuple(rng.randrange(3) for _ in range(2)) for _ in range(2))
    return Act(rows, random_tree(rng, depth - 1))


class PrintingTests(SimpleTestCase):
    def test_minimal_parentheses(self):
        assert unparse(parse_expr("(x(1) + y(1)) * 2")) == "(x(1) + y(1)) * 2"
        assert unparse(parse_expr("(x(1) * y(1)) * 2")) == "x(1) * y(1) * 2"
        assert unparse(parse_expr("1 - (2 - 3)")) == "1 - (2 - 3)"
        assert unparse(parse_expr("(y(1)^2)^3")) == "(y(1)^2)^3"

    def test_printed_trees_parse_back(self):
        rng = random.Random(0)
        for _ in range(1000):
            tree = random_tree(rng, 4)
            text = unparse(tree)
            with self.subTest(text=text):
                assert parse_expr(text) == tree
