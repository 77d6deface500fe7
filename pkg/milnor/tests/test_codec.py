from __future__ import annotations

import json

from django.test import SimpleTestCase

from milnor.algebra import Context, constant, make_generator, power, zero
from milnor.codec import from_json, parse_element, serialize, to_json, to_text
from milnor.exceptions import ElementSyntaxError, IndexOutOfRangeError, InvalidOperationError
from milnor.tests.factories import elements


class TextTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)

    def test_zero_and_constants(self):
        assert to_text(zero(self.ctx)) == "0"
        assert to_text(constant(self.ctx, 5)) == "2"

    def test_powers(self):
        assert to_text(power(make_generator(self.ctx, "y", 1), 3)) == "y1^3"

    def test_parse_sorts_exterior_with_sign(self):
        assert parse_element(self.ctx, "x2*x1") == parse_element(self.ctx, "2*x1*x2")

    def test_parse_repeated_exterior_is_zero(self):
        assert parse_element(self.ctx, "x1*y2*x1").is_zero

    def test_parse_reads_back_printed_form(self):
        for ctx, seed in ((self.ctx, 2), (Context(5, 3), 3)):
            for a in elements(ctx, 50, seed=seed, terms=4, max_exponent=6):
                with self.subTest(p=ctx.p, a=str(a)):
                    assert parse_element(ctx, to_text(a)) == a

    def test_parse_reduces_coefficients(self):
        assert parse_element(self.ctx, "4*y1 + 2*y1") == zero(self.ctx)

    def test_syntax_error_position(self):
        with self.assertRaises(ElementSyntaxError) as ctx:
            parse_element(self.ctx, "x1 + ")
        assert ctx.exception.position == 5

    def test_unexpected_character(self):
        with self.assertRaises(ElementSyntaxError) as ctx:
            parse_element(self.ctx, "x1 - y1")
        assert ctx.exception.position == 3

    def test_index_out_of_range(self):
        with self.assertRaises(IndexOutOfRangeError):
            parse_element(self.ctx, "y3")


class JsonTests(SimpleTestCase):
    def setUp(self):
        self.ctx = Context(3, 2)

    def test_shape(self):
        a = parse_element(self.ctx, "2*x1*y2^3")
        assert json.loads(to_json(a)) == {
            "p": 3,
            "n": 2,
            "terms": [{"c": 2, "ext": [1], "exp": [0, 3]}],
        }

    def test_reads_back(self):
        a = parse_element(self.ctx, "x1*x2 + y1^4*y2 + 1")
        assert from_json(to_json(a)) == a

    def test_reads_back_random_elements(self):
        for ctx, seed in ((self.ctx, 5), (Context(5, 3), 6)):
            for a in elements(ctx, 50, seed=seed, terms=4, max_exponent=6):
                with self.subTest(p=ctx.p, a=str(a)):
                    assert from_json(to_json(a)) == a

    def test_invalid_json(self):
        with self.assertRaises(ElementSyntaxError):
            from_json("{")

    def test_invalid_prime(self):
        payload = json.dumps({"p": 2, "n": 1, "terms": []})
        with self.assertRaises(InvalidOperationError):
            from_json(payload)

    def test_wrong_vector_length(self):
        payload = json.dumps({"p": 3, "n": 2, "terms": [{"c": 1, "ext": [], "exp": [1]}]})
        with self.assertRaises(InvalidOperationError):
            from_json(payload)

    def test_serialize_formats(self):
        a = make_generator(self.ctx, "y", 2)
        assert serialize(a) == "y2"
        assert json.loads(serialize(a, "json"))["terms"] == [{"c": 1, "ext": [], "exp": [0, 1]}]
        with self.assertRaises(InvalidOperationError):
            serialize(a, "latex")
