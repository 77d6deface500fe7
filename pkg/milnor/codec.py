"""
Canonical text and JSON forms of elements.

Text grammar::

    element := term ('+' term)* | '0'
    term    := coeff ('*' factor)* | factor ('*' factor)*
    factor  := 'x' INT | 'y' INT ('^' INT)?
    coeff   := INT            (reduced mod p)
"""

from __future__ import annotations

import json

from rest_framework.renderers import JSONRenderer

from milnor.algebra import Context, Element, Term
from milnor.exceptions import ElementSyntaxError, IndexOutOfRangeError, InvalidOperationError

FORMATS = ("canonical-text", "json")


def _term_text(term: Term) -> str:
    factors = [f"x{i}" for i in term.ext]
    for j, e in enumerate(term.exps, start=1):
        if e == 1:
            factors.append(f"y{j}")
        elif e:
            factors.append(f"y{j}^{e}")
    if term.coeff != 1 or not factors:
        factors.insert(0, str(term.coeff))
    return "*".join(factors)


def to_text(a: Element) -> str:
    if a.is_zero:
        return "0"
    return " + ".join(_term_text(t) for t in a.terms)


def to_json(a: Element) -> str:
    from milnor.serializers import ElementSerializer

    return JSONRenderer().render(ElementSerializer(a).data).decode()


def from_json(text: str) -> Element:
    from milnor.serializers import ElementSerializer

    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ElementSyntaxError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    serializer = ElementSerializer(data=payload)
    if not serializer.is_valid():
        raise InvalidOperationError(f"invalid element JSON: {dict(serializer.errors)}")
    return serializer.save()


def serialize(a: Element, format: str = "canonical-text") -> str:
    if format == "canonical-text":
        return to_text(a)
    if format == "json":
        return to_json(a)
    raise InvalidOperationError(f"unknown format {format!r}; expected one of {FORMATS}")


class _ElementScanner:
    def __init__(self, ctx: Context, text: str) -> None:
        self.ctx = ctx
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ElementSyntaxError:
        return ElementSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, char: str) -> bool:
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def index(self, kind: str) -> int:
        start = self.pos
        i = self.integer()
        if not 1 <= i <= self.ctx.n:
            raise IndexOutOfRangeError(f"{kind}{i} is outside 1..{self.ctx.n} at position {start}")
        return i

    def parse(self) -> Element:
        terms: list[Term] = []
        terms.append(self.term())
        while self.accept("+"):
            terms.append(self.term())
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return Element.from_terms(self.ctx, [t for t in terms if t is not None])

    def term(self) -> Term | None:
        coeff = 1
        ext: list[int] = []
        exps = [0] * self.ctx.n
        if self.peek().isdigit():
            coeff = self.integer()
            if not self.accept("*"):
                return Term(coeff, (), tuple(exps))
        self.factor(ext, exps)
        while self.accept("*"):
            self.factor(ext, exps)
        if len(set(ext)) != len(ext):
            return None
        inversions = sum(1 for k, a in enumerate(ext) for b in ext[k + 1:] if a > b)
        if inversions % 2:
            coeff = -coeff
        return Term(coeff, tuple(sorted(ext)), tuple(exps))

    def factor(self, ext: list[int], exps: list[int]) -> None:
        char = self.peek()
        if char == "x":
            self.pos += 1
            ext.append(self.index("x"))
        elif char == "y":
            self.pos += 1
            j = self.index("y")
            e = self.integer() if self.accept("^") else 1
            exps[j - 1] += e
        else:
            raise self.error("expected 'x' or 'y'" if char else "unexpected end of input")


def parse_element(ctx: Context, text: str) -> Element:
    """Parse the canonical text grammar; errors carry a 0-based position."""
    return _ElementScanner(ctx, text).parse()
