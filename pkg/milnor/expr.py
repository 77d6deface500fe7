"""
Expression language of the command line.

    expr      := term (('+' | '-') term)*
    term      := factor ('*' factor)*
    factor    := atom ('^' INT)?
    atom      := 'x(' INT ')' | 'y(' INT ')' | INT | invariant | op | act | '(' expr ')'
    invariant := 'L(' INT ')' | 'Ls(' INT ',' INT ')' | 'Q(' INT ',' INT ')' | 'V(' INT ')'
               | 'M(' INT ';' intlist ')' | 'Md(' INT ',' INT ';' intlist ')'
               | 'B(' INT ';' '[' intlist ']' ';' INT ')'
    op        := 'Stu(' INT ',' expr ')' | 'StDelta(' INT ',' expr ')' | 'P(' INT ',' expr ')'
               | 'StSR(' '[' intlist ']' ',' '[' intlist ']' ',' expr ')'
    act       := 'Act(' '[' row (',' row)* ']' ',' expr ')'      row := '[' intlist ']'
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from typing import Union

from milnor.algebra import Context, Element, MatrixFp, apply_matrix, constant, make_generator, power
from milnor.exceptions import ArityError, ExpressionSyntaxError, UnknownIdentifierError
from milnor.invariants import BracketSpec, InvariantName, bracket
from milnor.steenrod import MilnorOpType, apply, st_delta, st_u, steenrod_p

PUNCTUATION = "()[],;+-*^"


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'name', 'punct' or 'eof'
    text: str
    line: int
    column: int


def tokenize(src: str) -> Iterator[Token]:
    line, column = 1, 1
    i = 0
    while i < len(src):
        char = src[i]
        if char == "\n":
            i += 1
            line, column = line + 1, 1
            continue
        if char.isspace():
            i += 1
            column += 1
            continue
        start = i
        if char.isdigit():
            while i < len(src) and src[i].isdigit():
                i += 1
            yield Token("int", src[start:i], line, column)
        elif char.isalpha() or char == "_":
            while i < len(src) and (src[i].isalnum() or src[i] == "_"):
                i += 1
            yield Token("name", src[start:i], line, column)
        elif char in PUNCTUATION:
            i += 1
            yield Token("punct", char, line, column)
        else:
            raise ExpressionSyntaxError(f"unexpected character {char!r}", line, column)
        column += i - start
    yield Token("eof", "", line, column)


# -- syntax tree --------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: int


@dataclass(frozen=True)
class Gen:
    kind: str
    index: int


@dataclass(frozen=True)
class Invariant:
    name: InvariantName


@dataclass(frozen=True)
class Bracket:
    k: int
    e: tuple[int, ...]
    m: int


@dataclass(frozen=True)
class Op:
    name: str  # 'Stu', 'StDelta' or 'P'
    index: int
    arg: "Node"


@dataclass(frozen=True)
class StSR:
    S: tuple[int, ...]
    R: tuple[int, ...]
    arg: "Node"


@dataclass(frozen=True)
class Act:
    rows: tuple[tuple[int, ...], ...]
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-' or '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


Node = Union[Literal, Gen, Invariant, Bracket, Op, StSR, Act, BinOp, Power]

_SIMPLE = {"x": 1, "y": 1, "L": 1, "Ls": 2, "Q": 2, "V": 1}
_OPS = ("Stu", "StDelta", "P")


class Parser:
    def __init__(self, src: str) -> None:
        self.tokens = list(tokenize(src))
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Token | None = None) -> ExpressionSyntaxError:
        token = token or self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return ExpressionSyntaxError(f"{message}, found {found}", token.line, token.column)

    def at(self, text: str) -> bool:
        return self.current.kind == "punct" and self.current.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.error(f"expected {text!r}")

    def integer(self) -> int:
        token = self.current
        if token.kind != "int":
            raise self.error("expected an integer")
        self.pos += 1
        return int(token.text)

    def intlist(self, closing: str) -> tuple[int, ...]:
        values: list[int] = []
        if self.at(closing):
            return ()
        values.append(self.integer())
        while self.accept(","):
            values.append(self.integer())
        return tuple(values)

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != "eof":
            raise self.error("unexpected input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.current.text
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.accept("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.accept("^"):
            node = Power(node, self.integer())
        return node

    def atom(self) -> Node:
        token = self.current
        if token.kind == "int":
            self.pos += 1
            return Literal(int(token.text))
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if token.kind != "name":
            raise self.error("expected an expression")
        self.pos += 1
        name = token.text
        if name in _SIMPLE:
            self.expect("(")
            args = self.intlist(")")
            self.expect(")")
            if len(args) != _SIMPLE[name]:
                raise ArityError(
                    f"{name} takes {_SIMPLE[name]} argument(s), got {len(args)} "
                    f"at line {token.line}, column {token.column}"
                )
            if name in ("x", "y"):
                return Gen(name, args[0])
            return Invariant(InvariantName(name, args))
        if name in ("M", "Md"):
            self.expect("(")
            head = (self.integer(),)
            if name == "Md":
                self.expect(",")
                head += (self.integer(),)
            self.expect(";")
            slist = self.intlist(")")
            self.expect(")")
            return Invariant(InvariantName(name, head, slist))
        if name == "B":
            self.expect("(")
            k = self.integer()
            self.expect(";")
            self.expect("[")
            e = self.intlist("]")
            self.expect("]")
            self.expect(";")
            m = self.integer()
            self.expect(")")
            return Bracket(k, e, m)
        if name in _OPS:
            self.expect("(")
            index = self.integer()
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return Op(name, index, arg)
        if name == "StSR":
            self.expect("(")
            self.expect("[")
            S = self.intlist("]")
            self.expect("]")
            self.expect(",")
            self.expect("[")
            R = self.intlist("]")
            self.expect("]")
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return StSR(S, R, arg)
        if name == "Act":
            self.expect("(")
            self.expect("[")
            rows = [self.row()]
            while self.accept(","):
                rows.append(self.row())
            self.expect("]")
            self.expect(",")
            arg = self.expr()
            self.expect(")")
            return Act(tuple(rows), arg)
        raise UnknownIdentifierError(
            f"unknown identifier {name!r} at line {token.line}, column {token.column}"
        )

    def row(self) -> tuple[int, ...]:
        self.expect("[")
        values = self.intlist("]")
        self.expect("]")
        return values


def parse_expr(src: str) -> Node:
    return Parser(src).parse()


# -- printing -----------------------------------------------------------------


def _precedence(node: Node) -> int:
    if isinstance(node, BinOp):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Power):
        return 3
    return 4


def _ints(values) -> str:
    return ",".join(map(str, values))


def unparse(node: Node) -> str:
    """Print ``node`` with the fewest parentheses that parse back to it."""
    if isinstance(node, Literal):
        return str(node.value)
    if isinstance(node, Gen):
        return f"{node.kind}({node.index})"
    if isinstance(node, Invariant):
        return str(node.name)
    if isinstance(node, Bracket):
        return f"B({node.k};[{_ints(node.e)}];{node.m})"
    if isinstance(node, Op):
        return f"{node.name}({node.index}, {unparse(node.arg)})"
    if isinstance(node, StSR):
        return f"StSR([{_ints(node.S)}], [{_ints(node.R)}], {unparse(node.arg)})"
    if isinstance(node, Act):
        rows = ",".join(f"[{_ints(row)}]" for row in node.rows)
        return f"Act([{rows}], {unparse(node.arg)})"
    if isinstance(node, Power):
        base = unparse(node.base)
        if _precedence(node.base) < 4:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    mine = _precedence(node)
    left = unparse(node.left)
    if _precedence(node.left) < mine:
        left = f"({left})"
    right = unparse(node.right)
    if _precedence(node.right) <= mine:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- evaluation ---------------------------------------------------------------


def evaluate(node: Node, ctx: Context, *, self_check: bool = False) -> Element:
    if isinstance(node, Literal):
        return constant(ctx, node.value)
    if isinstance(node, Gen):
        return make_generator(ctx, node.kind, node.index)
    if isinstance(node, Invariant):
        return node.name.build(ctx, self_check=self_check)
    if isinstance(node, Bracket):
        return bracket(BracketSpec(ctx, node.k, node.e, node.m))
    if isinstance(node, Op):
        value = evaluate(node.arg, ctx, self_check=self_check)
        if node.name == "Stu":
            return st_u(node.index, value)
        if node.name == "StDelta":
            return st_delta(node.index, value)
        return steenrod_p(node.index, value)
    if isinstance(node, StSR):
        return apply(MilnorOpType(node.S, node.R), evaluate(node.arg, ctx, self_check=self_check))
    if isinstance(node, Act):
        return apply_matrix(MatrixFp(ctx, node.rows), evaluate(node.arg, ctx, self_check=self_check))
    if isinstance(node, Power):
        return power(evaluate(node.base, ctx, self_check=self_check), node.exponent)
    left = evaluate(node.left, ctx, self_check=self_check)
    right = evaluate(node.right, ctx, self_check=self_check)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right
