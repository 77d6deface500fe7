from __future__ import annotations

import random

from milnor.algebra import Context, Element, MatrixFp, random_element
from milnor.steenrod import MilnorOpType


def rng(seed: int = 0) -> random.Random:
    return random.Random(seed)


def elements(ctx: Context, count: int, *, seed: int = 0, terms: int = 3, max_exponent: int = 3) -> list[Element]:
    generator = rng(seed)
    return [random_element(ctx, generator, terms=terms, max_exponent=max_exponent) for _ in range(count)]


def monomials(ctx: Context, count: int, *, seed: int = 0) -> list[Element]:
    """Nonzero single-term elements, so each one is homogeneous."""
    generator = rng(seed)
    found: list[Element] = []
    while len(found) < count:
        a = random_element(ctx, generator, terms=1, max_exponent=2)
        if a:
            found.append(a)
    return found


def matrices(ctx: Context, count: int, *, seed: int = 0) -> list[MatrixFp]:
    generator = rng(seed)
    return [MatrixFp.random_general_linear(ctx, generator) for _ in range(count)]


def ops(count: int, *, seed: int = 0) -> list[MilnorOpType]:
    generator = rng(seed)
    return [MilnorOpType.random(generator) for _ in range(count)]


def unitriangular(ctx: Context, count: int, *, seed: int = 0) -> list[MatrixFp]:
    generator = rng(seed)
    return [MatrixFp.random_unitriangular(ctx, generator) for _ in range(count)]


def special_linear(ctx: Context, d: int, count: int, *, seed: int = 0) -> list[MatrixFp]:
    generator = rng(seed)
    return [MatrixFp.random_special_linear(ctx, d, generator) for _ in range(count)]
