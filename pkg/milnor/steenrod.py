"""
Steenrod-Milnor operations St^{S,R} acting on P_n.

The action is fixed by the Cartan formula

    St^{S,R}(uv) = sum (-1)^{(deg u + l(S1)) l(S2)} (S:S1,S2) St^{S1,R1}(u) St^{S2,R2}(v)

over S1 + S2 = S (disjoint) and R1 + R2 = R, together with the values on
generators: St^{S,R} x_k is x_k for (0, 0), y_k^{p^u} for ((u), 0) and zero
otherwise; St^{S,R} y_k is y_k for (0, 0), y_k^{p^i} for (0, Delta_i) and zero
otherwise.

:func:`apply` evaluates a whole monomial at once: S is spread as singletons
over the exterior generators and R over the y-blocks through the power rule
``St^{0,R}(y^m) = multinomial(m; m - sum R, R) y^{m + sum r_i (p^i - 1)}``.
:func:`apply_unfolded` runs the two-factor recursion generator by generator
and serves as the reference the fast paths are tested against.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional

from milnor.algebra import (
    MAX_EXPONENT,
    MAX_POWER_INDEX,
    Context,
    Element,
    Key,
    add,
    degree,
    mul,
    one,
    scalar_mul,
    zero,
)
from milnor.exceptions import (
    ExponentOverflowError,
    InhomogeneousElementError,
    InvalidOperationError,
)
from milnor.padic import digits, multinomial_mod_p

logger = logging.getLogger(__name__)


def _check_index(t: int, what: str) -> None:
    if t >= MAX_POWER_INDEX:
        raise ExponentOverflowError(f"{what} index {t} puts p^{t} beyond the 64-bit exponent range")


@dataclass(frozen=True)
class MilnorOpType:
    """The index (S, R) of St^{S,R}; R is kept without trailing zeros."""

    S: tuple[int, ...] = ()
    R: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        S = tuple(int(s) for s in self.S)
        R = list(int(r) for r in self.R)
        if any(s < 0 for s in S) or any(a >= b for a, b in zip(S, S[1:])):
            raise InvalidOperationError(f"S must be strictly increasing and non-negative, got {list(S)}")
        if any(r < 0 for r in R):
            raise InvalidOperationError(f"R must be non-negative, got {R}")
        for s in S:
            _check_index(s, "S")
        while R and R[-1] == 0:
            R.pop()
        _check_index(len(R), "R")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "R", tuple(R))

    @classmethod
    def st_u(cls, u: int) -> "MilnorOpType":
        return cls((u,), ())

    @classmethod
    def delta(cls, i: int) -> "MilnorOpType":
        if i < 1:
            raise InvalidOperationError(f"Delta_i needs i >= 1, got {i}")
        _check_index(i, "Delta")
        return cls((), (0,) * (i - 1) + (1,))

    @classmethod
    def power(cls, r: int) -> "MilnorOpType":
        return cls((), (r,))

    @classmethod
    def random(cls, rng: random.Random, *, max_s: int = 1, max_length: int = 2, max_r: int = 2) -> "MilnorOpType":
        S = tuple(s for s in range(max_s + 1) if rng.random() < 0.4)
        R = tuple(rng.randint(0, max_r) for _ in range(rng.randint(0, max_length)))
        return cls(S, R)

    @property
    def is_identity(self) -> bool:
        return not self.S and not self.R

    def excess(self) -> int:
        """St^{S,R} kills every class of degree below this."""
        return 2 * sum(self.R) + len(self.S)

    def __str__(self) -> str:
        return f"St^{{{list(self.S)},{list(self.R)}}}"


def dimension_shift(op: MilnorOpType, p: int) -> int:
    return sum(2 * p**s - 1 for s in op.S) + sum(r * (2 * p**i - 2) for i, r in enumerate(op.R, start=1))


@dataclass(frozen=True)
class SSplit:
    S1: tuple[int, ...]
    S2: tuple[int, ...]
    sign: int


def shuffle_sign(first: Sequence[int], second: Sequence[int]) -> int:
    """Sign of the permutation taking the sorted union to ``first + second``."""
    inversions = sum(1 for a in first for b in second if a > b)
    return -1 if inversions % 2 else 1


def _sequence_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for i, a in enumerate(seq) for b in seq[i + 1:] if a > b)
    return -1 if inversions % 2 else 1


def s_splits(S: Sequence[int]) -> list[SSplit]:
    S = tuple(S)
    out = []
    for k in range(len(S) + 1):
        for S1 in combinations(S, k):
            S2 = tuple(s for s in S if s not in S1)
            out.append(SSplit(S1, S2, shuffle_sign(S1, S2)))
    return out


def _bounded_r_splits(R: tuple[int, ...], budget: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # All R1 + R2 = R with 2 * sum(R1) <= budget.
    def walk(i: int, left: int, acc: tuple[int, ...]):
        if i == len(R):
            yield acc, tuple(r - a for r, a in zip(R, acc))
            return
        for r1 in range(min(R[i], left // 2) + 1):
            yield from walk(i + 1, left - 2 * r1, acc + (r1,))

    if budget < 0:
        return
    yield from walk(0, budget, ())


# -- the monomial engine ------------------------------------------------------


@lru_cache(maxsize=4096)
def _digit_splits(m: int, length: int, p: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Every ``r`` of the given length with multinomial(m; m - sum r, r) != 0 mod p,
    paired with that multinomial."""
    partial: list[tuple[tuple[int, ...], int]] = [((0,) * length, 1)]
    for t, d in enumerate(digits(m, p)):
        if not d:
            continue
        scale = p**t
        grown = []
        for vec, coeff in partial:
            for comp in _compositions(d, length + 1):
                factor = multinomial_mod_p(comp, p)
                grown.append(
                    (tuple(v + c * scale for v, c in zip(vec, comp[1:])), coeff * factor % p)
                )
        partial = grown
    return tuple(partial)


@lru_cache(maxsize=1024)
def _compositions(total: int, bins: int) -> tuple[tuple[int, ...], ...]:
    if bins == 1:
        return ((total,),)
    return tuple(
        (first,) + rest for first in range(total + 1) for rest in _compositions(total - first, bins - 1)
    )


def _distribute_r(
    p: int, R: tuple[int, ...], exps: tuple[int, ...]
) -> Iterator[tuple[tuple[int, ...], int]]:
    """Spread R over the y-blocks; yields (new exponents, coefficient)."""
    length = len(R)
    shifts = [p**i - 1 for i in range(1, length + 1)]
    blocks = [j for j, m in enumerate(exps) if m]

    def walk(b: int, remaining: tuple[int, ...], acc: list[int], coeff: int):
        if b == len(blocks):
            if not any(remaining):
                yield tuple(acc), coeff
            return
        j = blocks[b]
        m = exps[j]
        if b == len(blocks) - 1:
            if sum(remaining) > m:
                return
            c = multinomial_mod_p((m - sum(remaining),) + remaining, p)
            if c:
                grown = list(acc)
                grown[j] = m + sum(r * s for r, s in zip(remaining, shifts))
                yield tuple(grown), coeff * c % p
            return
        for rj, c in _digit_splits(m, length, p):
            if any(a > b_ for a, b_ in zip(rj, remaining)):
                continue
            grown = list(acc)
            grown[j] = m + sum(r * s for r, s in zip(rj, shifts))
            yield from walk(b + 1, tuple(a - b_ for a, b_ in zip(remaining, rj)), grown, coeff * c % p)

    if not R:
        yield exps, 1
        return
    if 2 * sum(R) > 2 * sum(exps):
        return
    yield from walk(0, R, list(exps), 1)


def _distribute_s(p: int, S: tuple[int, ...], ext: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], dict[int, int], int]]:
    """Assign each s in S to a distinct exterior generator.

    Yields (remaining exterior indices, {variable: added exponent}, sign).
    """
    if not S:
        yield ext, {}, 1
        return
    for positions in permutations(range(len(ext)), len(S)):
        by_position = sorted(zip(positions, S))
        sign = _sequence_sign([s for _, s in by_position])
        taken = dict(by_position)
        # An exterior factor left untouched passes every s assigned further right.
        for t in range(len(ext)):
            if t not in taken and sum(1 for q in positions if q > t) % 2:
                sign = -sign
        added = {ext[t] - 1: p**s for t, s in taken.items()}
        yield tuple(e for t, e in enumerate(ext) if t not in taken), added, sign


@lru_cache(maxsize=1 << 15)
def _apply_monomial(
    p: int, S: tuple[int, ...], R: tuple[int, ...], ext: tuple[int, ...], exps: tuple[int, ...]
) -> tuple[tuple[Key, int], ...]:
    if len(S) > len(ext):
        return ()
    y_part = list(_distribute_r(p, R, exps))
    if not y_part:
        return ()
    out: dict[Key, int] = {}
    for new_ext, added, s_sign in _distribute_s(p, S, ext):
        for new_exps, coeff in y_part:
            if added:
                grown = list(new_exps)
                for j, extra in added.items():
                    grown[j] += extra
                new_exps = tuple(grown)
            if max(new_exps, default=0) > MAX_EXPONENT:
                raise ExponentOverflowError("Steenrod operation left the 64-bit exponent range")
            key = (new_ext, new_exps)
            out[key] = (out.get(key, 0) + s_sign * coeff) % p
    return tuple((k, c) for k, c in out.items() if c)


def apply(op: MilnorOpType, a: Element) -> Element:
    """St^{S,R}(a)."""
    if op.is_identity:
        return a
    p = a.ctx.p
    acc: dict[Key, int] = {}
    for (ext, exps), c in a.items():
        for key, v in _apply_monomial(p, op.S, op.R, ext, exps):
            acc[key] = acc.get(key, 0) + c * v
    return Element(a.ctx, acc)


def st_u(u: int, a: Element) -> Element:
    """St_u as an antiderivation: x_k -> y_k^{p^u}, y_k -> 0."""
    if u < 0:
        raise InvalidOperationError(f"St_u needs u >= 0, got {u}")
    _check_index(u, "St_u")
    p = a.ctx.p
    q = p**u
    acc: dict[Key, int] = {}
    for (ext, exps), c in a.items():
        for t, e in enumerate(ext):
            grown = list(exps)
            grown[e - 1] += q
            if grown[e - 1] > MAX_EXPONENT:
                raise ExponentOverflowError("St_u left the 64-bit exponent range")
            key = (ext[:t] + ext[t + 1:], tuple(grown))
            acc[key] = acc.get(key, 0) + (c if t % 2 == 0 else -c)
    return Element(a.ctx, acc)


def st_delta(i: int, a: Element) -> Element:
    """St^{Delta_i} as a derivation: y_k -> y_k^{p^i}, x_k -> 0."""
    if i < 1:
        raise InvalidOperationError(f"St^Delta_i needs i >= 1, got {i}")
    _check_index(i, "St^Delta")
    p = a.ctx.p
    shift = p**i - 1
    acc: dict[Key, int] = {}
    for (ext, exps), c in a.items():
        for j, m in enumerate(exps):
            if m % p == 0:
                continue
            grown = list(exps)
            grown[j] += shift
            if grown[j] > MAX_EXPONENT:
                raise ExponentOverflowError("St^Delta_i left the 64-bit exponent range")
            key = (ext, tuple(grown))
            acc[key] = acc.get(key, 0) + c * m
    return Element(a.ctx, acc)


def steenrod_p(r: int, a: Element) -> Element:
    """The Steenrod power P^r = St^{0,(r)}."""
    if r < 0:
        raise InvalidOperationError(f"P^r needs r >= 0, got {r}")
    return apply(MilnorOpType.power(r), a)


# -- the generic two-factor recursion -----------------------------------------


Image = Callable[[MilnorOpType, Element], Element]


def cartan_product(op: MilnorOpType, factors: Sequence[Element], image: Optional[Image] = None) -> Element:
    """St^{S,R}(f_1 f_2 ... f_m) by peeling one factor at a time.

    ``image`` evaluates an operation on a single factor and defaults to
    :func:`apply`. Every factor must be homogeneous.
    """
    if not factors:
        raise InvalidOperationError("cartan_product needs at least one factor")
    image = image or apply
    ctx: Context = factors[0].ctx
    degs: list[int] = []
    for f in factors:
        d = degree(f)
        if d is None:
            return zero(ctx)
        if not isinstance(d, int):
            raise InhomogeneousElementError("every Cartan factor must be homogeneous")
        degs.append(d)
    suffix = [0] * (len(factors) + 1)
    for k in range(len(factors) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + degs[k]
    memo: dict[tuple[int, tuple[int, ...], tuple[int, ...]], Element] = {}

    def rest(start: int, S: tuple[int, ...], R: tuple[int, ...]) -> Element:
        key = (start, S, R)
        if key in memo:
            return memo[key]
        sub = MilnorOpType(S, R)
        if sub.excess() > suffix[start]:
            result = zero(ctx)
        elif start == len(factors) - 1:
            result = image(sub, factors[start])
        else:
            du = degs[start]
            result = zero(ctx)
            for split in s_splits(sub.S):
                for R1, R2 in _bounded_r_splits(sub.R, du - len(split.S1)):
                    left = image(MilnorOpType(split.S1, R1), factors[start])
                    if left.is_zero:
                        continue
                    right = rest(start + 1, split.S2, MilnorOpType((), R2).R)
                    if right.is_zero:
                        continue
                    sign = split.sign
                    if (du + len(split.S1)) * len(split.S2) % 2:
                        sign = -sign
                    result = add(result, scalar_mul(sign, mul(left, right)))
        memo[key] = result
        return result

    return rest(0, op.S, op.R)


def generator_image(op: MilnorOpType, g: Element) -> Element:
    """St^{S,R} on a single generator x_k or y_k, straight from the defining values."""
    ((ext, exps), c), = g.items()
    if op.is_identity:
        return g
    p = g.ctx.p
    if ext:
        k = ext[0]
        if len(op.S) == 1 and not op.R:
            grown = tuple(e + (p ** op.S[0] if j == k - 1 else 0) for j, e in enumerate(exps))
            return Element(g.ctx, {((), grown): c})
        return zero(g.ctx)
    if not op.S and sum(op.R) == 1:
        i = len(op.R)
        k = next(j for j, e in enumerate(exps) if e)
        grown = tuple(e * p**i if j == k else e for j, e in enumerate(exps))
        return Element(g.ctx, {((), grown): c})
    return zero(g.ctx)


def apply_unfolded(op: MilnorOpType, a: Element) -> Element:
    """St^{S,R}(a) through the generator-by-generator Cartan recursion."""
    ctx = a.ctx
    result = zero(ctx)
    for (ext, exps), c in a.items():
        factors = [Element(ctx, {((k,), (0,) * ctx.n): 1}) for k in ext]
        for j, m in enumerate(exps):
            unit = tuple(1 if t == j else 0 for t in range(ctx.n))
            factors.extend(Element(ctx, {((), unit): 1}) for _ in range(m))
        if factors:
            value = cartan_product(op, factors, image=generator_image)
        else:
            value = one(ctx) if op.is_identity else zero(ctx)
        result = add(result, scalar_mul(c, value))
    return result
