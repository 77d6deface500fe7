"""
Exact arithmetic in P_n = E(x_1..x_n) (x) F_p[y_1..y_n].

Elements are immutable sparse maps from a monomial key ``(ext, exps)`` to a
residue in ``1..p-1``. ``ext`` is a strictly increasing tuple of exterior
indices, ``exps`` the exponent vector of ``y_1..y_n``. The grading gives
``x_i`` degree 1 and ``y_i`` degree 2.

Terms are listed in descending order of
``(degree, len(ext), ext reversed-lexicographically, grevlex on exps)``; the
same grevlex order on the y-part drives exact division.
"""

from __future__ import annotations

import heapq
import logging
import operator
import random
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from sympy import Matrix, isprime

from milnor.decorators import same_context
from milnor.exceptions import (
    ContextMismatchError,
    ExponentOverflowError,
    ExteriorDivisorError,
    IndexOutOfRangeError,
    InvalidContextError,
    InvalidOperationError,
    NegativeExponentError,
    NotDivisibleError,
)

logger = logging.getLogger(__name__)

# Exponents are 64-bit signed quantities; anything larger is a hard error.
MAX_EXPONENT = 2**63 - 1

# For every odd p, p**t is beyond MAX_EXPONENT once t reaches this.
MAX_POWER_INDEX = 40

INHOMOGENEOUS = "inhomogeneous"

Ext = tuple[int, ...]
Exps = tuple[int, ...]
Key = tuple[Ext, Exps]


@dataclass(frozen=True)
class Context:
    p: int
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.p, bool) or not isinstance(self.p, int):
            raise InvalidContextError(f"p must be an integer, got {self.p!r}")
        if self.p == 2:
            raise InvalidContextError("p must be an odd prime (p = 2 is excluded)")
        if self.p < 3 or not isprime(self.p):
            raise InvalidContextError(f"p must be an odd prime, got {self.p}")
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidContextError(f"n must be a positive integer, got {self.n!r}")

    def __str__(self) -> str:
        return f"(p={self.p}, n={self.n})"


@dataclass(frozen=True)
class Term:
    coeff: int
    ext: Ext
    exps: Exps

    @property
    def degree(self) -> int:
        return len(self.ext) + 2 * sum(self.exps)


def term_order_key(key: Key) -> tuple:
    ext, exps = key
    return (
        len(ext) + 2 * sum(exps),
        len(ext),
        tuple(-i for i in ext),
        tuple(-e for e in reversed(exps)),
    )


def _heap_key(exps: Exps) -> tuple:
    # Min-heap key whose smallest element is the grevlex-largest monomial.
    return (-sum(exps), tuple(reversed(exps)))


def _check_exps(exps: Exps) -> Exps:
    for e in exps:
        if e > MAX_EXPONENT:
            raise ExponentOverflowError(f"exponent {e} exceeds 64-bit range")
    return exps


def _add_exps(a: Exps, b: Exps) -> Exps:
    return _check_exps(tuple(map(operator.add, a, b)))


@lru_cache(maxsize=1 << 16)
def _ext_product(left: Ext, right: Ext) -> Optional[tuple[Ext, int]]:
    """Merge two exterior monomials; ``None`` when an index repeats."""
    if not left:
        return right, 1
    if not right:
        return left, 1
    if not set(left).isdisjoint(right):
        return None
    inversions = sum(1 for a in left for b in right if a > b)
    return tuple(sorted(left + right)), (-1 if inversions % 2 else 1)


class Element:
    """A canonical element of P_n under a fixed :class:`Context`."""

    __slots__ = ("ctx", "_data")

    def __init__(self, ctx: Context, data: Optional[Mapping[Key, int]] = None) -> None:
        self.ctx = ctx
        clean: dict[Key, int] = {}
        if data:
            p = ctx.p
            for (ext, exps), c in data.items():
                c %= p
                if c:
                    clean[(tuple(ext), tuple(exps))] = c
        self._data = clean

    @classmethod
    def _raw(cls, ctx: Context, data: dict[Key, int]) -> "Element":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._data = data
        return obj

    @classmethod
    def from_terms(cls, ctx: Context, terms: Iterable[Term]) -> "Element":
        """Build an element from loose terms, validating every index."""
        acc: dict[Key, int] = defaultdict(int)
        for term in terms:
            ext = tuple(term.ext)
            exps = tuple(term.exps)
            if len(exps) != ctx.n:
                raise IndexOutOfRangeError(
                    f"exponent vector {list(exps)} must have length {ctx.n}"
                )
            if any(e < 0 for e in exps):
                raise NegativeExponentError(f"negative exponent in {list(exps)}")
            _check_exps(exps)
            if any(not 1 <= i <= ctx.n for i in ext):
                raise IndexOutOfRangeError(f"exterior index outside 1..{ctx.n} in {list(ext)}")
            if any(a >= b for a, b in zip(ext, ext[1:])):
                raise InvalidOperationError(
                    f"exterior indices must be strictly increasing, got {list(ext)}"
                )
            acc[(ext, exps)] += term.coeff
        return cls(ctx, acc)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple[Term, ...]:
        keys = sorted(self._data, key=term_order_key, reverse=True)
        return tuple(Term(self._data[k], k[0], k[1]) for k in keys)

    def items(self) -> Iterator[tuple[Key, int]]:
        return iter(self._data.items())

    def coefficient(self, ext: Ext, exps: Exps) -> int:
        return self._data.get((tuple(ext), tuple(exps)), 0)

    @property
    def is_zero(self) -> bool:
        return not self._data

    @property
    def is_y_only(self) -> bool:
        return all(not ext for ext, _ in self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __bool__(self) -> bool:
        return bool(self._data)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = constant(self.ctx, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.ctx == other.ctx and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self._data.items())))

    def __str__(self) -> str:
        from milnor.codec import to_text

        return to_text(self)

    def __repr__(self) -> str:
        return f"<Element {self} over {self.ctx}>"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: object) -> "Element":
        if isinstance(other, Element):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return constant(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else add(self, other)

    def __radd__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else add(other, self)

    def __sub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else add(self, neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        return other if other is NotImplemented else add(other, neg(self))

    def __neg__(self) -> "Element":
        return neg(self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return scalar_mul(other, self)
        if not isinstance(other, Element):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return scalar_mul(other, self)
        return NotImplemented

    def __pow__(self, m: int) -> "Element":
        return power(self, m)


# -- construction -----------------------------------------------------------


def zero(ctx: Context) -> Element:
    return Element._raw(ctx, {})


def constant(ctx: Context, c: int) -> Element:
    c %= ctx.p
    return Element._raw(ctx, {((), (0,) * ctx.n): c} if c else {})


def one(ctx: Context) -> Element:
    return constant(ctx, 1)


def make_generator(ctx: Context, kind: str, i: int) -> Element:
    """Return ``x_i`` (degree 1) or ``y_i`` (degree 2)."""
    if kind not in ("x", "y"):
        raise InvalidOperationError(f"generator kind must be 'x' or 'y', got {kind!r}")
    if not 1 <= i <= ctx.n:
        raise IndexOutOfRangeError(f"{kind}{i} is outside 1..{ctx.n}")
    zeros = (0,) * ctx.n
    if kind == "x":
        return Element._raw(ctx, {((i,), zeros): 1})
    exps = tuple(1 if j == i else 0 for j in range(1, ctx.n + 1))
    return Element._raw(ctx, {((), exps): 1})


def y_monomial(ctx: Context, exps: Sequence[int], coeff: int = 1) -> Element:
    return Element.from_terms(ctx, [Term(coeff, (), tuple(exps))])


# -- ring operations --------------------------------------------------------


@same_context
def add(a: Element, b: Element) -> Element:
    p = a.ctx.p
    data = dict(a._data)
    for key, c in b._data.items():
        s = (data.get(key, 0) + c) % p
        if s:
            data[key] = s
        else:
            data.pop(key, None)
    return Element._raw(a.ctx, data)


def neg(a: Element) -> Element:
    p = a.ctx.p
    return Element._raw(a.ctx, {k: p - c for k, c in a._data.items()})


def scalar_mul(c: int, a: Element) -> Element:
    p = a.ctx.p
    c %= p
    if not c:
        return zero(a.ctx)
    return Element._raw(a.ctx, {k: v * c % p for k, v in a._data.items()})


@same_context
def mul(a: Element, b: Element) -> Element:
    """Graded-commutative product with the Koszul sign on exterior parts."""
    p = a.ctx.p
    out: dict[Key, int] = {}
    for (ea, xa), ca in a._data.items():
        for (eb, xb), cb in b._data.items():
            if ea and eb:
                merged = _ext_product(ea, eb)
                if merged is None:
                    continue
                ext, sign = merged
            else:
                ext, sign = (ea or eb), 1
            key = (ext, _add_exps(xa, xb))
            out[key] = (out.get(key, 0) + sign * ca * cb) % p
    return Element._raw(a.ctx, {k: v for k, v in out.items() if v})


def product(factors: Iterable[Element], ctx: Context) -> Element:
    result = one(ctx)
    for f in factors:
        result = mul(result, f)
    return result


def frobenius(a: Element, e: int = 1) -> Element:
    """Raise a y-only element to the ``p**e``-th power by exponent scaling."""
    if e < 0:
        raise NegativeExponentError(f"Frobenius twist needs e >= 0, got {e}")
    if not a.is_y_only:
        raise InvalidOperationError("Frobenius twist needs an element without exterior part")
    if e == 0:
        return a
    q = a.ctx.p ** e
    return Element._raw(
        a.ctx,
        {(ext, _check_exps(tuple(x * q for x in exps))): c for (ext, exps), c in a._data.items()},
    )


def _square_and_multiply(a: Element, m: int) -> Element:
    result = one(a.ctx)
    base = a
    while m:
        if m & 1:
            result = mul(result, base)
        m >>= 1
        if m:
            base = mul(base, base)
    return result


def power(a: Element, m: int, *, squaring: bool = False) -> Element:
    """``a**m``; y-only elements go through base-p digits and Frobenius twists
    unless ``squaring`` forces plain repeated squaring."""
    if m < 0:
        raise NegativeExponentError(f"negative power {m}")
    if m == 0:
        return one(a.ctx)
    if m == 1 or a.is_zero:
        return a
    if squaring or not a.is_y_only:
        return _square_and_multiply(a, m)
    p = a.ctx.p
    small: dict[int, Element] = {1: a}
    result = one(a.ctx)
    e = 0
    while m:
        m, digit = divmod(m, p)
        if digit:
            if digit not in small:
                small[digit] = _square_and_multiply(a, digit)
            result = mul(result, frobenius(small[digit], e))
        e += 1
    return result


@same_context
def exact_div(a: Element, b: Element) -> Element:
    """Return ``q`` with ``q * b == a``; ``b`` must be a nonzero y-polynomial."""
    if b.is_zero:
        raise NotDivisibleError("division by zero")
    if not b.is_y_only:
        raise ExteriorDivisorError("divisor must not contain exterior generators")
    p = a.ctx.p
    divisor = {exps: c for (_, exps), c in b._data.items()}
    lead = min(divisor, key=_heap_key)
    lead_inv = pow(divisor[lead], -1, p)

    groups: dict[Ext, dict[Exps, int]] = defaultdict(dict)
    for (ext, exps), c in a._data.items():
        groups[ext][exps] = c

    out: dict[Key, int] = {}
    for ext, poly in groups.items():
        for exps, c in _divide_poly(poly, divisor, lead, lead_inv, p):
            out[(ext, exps)] = c
    return Element._raw(a.ctx, out)


def _divide_poly(
    poly: dict[Exps, int],
    divisor: dict[Exps, int],
    lead: Exps,
    lead_inv: int,
    p: int,
) -> Iterator[tuple[Exps, int]]:
    rem = dict(poly)
    heap = [(_heap_key(m), m) for m in rem]
    heapq.heapify(heap)
    while heap:
        _, mono = heapq.heappop(heap)
        c = rem.pop(mono, 0)
        if not c:
            continue
        shift = tuple(x - y for x, y in zip(mono, lead))
        if any(s < 0 for s in shift):
            raise NotDivisibleError("leading term is not divisible by the divisor's leading term")
        qc = c * lead_inv % p
        yield shift, qc
        for dm, dc in divisor.items():
            if dm == lead:
                continue
            target = tuple(map(operator.add, dm, shift))
            value = (rem.get(target, 0) - qc * dc) % p
            if value:
                if target not in rem:
                    heapq.heappush(heap, (_heap_key(target), target))
                rem[target] = value
            else:
                rem.pop(target, None)


# -- grading ----------------------------------------------------------------


def degrees(a: Element) -> set[int]:
    return {len(ext) + 2 * sum(exps) for ext, exps in a._data}


def is_homogeneous(a: Element) -> bool:
    return len(degrees(a)) <= 1


def degree(a: Element) -> Union[int, str, None]:
    """Degree of a homogeneous element, ``None`` for zero, and
    :data:`INHOMOGENEOUS` otherwise."""
    found = degrees(a)
    if not found:
        return None
    if len(found) > 1:
        return INHOMOGENEOUS
    return found.pop()


# -- linear substitution ----------------------------------------------------


@dataclass(frozen=True)
class MatrixFp:
    """An n x n matrix over F_p.

    Acts by the column convention ``x_j -> sum_i g[i][j] x_i`` (and likewise
    on y), so ``apply_matrix(g @ h, a) == apply_matrix(g, apply_matrix(h, a))``
    and upper unitriangular matrices fix the first m variables' span.
    """

    ctx: Context
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n, p = self.ctx.n, self.ctx.p
        rows = tuple(tuple(int(v) % p for v in row) for row in self.entries)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise IndexOutOfRangeError(f"matrix must be {n} x {n}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def identity(cls, ctx: Context) -> "MatrixFp":
        return cls(ctx, tuple(tuple(int(i == j) for j in range(ctx.n)) for i in range(ctx.n)))

    def det(self) -> int:
        return int(Matrix(self.entries).det(method="bareiss")) % self.ctx.p

    @property
    def is_invertible(self) -> bool:
        return self.det() != 0

    def in_special_linear(self, d: int) -> bool:
        """Membership in SL_n^d: ``det(g)**d == 1``."""
        return pow(self.det(), d, self.ctx.p) == 1

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        if self.ctx != other.ctx:
            raise ContextMismatchError(f"matrices belong to {self.ctx} and {other.ctx}")
        n = self.ctx.n
        return MatrixFp(
            self.ctx,
            tuple(
                tuple(sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def random_general_linear(cls, ctx: Context, rng: random.Random) -> "MatrixFp":
        while True:
            g = cls(ctx, tuple(tuple(rng.randrange(ctx.p) for _ in range(ctx.n)) for _ in range(ctx.n)))
            if g.is_invertible:
                return g

    @classmethod
    def random_unitriangular(cls, ctx: Context, rng: random.Random) -> "MatrixFp":
        n = ctx.n
        return cls(
            ctx,
            tuple(
                tuple(1 if i == j else (rng.randrange(ctx.p) if j > i else 0) for j in range(n))
                for i in range(n)
            ),
        )

    @classmethod
    def random_special_linear(cls, ctx: Context, d: int, rng: random.Random) -> "MatrixFp":
        while True:
            g = cls.random_general_linear(ctx, rng)
            if g.in_special_linear(d):
                return g


def _linear_image(g: MatrixFp, kind: str, j: int) -> Element:
    ctx = g.ctx
    zeros = (0,) * ctx.n
    data: dict[Key, int] = {}
    for i in range(1, ctx.n + 1):
        c = g.entries[i - 1][j - 1]
        if not c:
            continue
        if kind == "x":
            data[((i,), zeros)] = c
        else:
            data[((), tuple(1 if k == i else 0 for k in range(1, ctx.n + 1)))] = c
    return Element._raw(ctx, data)


def apply_matrix(g: MatrixFp, a: Element) -> Element:
    """Substitute every generator by its image under ``g`` and expand."""
    if g.ctx != a.ctx:
        raise ContextMismatchError(f"matrix belongs to {g.ctx}, element to {a.ctx}")
    ctx = a.ctx
    xs = {j: _linear_image(g, "x", j) for j in range(1, ctx.n + 1)}
    ys = {j: _linear_image(g, "y", j) for j in range(1, ctx.n + 1)}
    ext_images: dict[Ext, Element] = {(): one(ctx)}
    y_powers: dict[tuple[int, int], Element] = {}

    result = zero(ctx)
    for (ext, exps), c in a._data.items():
        if ext not in ext_images:
            ext_images[ext] = product((xs[i] for i in ext), ctx)
        image = ext_images[ext]
        for j, m in enumerate(exps, start=1):
            if not m:
                continue
            if (j, m) not in y_powers:
                y_powers[(j, m)] = power(ys[j], m)
            image = mul(image, y_powers[(j, m)])
            if image.is_zero:
                break
        result = add(result, scalar_mul(c, image))
    return result


def random_element(ctx: Context, rng: random.Random, *, terms: int = 3, max_exponent: int = 3) -> Element:
    """A sum of ``terms`` random monomials with random nonzero coefficients."""
    data: dict[Key, int] = {}
    for _ in range(terms):
        ext = tuple(i for i in range(1, ctx.n + 1) if rng.random() < 0.3)
        exps = tuple(rng.randint(0, max_exponent) for _ in range(ctx.n))
        data[(ext, exps)] = data.get((ext, exps), 0) + rng.randrange(1, ctx.p)
    return Element(ctx, data)
