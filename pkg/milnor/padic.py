"""
Base-p digit combinatorics: Lucas-theorem multinomials, the index sets
I(u, v) and J(u, v), the block decomposition of J-members and the exponent
functions b and c built from it.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations
from math import factorial, prod

from milnor.algebra import MAX_POWER_INDEX
from milnor.exceptions import ExponentOverflowError, InvalidOperationError, NotInIndexSetError

logger = logging.getLogger(__name__)


def digits(a: int, p: int) -> tuple[int, ...]:
    """Base-p digits of ``a``, least significant first; ``()`` for zero."""
    if a < 0:
        raise InvalidOperationError(f"digits need a non-negative integer, got {a}")
    out = []
    while a:
        a, d = divmod(a, p)
        out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class PadicDigits:
    a: int
    p: int
    digits: tuple[int, ...]

    @classmethod
    def of(cls, a: int, p: int) -> "PadicDigits":
        return cls(a, p, digits(a, p))

    def alpha(self, i: int) -> int:
        """The i-th digit, zero for negative i and beyond the top digit."""
        if i < 0 or i >= len(self.digits):
            return 0
        return self.digits[i]

    def value(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))


def multinomial_mod_p(parts: Sequence[int], p: int) -> int:
    """``(sum parts)! / prod(part!)`` reduced mod p, digit by digit."""
    parts = [x for x in parts if x]
    result = 1
    while parts:
        column = [x % p for x in parts]
        total = sum(column)
        if total >= p:
            return 0
        result = result * (factorial(total) // prod(factorial(d) for d in column)) % p
        parts = [x // p for x in parts if x >= p]
    return result


def _check_top(v: int) -> None:
    if v > MAX_POWER_INDEX:
        raise ExponentOverflowError(f"v={v} puts p^(v-1) beyond the 64-bit exponent range")


def _check_window(u: int, v: int) -> None:
    if u < 0 or v <= u:
        raise InvalidOperationError(f"index sets need 0 <= u < v, got u={u}, v={v}")
    _check_top(v)


def _enumerate(p: int, lo: int, hi: int, allowed) -> Iterator[int]:
    # Depth-first over digit positions lo..hi-1; ``allowed(d, prev1, prev2)``
    # decides whether digit d may follow the previous two digits.
    def walk(i: int, prev1: int, prev2: int, acc: int) -> Iterator[int]:
        if i >= hi:
            yield acc
            return
        for d in range(p):
            if allowed(d, prev1, prev2):
                yield from walk(i + 1, d, prev1, acc + d * p**i)

    yield from walk(lo, 0, 0, 0)


def _i_allowed(d: int, prev1: int, prev2: int) -> bool:
    return prev1 + d <= 1


def _j_allowed(d: int, prev1: int, prev2: int) -> bool:
    return d <= 1 and prev2 + prev1 + d <= 2


def index_set_I(p: int, u: int, v: int) -> frozenset[int]:
    """All a with adjacent digit sums at most 1 and digits only in [u, v-3]."""
    _check_window(u, v)
    return frozenset(_enumerate(p, u, v - 2, _i_allowed))


def index_set_J(p: int, u: int, v: int) -> frozenset[int]:
    """All a with digits at most 1, no three consecutive ones, digits in [u, v-3]."""
    _check_window(u, v)
    return frozenset(_enumerate(p, u, v - 2, _j_allowed))


def _window_digits(a: int, p: int, lo: int, hi: int) -> tuple[int, ...] | None:
    # Digits of a at positions lo..hi-1, or None if a has digits elsewhere.
    _check_top(hi + 2)
    expansion = PadicDigits.of(a, p)
    if any(d for i, d in enumerate(expansion.digits) if not lo <= i < hi):
        return None
    return tuple(expansion.alpha(i) for i in range(lo, hi))


def in_index_set_I(p: int, u: int, v: int, a: int) -> bool:
    window = _window_digits(a, p, u, v - 2)
    if window is None:
        return False
    return all(x + y <= 1 for x, y in zip(window, window[1:] + (0,)))


def in_index_set_J(p: int, u: int, v: int, a: int) -> bool:
    window = _window_digits(a, p, u, v - 2)
    if window is None:
        return False
    padded = window + (0, 0)
    return all(d <= 1 for d in window) and all(
        padded[i] + padded[i + 1] + padded[i + 2] <= 2 for i in range(len(window))
    )


@dataclass(frozen=True)
class JDecomposition:
    """``a = a_0 + sum_j (p^{i_j} + p^{i_j + 1} + a_j)``."""

    p: int
    u: int
    v: int
    a: int
    blocks: tuple[int, ...]
    parts: tuple[int, ...]

    def reassemble(self) -> int:
        p = self.p
        return sum(self.parts) + sum(p**i + p ** (i + 1) for i in self.blocks)

    def windows(self) -> list[tuple[int, int]]:
        """The (lo, hi) arguments of I(lo, hi) each part must belong to."""
        edges = (self.u - 3,) + self.blocks + (self.v - 1,)
        return [(edges[j] + 3, edges[j + 1] + 1) for j in range(len(self.blocks) + 1)]


def j_decompose(p: int, u: int, v: int, a: int) -> JDecomposition:
    if not in_index_set_J(p, u, v, a):
        raise NotInIndexSetError(f"{a} is not in J({u}, {v}) for p={p}")
    ds = digits(a, p)
    ones = [i for i, d in enumerate(ds) if d]
    blocks = [i for i in ones if i + 1 in ones and i - 1 not in ones]
    parts = [0] * (len(blocks) + 1)
    paired = {i for b in blocks for i in (b, b + 1)}
    for i in ones:
        if i in paired:
            continue
        slot = sum(1 for b in blocks if b < i)
        parts[slot] += p**i
    decomposition = JDecomposition(p, u, v, a, tuple(blocks), tuple(parts))
    for part, (lo, hi) in zip(decomposition.parts, decomposition.windows()):
        if not in_index_set_I(p, lo, hi, part):
            raise NotInIndexSetError(f"part {part} of {a} falls outside I({lo}, {hi})")
    return decomposition


def count_decompositions(p: int, u: int, v: int, a: int) -> int:
    """Count every block placement that yields a valid decomposition of ``a``."""
    candidates = range(u, max(u, v - 3))
    found = 0
    for k in range(len(candidates) + 1):
        for blocks in combinations(candidates, k):
            if any(b2 - b1 < 3 for b1, b2 in zip(blocks, blocks[1:])):
                continue
            rest = a - sum(p**i + p ** (i + 1) for i in blocks)
            if rest < 0:
                continue
            edges = (u - 3,) + blocks + (v - 1,)
            remaining = rest
            ok = True
            for lo, hi in ((edges[j] + 3, edges[j + 1] + 1) for j in range(k + 1)):
                part = sum(d * p**i for i, d in enumerate(digits(rest, p)) if lo <= i < hi - 2)
                if not in_index_set_I(p, lo, hi, part):
                    ok = False
                    break
                remaining -= part
            if ok and remaining == 0:
                found += 1
    return found


def b_func(p: int, u: int, v: int, a: int) -> int:
    dec = j_decompose(p, u, v, a)
    return (p ** (v - 1) - p**u) // (p - 1) - (p + 1) * a + p * sum(p**i for i in dec.blocks)


def c_func(p: int, u: int, v: int, a: int) -> int:
    return sum(j_decompose(p, u, v, a).parts)


def i_recursion_sides(p: int, u: int, v: int) -> tuple[list[int], list[int]]:
    """Both sides of I(u, v+2) = I(u, v+1) + (p^{v-1} + I(u, v)) as sorted lists."""
    lhs = sorted(index_set_I(p, u, v + 2))
    shift = p ** (v - 1)
    rhs = sorted(list(index_set_I(p, u, v + 1)) + [shift + a for a in index_set_I(p, u, v)])
    return lhs, rhs


Row = tuple[int, int, int]


def j_recursion_sides(p: int, u: int, v: int) -> tuple[list[Row], list[Row]]:
    """Rows ``(a, b, c)`` over J(u, v+3) against the three transferred pieces.

    The right-hand side keeps duplicates, so overlapping pieces show up as a
    mismatch.
    """
    lhs = sorted((a, b_func(p, u, v + 3, a), c_func(p, u, v + 3, a)) for a in index_set_J(p, u, v + 3))
    rhs: list[Row] = []
    for a in index_set_J(p, u, v + 2):
        rhs.append((a, p ** (v + 1) + b_func(p, u, v + 2, a), c_func(p, u, v + 2, a)))
    for a in index_set_J(p, u, v + 1):
        rhs.append((p**v + a, b_func(p, u, v + 1, a), p**v + c_func(p, u, v + 1, a)))
    for a in index_set_J(p, u, v):
        rhs.append((p**v + p ** (v - 1) + a, b_func(p, u, v, a), c_func(p, u, v, a)))
    return lhs, sorted(rhs)
