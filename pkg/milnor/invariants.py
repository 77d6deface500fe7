"""
Determinant invariants and the Dickson and Mui invariants built from them.

``[k; e_{k+1}, ..., e_m]`` is expanded along its exterior rows::

    [k; e] = sum over k-subsets I of {1..m} of sign(sigma_I) x_I [e]_I

where ``[e]_I`` is the y-determinant in the variables outside I. With
``k = 0`` this is ``det(y_i^{p^{e_j}})``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from milnor.algebra import (
    MAX_EXPONENT,
    Context,
    Element,
    Key,
    exact_div,
    make_generator,
    mul,
    one,
    power,
    zero,
)
from milnor.exceptions import (
    ArityError,
    ExponentOverflowError,
    IndexOutOfRangeError,
    InvalidOperationError,
    SelfCheckError,
    UnknownIdentifierError,
)

logger = logging.getLogger(__name__)


def _permutation_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(1 for i, a in enumerate(perm) for b in perm[i + 1:] if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class BracketSpec:
    ctx: Context
    k: int
    e: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "e", tuple(self.e))
        if not 0 <= self.k <= self.m <= self.ctx.n:
            raise IndexOutOfRangeError(
                f"bracket needs 0 <= k <= m <= n, got k={self.k}, m={self.m}, n={self.ctx.n}"
            )
        if len(self.e) != self.m - self.k:
            raise ArityError(
                f"bracket [{self.k}; ...] on {self.m} variables needs {self.m - self.k} "
                f"exponents, got {len(self.e)}"
            )
        if any(x < 0 for x in self.e):
            raise InvalidOperationError(f"bracket exponents must be non-negative, got {list(self.e)}")

    @property
    def distinct(self) -> bool:
        return len(set(self.e)) == len(self.e)

    def __str__(self) -> str:
        return f"B({self.k};[{','.join(map(str, self.e))}];{self.m})"


@lru_cache(maxsize=4096)
def _bracket(ctx: Context, k: int, e: tuple[int, ...], m: int) -> Element:
    if len(set(e)) < len(e):
        return zero(ctx)
    p, n = ctx.p, ctx.n
    powers = [p**x for x in e]
    if any(q > MAX_EXPONENT for q in powers):
        raise ExponentOverflowError(f"p^e exceeds the 64-bit exponent range for e={list(e)}")
    perms = [(perm, _permutation_sign(perm)) for perm in permutations(range(len(e)))]
    acc: dict[Key, int] = {}
    for rows in combinations(range(1, m + 1), k):
        sign_rows = -1 if sum(i - j for j, i in enumerate(rows, start=1)) % 2 else 1
        rest = [i for i in range(1, m + 1) if i not in rows]
        for perm, sign in perms:
            exps = [0] * n
            for col, which in zip(rest, perm):
                exps[col - 1] = powers[which]
            key = (rows, tuple(exps))
            acc[key] = acc.get(key, 0) + sign_rows * sign
    return Element(ctx, acc)


def bracket(spec: BracketSpec) -> Element:
    return _bracket(spec.ctx, spec.k, spec.e, spec.m)


def B(ctx: Context, k: int, e, m: int | None = None) -> Element:
    """Shorthand for ``bracket(BracketSpec(ctx, k, e, m))``; m defaults to k + len(e)."""
    e = tuple(e)
    return bracket(BracketSpec(ctx, k, e, k + len(e) if m is None else m))


def _check_rank(ctx: Context, m: int, what: str) -> None:
    if not 0 <= m <= ctx.n:
        raise IndexOutOfRangeError(f"{what} needs 0 <= m <= {ctx.n}, got {m}")


def L(ctx: Context, m: int) -> Element:
    """L_m = [0, 1, ..., m-1]; L_0 = 1."""
    _check_rank(ctx, m, "L")
    return B(ctx, 0, range(m))


def Ls(ctx: Context, m: int, s: int) -> Element:
    """L_{m,s} = [0, ..., s^, ..., m]; L_{m,m} = L_m."""
    _check_rank(ctx, m, "Ls")
    if not 0 <= s <= m:
        raise IndexOutOfRangeError(f"Ls({m},{s}) needs 0 <= s <= m")
    return B(ctx, 0, [j for j in range(m + 1) if j != s])


@lru_cache(maxsize=1024)
def _dickson(ctx: Context, n: int, s: int) -> Element:
    if s < 0:
        return zero(ctx)
    if s >= n:
        return one(ctx)
    left = power(_dickson(ctx, n - 1, s - 1), ctx.p)
    right = mul(_dickson(ctx, n - 1, s), power(_mui_v(ctx, n), ctx.p - 1))
    return left + right


def dickson_q(ctx: Context, n: int, s: int, *, self_check: bool = False) -> Element:
    """Q_{n,s} through Q_{n,s} = Q_{n-1,s-1}^p + Q_{n-1,s} V_n^{p-1}.

    Q_{n,n} = 1 and Q_{n,t} = 0 for t < 0. With ``self_check`` the result is
    multiplied back against L_{n,s} = Q_{n,s} L_n.
    """
    _check_rank(ctx, n, "Q")
    if s > n:
        raise IndexOutOfRangeError(f"Q({n},{s}) needs s <= n")
    q = _dickson(ctx, n, s)
    if self_check and s >= 0 and q * L(ctx, n) != Ls(ctx, n, s):
        raise SelfCheckError(f"Q({n},{s}) * L({n}) differs from Ls({n},{s})")
    return q


@lru_cache(maxsize=256)
def _mui_v(ctx: Context, m: int) -> Element:
    p = ctx.p
    y = make_generator(ctx, "y", m)
    total = zero(ctx)
    for s in range(m):
        term = mul(_dickson(ctx, m - 1, s), power(y, p**s))
        total = total + term if (m + s - 1) % 2 == 0 else total - term
    return total


def mui_v(ctx: Context, m: int, *, self_check: bool = False) -> Element:
    """V_m = sum_s (-1)^{m+s-1} Q_{m-1,s} y_m^{p^s}, which equals L_m / L_{m-1}.

    With ``self_check`` that quotient is computed by exact division and compared.
    """
    if not 1 <= m <= ctx.n:
        raise IndexOutOfRangeError(f"V({m}) needs 1 <= m <= {ctx.n}")
    v = _mui_v(ctx, m)
    if self_check and divide_by_L(L(ctx, m), m - 1) != v:
        raise SelfCheckError(f"V({m}) differs from L({m}) / L({m - 1})")
    return v


def _check_slist(ctx: Context, m: int, slist: tuple[int, ...]) -> None:
    if not 1 <= m <= ctx.n:
        raise IndexOutOfRangeError(f"M needs 1 <= m <= {ctx.n}, got {m}")
    if any(s < 0 for s in slist) or any(a >= b for a, b in zip(slist, slist[1:])) or (
        slist and slist[-1] >= m
    ):
        raise InvalidOperationError(f"s-list must satisfy 0 <= s_1 < ... < s_k < {m}, got {list(slist)}")


def mui_m(ctx: Context, m: int, slist=(), d: int = 1) -> Element:
    """M_{m,s_1..s_k}^{(d)} = [k; 0, ..., s_1^, ..., s_k^, ..., m-1] L_m^{d-1}."""
    slist = tuple(slist)
    _check_slist(ctx, m, slist)
    if not 1 <= d <= ctx.p - 1:
        raise InvalidOperationError(f"d must satisfy 1 <= d <= {ctx.p - 1}, got {d}")
    e = [j for j in range(m) if j not in slist]
    base = B(ctx, len(slist), e, m)
    if d == 1:
        return base
    return mul(base, power(L(ctx, m), d - 1))


def mui_expansion_sides(spec: BracketSpec) -> tuple[Element, Element]:
    """Both sides of Mui's expansion of [k; e] after clearing the L_n denominator::

        [k; e] L_n = (-1)^{k(k-1)/2} sum_{s_1 < ... < s_k < n} (-1)^{s_1+...+s_k} M_{n,s} [s, e]
    """
    ctx, k, n = spec.ctx, spec.k, spec.ctx.n
    if spec.m != n:
        raise ArityError(f"the expansion needs a bracket on all {n} variables")
    if k < 1:
        raise InvalidOperationError("the expansion needs k >= 1")
    lhs = mul(bracket(spec), L(ctx, n))
    rhs = zero(ctx)
    for slist in combinations(range(n), k):
        term = mul(mui_m(ctx, n, slist), B(ctx, 0, slist + spec.e))
        rhs = rhs + term if sum(slist) % 2 == 0 else rhs - term
    if (k * (k - 1) // 2) % 2:
        rhs = -rhs
    return lhs, rhs


def mui_expansion_check(spec: BracketSpec) -> bool:
    lhs, rhs = mui_expansion_sides(spec)
    return lhs == rhs


def divide_by_L(a: Element, m: int) -> Element:
    """Exact quotient a / L_m."""
    return exact_div(a, L(a.ctx, m))


_ARITY = {"L": 1, "Ls": 2, "Q": 2, "V": 1, "M": 1, "Md": 2}


@dataclass(frozen=True)
class InvariantName:
    """A named invariant: L(m), Ls(m,s), Q(n,s), V(m), M(m;s..) or Md(m,d;s..)."""

    kind: str
    args: tuple[int, ...]
    slist: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise UnknownIdentifierError(f"unknown invariant {self.kind!r}")
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "slist", tuple(self.slist))
        if len(self.args) != _ARITY[self.kind]:
            raise ArityError(
                f"{self.kind} takes {_ARITY[self.kind]} integer argument(s), got {len(self.args)}"
            )
        if self.slist and self.kind not in ("M", "Md"):
            raise ArityError(f"{self.kind} takes no s-list")

    def build(self, ctx: Context, *, self_check: bool = False) -> Element:
        a = self.args
        if self.kind == "L":
            return L(ctx, a[0])
        if self.kind == "Ls":
            return Ls(ctx, a[0], a[1])
        if self.kind == "Q":
            return dickson_q(ctx, a[0], a[1], self_check=self_check)
        if self.kind == "V":
            return mui_v(ctx, a[0], self_check=self_check)
        if self.kind == "M":
            return mui_m(ctx, a[0], self.slist)
        return mui_m(ctx, a[0], self.slist, a[1])

    def __str__(self) -> str:
        head = ",".join(map(str, self.args))
        if self.kind in ("M", "Md"):
            return f"{self.kind}({head};{','.join(map(str, self.slist))})"
        return f"{self.kind}({head})"
