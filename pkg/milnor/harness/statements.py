"""
Registered identities.

Each builder returns both sides of one identity for one parameter tuple.
Identities whose natural form divides by L_n are stated multiplied through,
so every side stays a polynomial. ``Q(n, t)`` is zero for ``t < 0``.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Optional

from milnor.algebra import (
    Context,
    Element,
    MatrixFp,
    apply_matrix,
    frobenius,
    power,
    random_element,
    zero,
)
from milnor.exceptions import MilnorError
from milnor.harness.registry import Axis, Params, Sides, SweepPlan, register
from milnor.invariants import B, BracketSpec, L, dickson_q, mui_expansion_sides, mui_m, mui_v
from milnor.padic import (
    b_func,
    c_func,
    digits,
    i_recursion_sides,
    index_set_I,
    index_set_J,
    j_recursion_sides,
)
from milnor.steenrod import MilnorOpType, apply, st_delta, st_u, steenrod_p

QUICK = "quick"
FULL = "full"
PROFILES = (QUICK, FULL)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class Workspace:
    """The invariants of one context, built with a fixed self-check flag."""

    ctx: Context
    self_check: bool = False

    @classmethod
    def of(cls, params: Params, self_check: bool, n: Optional[int] = None) -> "Workspace":
        return cls(Context(params["p"], params["n"] if n is None else n), self_check)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def zero(self) -> Element:
        return zero(self.ctx)

    def B(self, k: int, e: Iterable[int], m: Optional[int] = None) -> Element:
        return B(self.ctx, k, tuple(e), m)

    def L(self, m: int) -> Element:
        return L(self.ctx, m)

    def Q(self, n: int, s: int) -> Element:
        return dickson_q(self.ctx, n, s, self_check=self.self_check)

    def V(self, m: int) -> Element:
        return mui_v(self.ctx, m, self_check=self.self_check)

    def M(self, slist: Sequence[int], d: int = 1) -> Element:
        return mui_m(self.ctx, self.ctx.n, tuple(slist), d)


def _twist(a: Element, e: int) -> Element:
    return frobenius(a, e)


# -- hypotheses ---------------------------------------------------------------


Check = Callable[[], Optional[str]]


def _first(*checks: Check) -> Optional[str]:
    for check in checks:
        reason = check()
        if reason is not None:
            return reason
    return None


def _context(params: Params, n: Optional[int] = None) -> Check:
    def check() -> Optional[str]:
        try:
            Context(params["p"], params["n"] if n is None else n)
        except MilnorError as exc:
            return exc.message
        return None

    return check


def _when(failing: Callable[[], bool], reason: str) -> Check:
    return lambda: reason if failing() else None


def _bracket_shape(params: Params, *, min_width: int = 0) -> Check:
    def check() -> Optional[str]:
        n, k, e = params["n"], params["k"], params["e"]
        if not 0 <= k <= n:
            return f"k must satisfy 0 <= k <= n, got k={k}"
        if len(e) != n - k:
            return f"e-list needs n - k = {n - k} entries, got {len(e)}"
        if len(e) < min_width:
            return f"e-list needs at least {min_width} entries"
        if any(x < 0 for x in e):
            return "e-list entries must be non-negative"
        return None

    return check


def _slist(params: Params) -> Check:
    def check() -> Optional[str]:
        slist, n = params["slist"], params["n"]
        if not slist:
            return "s-list must not be empty"
        if any(s < 0 for s in slist) or any(a >= b for a, b in zip(slist, slist[1:])):
            return f"s-list must be strictly increasing and non-negative, got {list(slist)}"
        if slist and slist[-1] >= n:
            return f"s-list entries must be below n={n}"
        return None

    return check


def _d(params: Params) -> Check:
    return _when(
        lambda: not 1 <= params["d"] <= params["p"] - 1,
        f"d must satisfy 1 <= d <= p - 1, got {params.get('d')}",
    )


def _distinct(values: Sequence[int]) -> bool:
    return len(set(values)) == len(values)


def _ceiling(profile: str, quick, full):
    return quick if profile == QUICK else full


def _ranks(limit: int, start: int = 1) -> Callable[[Params], range]:
    return lambda c: range(start, limit + 1)


def _slists(c: Params) -> list[tuple[int, ...]]:
    n = c["n"]
    return [s for k in range(1, n + 1) for s in combinations(range(n), k)]


def _ds(c: Params) -> range:
    return range(1, c["p"])


# -- brackets -----------------------------------------------------------------


def _stu_bracket_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    top_n, top_e, top_u = _ceiling(profile, (3, 3, 3), (4, 4, 5))
    return SweepPlan(
        "stu-bracket",
        (
            Axis("p", primes),
            Axis("n", _ranks(top_n)),
            Axis("k", lambda c: range(c["n"])),
            Axis("e", lambda c: permutations(range(top_e + 1), c["n"] - c["k"])),
            Axis("u", range(top_u + 1)),
        ),
    )


@register(
    "stu-bracket",
    alias="lem2.2",
    summary="St_u [k; e] = (-1)^(k-1) [k-1; u, e] for k > 0 and 0 for k = 0, e distinct",
    params=("p", "n", "k", "e", "u"),
    hypothesis=lambda params: _first(
        _context(params),
        _bracket_shape(params),
        _when(lambda: not _distinct(params["e"]), "e-list entries must be distinct"),
        _when(lambda: params["u"] < 0, "u must be non-negative"),
    ),
    plan=_stu_bracket_plan,
)
def stu_bracket(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    k, e, u = params["k"], params["e"], params["u"]
    lhs = st_u(u, ws.B(k, e))
    if k == 0:
        return Sides(lhs, ws.zero, "k=0")
    return Sides(lhs, _sign(k - 1) * ws.B(k - 1, (u,) + tuple(e)), "k>0")


def _delta_bracket_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    top_n, top_e, top_i = _ceiling(profile, (3, 3, 3), (4, 4, 5))
    return SweepPlan(
        "delta-bracket",
        (
            Axis("p", primes),
            Axis("n", _ranks(top_n)),
            Axis("k", lambda c: range(c["n"])),
            Axis("e", lambda c: permutations(range(top_e + 1), c["n"] - c["k"])),
            Axis("i", range(1, top_i + 1)),
        ),
        (lambda c: c["e"][0] == min(c["e"]),),
    )


@register(
    "delta-bracket",
    alias="lem2.3",
    summary="St^Delta_i [k; e] = [k; i, e_(k+2), ...] if e_(k+1) = 0 and 0 otherwise, e_(k+1) minimal",
    params=("p", "n", "k", "e", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _bracket_shape(params, min_width=1),
        _when(
            lambda: any(params["e"][0] >= x for x in params["e"][1:]),
            "the first e-list entry must be below every other entry",
        ),
        _when(lambda: params["i"] < 1, "i must be positive"),
    ),
    plan=_delta_bracket_plan,
)
def delta_bracket(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    k, e, i = params["k"], tuple(params["e"]), params["i"]
    lhs = st_delta(i, ws.B(k, e))
    if e[0] == 0:
        return Sides(lhs, ws.B(k, (i,) + e[1:]), "first=0")
    return Sides(lhs, ws.zero, "first>0")


def _recursion_plan(identity: str, with_k: bool):
    def plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
        top_n, top_e = _ceiling(profile, (3, 2), (4, 3))
        axes = [Axis("p", primes), Axis("n", _ranks(top_n))]
        if with_k:
            axes.append(Axis("k", lambda c: range(c["n"])))
        axes.append(Axis("e", lambda c: product(range(top_e + 1), repeat=c["n"] - c.get("k", 0))))
        return SweepPlan(identity, tuple(axes))

    return plan


@register(
    "bracket-recursion-v",
    alias="thm2.4-ct5",
    summary="[e_1..e_(n-1), e_n+n-1] = sum_s (-1)^(n+s) [.., e_n+s] Q_(n-1,s)^(p^e_n) + [e_1..e_(n-1)] V_n^(p^e_n)",
    params=("p", "n", "e"),
    hypothesis=lambda params: _first(
        _context(params),
        _when(lambda: len(params["e"]) != params["n"], "e-list needs n entries"),
        _when(lambda: any(x < 0 for x in params["e"]), "e-list entries must be non-negative"),
    ),
    plan=_recursion_plan("bracket-recursion-v", with_k=False),
)
def bracket_recursion_v(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n = params["n"]
    *head, last = params["e"]
    head = tuple(head)
    lhs = ws.B(0, head + (last + n - 1,))
    rhs = ws.B(0, head) * _twist(ws.V(n), last)
    for s in range(n - 1):
        rhs = rhs + _sign(n + s) * ws.B(0, head + (last + s,)) * _twist(ws.Q(n - 1, s), last)
    return Sides(lhs, rhs)


@register(
    "bracket-recursion-q",
    alias="thm2.4-ct6",
    summary="[k; e.., e_n+n] = sum_s (-1)^(n+s-1) [k; e.., e_n+s] Q_(n,s)^(p^e_n)",
    params=("p", "n", "k", "e"),
    hypothesis=lambda params: _first(
        _context(params),
        _bracket_shape(params, min_width=1),
    ),
    plan=_recursion_plan("bracket-recursion-q", with_k=True),
)
def bracket_recursion_q(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, k = params["n"], params["k"]
    *head, last = params["e"]
    head = tuple(head)
    lhs = ws.B(k, head + (last + n,))
    rhs = ws.zero
    for s in range(n):
        rhs = rhs + _sign(n + s - 1) * ws.B(k, head + (last + s,)) * _twist(ws.Q(n, s), last)
    return Sides(lhs, rhs)


def _power_bracket_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    def limits(c: Params) -> tuple[int, int]:
        if profile == QUICK:
            return 2, 2
        return (3, 3) if c["p"] == 3 else (2, 2)

    return SweepPlan(
        "power-bracket",
        (
            Axis("p", primes),
            Axis("n", lambda c: range(1, limits(c)[0] + 1)),
            Axis("k", lambda c: range(c["n"])),
            Axis("e", lambda c: permutations(range(limits(c)[1] + 1), c["n"] - c["k"])),
            # P^r vanishes on classes of degree below 2r.
            Axis("r", lambda c: range(sum(c["p"] ** x for x in c["e"]) + c["k"] // 2 + 1)),
        ),
    )


@register(
    "power-bracket",
    alias="prop3.3",
    summary="P^r [k; e] = [k; e + eps] when r = sum eps_j p^(e_j) with eps in {0,1}, and 0 for every other r",
    params=("p", "n", "k", "e", "r"),
    hypothesis=lambda params: _first(
        _context(params),
        _bracket_shape(params),
        _when(lambda: not _distinct(params["e"]), "e-list entries must be distinct"),
        _when(lambda: params["r"] < 0, "r must be non-negative"),
    ),
    plan=_power_bracket_plan,
)
def power_bracket(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    k, e, r = params["k"], tuple(params["e"]), params["r"]
    lhs = steenrod_p(r, ws.B(k, e))
    ds = digits(r, ws.p)
    raised = {i for i, d in enumerate(ds) if d}
    if all(d <= 1 for d in ds) and raised <= set(e):
        return Sides(lhs, ws.B(k, tuple(x + 1 if x in raised else x for x in e)), "eps")
    return Sides(lhs, ws.zero, "otherwise")


# -- Dickson invariants -------------------------------------------------------


def _rank_and_s(params: Params) -> Check:
    return _when(
        lambda: not 0 <= params["s"] < params["n"],
        f"s must satisfy 0 <= s < n, got s={params.get('s')}",
    )


def _dickson_plan(identity: str, i_range: Callable[[Params, str], Iterable[int]]):
    def plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
        top_n = _ceiling(profile, 2, 3)
        return SweepPlan(
            identity,
            (
                Axis("p", primes),
                Axis("n", _ranks(top_n)),
                Axis("s", lambda c: range(c["n"])),
                Axis("i", lambda c: i_range(c, profile)),
            ),
        )

    return plan


@register(
    "delta-dickson",
    alias="thm3.1",
    summary="St^Delta_i Q_(n,s) = (-1)^n [0..^s..n-1, i] L_n^(p-2)",
    params=("p", "n", "s", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _rank_and_s(params),
        _when(lambda: params["i"] < 1, "i must be positive"),
    ),
    plan=_dickson_plan("delta-dickson", lambda c, profile: range(1, c["n"] + _ceiling(profile, 3, 4))),
)
def delta_dickson(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, s, i = params["n"], params["s"], params["i"]
    lhs = st_delta(i, ws.Q(n, s))
    columns = tuple(j for j in range(n) if j != s) + (i,)
    rhs = _sign(n) * ws.B(0, columns) * power(ws.L(n), ws.p - 2)
    return Sides(lhs, rhs, "i<n" if i < n else "i>=n")


@register(
    "delta-dickson-cases",
    alias="cor3.2",
    summary="St^Delta_i Q_(n,s) for 1 <= i <= n: (-1)^(s-1) Q_(n,0) if i = s, (-1)^n Q_(n,s) Q_(n,0) if i = n, else 0",
    params=("p", "n", "s", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _rank_and_s(params),
        _when(lambda: not 1 <= params["i"] <= params["n"], "i must satisfy 1 <= i <= n"),
    ),
    plan=_dickson_plan("delta-dickson-cases", lambda c, profile: range(1, c["n"] + 1)),
)
def delta_dickson_cases(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, s, i = params["n"], params["s"], params["i"]
    lhs = st_delta(i, ws.Q(n, s))
    if i == s:
        return Sides(lhs, _sign(s - 1) * ws.Q(n, 0), "i=s")
    if i == n:
        return Sides(lhs, _sign(n) * ws.Q(n, s) * ws.Q(n, 0), "i=n")
    return Sides(lhs, ws.zero, "otherwise")


@register(
    "wilkerson-dickson",
    alias="thm3.4",
    summary="St^Delta_(i+1) Q_(n,s) = P^(p^i) St^Delta_i Q_(n,s) for 0 <= s < n <= i",
    params=("p", "n", "s", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _rank_and_s(params),
        _when(lambda: params["i"] < params["n"], "i must be at least n"),
    ),
    plan=_dickson_plan(
        "wilkerson-dickson", lambda c, profile: range(c["n"], c["n"] + _ceiling(profile, 2, 3))
    ),
)
def wilkerson_dickson(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, s, i = params["n"], params["s"], params["i"]
    q = ws.Q(n, s)
    return Sides(st_delta(i + 1, q), steenrod_p(ws.p**i, st_delta(i, q)))


# -- Mui invariants -----------------------------------------------------------


def _v_plan(identity: str, i_range: Callable[[Params, str], Iterable[int]]):
    def plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
        top_n = _ceiling(profile, 2, 3)
        return SweepPlan(
            identity,
            (
                Axis("p", primes),
                Axis("n", _ranks(top_n)),
                Axis("i", lambda c: i_range(c, profile)),
            ),
        )

    return plan


@register(
    "delta-v",
    alias="thm3.5",
    summary="St^Delta_i V_n = (-1)^(n-1) [0, .., n-2, i] L_(n-1)^(p-2)",
    params=("p", "n", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _when(lambda: params["i"] < 1, "i must be positive"),
    ),
    plan=_v_plan("delta-v", lambda c, profile: range(1, c["n"] + _ceiling(profile, 3, 4))),
)
def delta_v(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, i = params["n"], params["i"]
    lhs = st_delta(i, ws.V(n))
    rhs = _sign(n - 1) * ws.B(0, tuple(range(n - 1)) + (i,)) * power(ws.L(n - 1), ws.p - 2)
    return Sides(lhs, rhs)


@register(
    "delta-v-cases",
    alias="cor3.6",
    summary="St^Delta_i V_n for 0 < i <= n: 0 below n-1, then the i = n-1 and i = n closed forms",
    params=("p", "n", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _when(lambda: not 1 <= params["i"] <= params["n"], "i must satisfy 1 <= i <= n"),
    ),
    plan=_v_plan("delta-v-cases", lambda c, profile: range(1, c["n"] + 1)),
)
def delta_v_cases(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, i = params["n"], params["i"]
    v = ws.V(n)
    lhs = st_delta(i, v)
    if i < n - 1:
        return Sides(lhs, ws.zero, "i<n-1")
    head = _sign(n - 1) * ws.Q(n - 1, 0)
    if i == n - 1:
        return Sides(lhs, head * v, "i=n-1")
    return Sides(lhs, head * (_twist(ws.Q(n - 1, n - 2), 1) * v + _twist(v, 1)), "i=n")


def _m_plan(identity: str, last: str, last_range: Callable[[Params, str], Iterable[int]]):
    def plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
        top_n = _ceiling(profile, 2, 3)
        return SweepPlan(
            identity,
            (
                Axis("p", primes),
                Axis("n", _ranks(top_n)),
                Axis("slist", _slists),
                Axis("d", _ds),
                Axis(last, lambda c: last_range(c, profile)),
            ),
        )

    return plan


@register(
    "delta-m",
    alias="thm3.7",
    summary="St^Delta_i M^(d)_(n;s_1..s_k): the i = s_t, i >= n with s_1 = 0, i >= n with s_1 > 0 and zero cases",
    params=("p", "n", "slist", "d", "i"),
    hypothesis=lambda params: _first(
        _context(params),
        _slist(params),
        _d(params),
        _when(lambda: params["i"] < 1, "i must be positive"),
    ),
    plan=_m_plan("delta-m", "i", lambda c, profile: range(1, c["n"] + _ceiling(profile, 3, 4))),
)
def delta_m(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, slist, d, i = params["n"], tuple(params["slist"]), params["d"], params["i"]
    k = len(slist)
    lhs = st_delta(i, ws.M(slist, d))
    if slist[0] > 0 and i in slist:
        t = slist.index(i) + 1
        rest = tuple(sorted((0,) + tuple(s for s in slist if s != i)))
        return Sides(lhs, _sign(i - t) * ws.M(rest, d), "i=s_t")
    if i < n:
        return Sides(lhs, ws.zero, "otherwise")
    tail = ws.zero
    if d >= 2:
        tail = ws.M(slist) * ws.B(0, tuple(range(1, n)) + (i,)) * power(ws.L(n), d - 2)
    if slist[0] == 0:
        return Sides(lhs, _sign(n - 1) * (d - 1) * tail, "i>=n,s_1=0")
    e = tuple(j for j in range(1, n) if j not in slist) + (i,)
    head = _sign(k) * ws.B(k, e) * power(ws.L(n), d - 1)
    return Sides(lhs, _sign(n - 1) * (head + (d - 1) * tail), "i>=n,s_1>0")


@register(
    "stu-m",
    alias="thm3.8",
    summary="St_u M^(d)_(n;s_1..s_k): (-1)^(k+s_t-t) M^(d) without s_t if u = s_t, (-1)^(n-1) [k-1; .., u] L_n^(d-1) if u >= n, else 0",
    params=("p", "n", "slist", "d", "u"),
    hypothesis=lambda params: _first(
        _context(params),
        _slist(params),
        _d(params),
        _when(lambda: params["u"] < 0, "u must be non-negative"),
    ),
    plan=_m_plan("stu-m", "u", lambda c, profile: range(0, c["n"] + _ceiling(profile, 3, 4))),
)
def stu_m(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    n, slist, d, u = params["n"], tuple(params["slist"]), params["d"], params["u"]
    k = len(slist)
    lhs = st_u(u, ws.M(slist, d))
    if u in slist:
        t = slist.index(u) + 1
        rest = tuple(s for s in slist if s != u)
        return Sides(lhs, _sign(k + u - t) * ws.M(rest, d), "u=s_t")
    if u >= n:
        e = tuple(j for j in range(n) if j not in slist) + (u,)
        return Sides(lhs, _sign(n - 1) * ws.B(k - 1, e) * power(ws.L(n), d - 1), "u>=n")
    return Sides(lhs, ws.zero, "otherwise")


def _wilkerson_mui_hypothesis(params: Params) -> Optional[str]:
    form = params["form"]
    if form not in (1, 2, 3):
        return f"form must be 1, 2 or 3, got {form}"
    if form == 1:
        return _first(
            _context(params),
            _when(
                lambda: params.get("i", -1) < max(params["n"] - 1, 1),
                "form 1 needs i >= max(n - 1, 1)",
            ),
        )
    name = "i" if form == 2 else "u"
    return _first(
        _context(params),
        _when(lambda: "slist" not in params or "d" not in params, "forms 2 and 3 need slist and d"),
        _slist(params),
        _d(params),
        _when(lambda: params.get(name, -1) < params["n"], f"form {form} needs {name} >= n"),
    )


def _wilkerson_mui_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    steps = _ceiling(profile, 2, 3)

    def top(c: Params) -> int:
        return _ceiling(profile, 2, 3 if c["p"] == 3 else 2)

    def shifts(c: Params) -> Iterable[Optional[int]]:
        low = max(c["n"] - 1, 1) if c["form"] == 1 else c["n"]
        return range(low, low + steps)

    def only(forms: tuple[int, ...], values: Callable[[Params], Iterable]) -> Callable[[Params], Iterable]:
        return lambda c: values(c) if c["form"] in forms else [None]

    return SweepPlan(
        "wilkerson-mui",
        (
            Axis("p", primes),
            Axis("form", (1, 2, 3)),
            Axis("n", lambda c: range(1, top(c) + 1)),
            Axis("slist", only((2, 3), _slists)),
            Axis("d", only((2, 3), _ds)),
            Axis("i", only((1, 2), shifts)),
            Axis("u", only((3,), shifts)),
        ),
    )


@register(
    "wilkerson-mui",
    alias="thm3.9",
    summary="St^Delta_(i+1) X = P^(p^i) St^Delta_i X for X = V_n or M^(d), and St_(u+1) M^(d) = P^(p^u) St_u M^(d) for u >= n",
    params=("p", "n", "form"),
    hypothesis=_wilkerson_mui_hypothesis,
    plan=_wilkerson_mui_plan,
)
def wilkerson_mui(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    form, n = params["form"], params["n"]
    if form == 1:
        i = params["i"]
        v = ws.V(n)
        return Sides(st_delta(i + 1, v), steenrod_p(ws.p**i, st_delta(i, v)), "V")
    m = ws.M(params["slist"], params["d"])
    if form == 2:
        i = params["i"]
        return Sides(st_delta(i + 1, m), steenrod_p(ws.p**i, st_delta(i, m)), "Delta on M")
    u = params["u"]
    return Sides(st_u(u + 1, m), steenrod_p(ws.p**u, st_u(u, m)), "St_u on M")


def _high_rank_hypothesis(params: Params) -> Optional[str]:
    form = params["form"]
    if form not in range(1, 7):
        return f"form must be one of 1..6, got {form}"
    checks: list[Check] = [_context(params)]
    if form in (1, 2):
        checks.append(_when(lambda: "s" not in params, f"form {form} needs s"))
        checks.append(lambda: _rank_and_s(params)())
    elif form >= 4:
        checks.append(_when(lambda: "slist" not in params or "d" not in params, f"form {form} needs slist and d"))
        checks.append(_slist(params))
        checks.append(_d(params))
        if form == 5:
            checks.append(_when(lambda: params["slist"][0] == 0, "form 5 needs s_1 > 0"))
        if form == 6:
            checks.append(_when(lambda: params["slist"][0] != 0, "form 6 needs s_1 = 0"))
    return _first(*checks)


def _high_rank_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    def top(c: Params) -> int:
        return _ceiling(profile, 2, 3 if c["p"] == 3 else 2)

    def s_values(c: Params) -> Iterable:
        return range(c["n"]) if c["form"] in (1, 2) else [None]

    def slists(c: Params) -> Iterable:
        return _slists(c) if c["form"] >= 4 else [None]

    def degrees(c: Params) -> Iterable:
        return _ds(c) if c["form"] >= 4 else [None]

    return SweepPlan(
        "high-rank-expansions",
        (
            Axis("p", primes),
            Axis("form", range(1, 7)),
            Axis("n", lambda c: range(1, top(c) + 1)),
            Axis("s", s_values),
            Axis("slist", slists),
            Axis("d", degrees),
        ),
    )


@register(
    "high-rank-expansions",
    alias="rem3.10",
    summary="closed forms of St^Delta_(n+1) Q, St^Delta_(n+2) Q, St^Delta_(n+1) V_n, St_n M^(d) and St^Delta_n M^(d)",
    params=("p", "n", "form"),
    hypothesis=_high_rank_hypothesis,
    plan=_high_rank_plan,
)
def high_rank_expansions(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check)
    form, n, p = params["form"], params["n"], ws.p
    if form in (1, 2):
        s = params["s"]
        q = ws.Q(n, s)
        top = ws.Q(n, n - 1)
        if form == 1:
            lhs = st_delta(n + 1, q)
            rhs = _sign(n) * ws.Q(n, 0) * (_twist(top, 1) * q - _twist(ws.Q(n, s - 1), 1))
            return Sides(lhs, rhs, "Delta_(n+1) Q")
        lhs = st_delta(n + 2, q)
        inner = (
            power(top, p * p + p) * q
            - _twist(ws.Q(n, n - 2), 2) * q
            + _twist(ws.Q(n, s - 2), 2)
            - _twist(ws.Q(n, s - 1), 1) * _twist(top, 2)
        )
        return Sides(lhs, _sign(n) * ws.Q(n, 0) * inner, "Delta_(n+2) Q")
    if form == 3:
        v = ws.V(n)
        below = ws.Q(n - 1, n - 2)
        lhs = st_delta(n + 1, v)
        inner = (
            (power(below, p * p + p) - _twist(ws.Q(n - 1, n - 3), 2)) * v
            + _twist(below, 2) * _twist(v, 1)
            + _twist(v, 2)
        )
        return Sides(lhs, _sign(n - 1) * ws.Q(n - 1, 0) * inner, "Delta_(n+1) V")
    slist, d = tuple(params["slist"]), params["d"]
    k = len(slist)
    m = ws.M(slist, d)
    if form == 4:
        rhs = ws.zero
        for t, s in enumerate(slist, start=1):
            rest = tuple(x for x in slist if x != s)
            rhs = rhs + _sign(n - 1 + k - t) * ws.M(rest, d) * ws.Q(n, s)
        return Sides(st_u(n, m), rhs, "St_n M")
    lhs = st_delta(n, m)
    if form == 5:
        rhs = d * m * ws.Q(n, 0)
        for t, s in enumerate(slist, start=1):
            rest = tuple(sorted((0,) + tuple(x for x in slist if x != s)))
            rhs = rhs + _sign(t) * ws.M(rest, d) * ws.Q(n, s)
        return Sides(lhs, _sign(n - 1) * rhs, "Delta_n M, s_1>0")
    return Sides(lhs, _sign(n - 1) * (d - 1) * m * ws.Q(n, 0), "Delta_n M, s_1=0")


# -- low-rank closed forms ----------------------------------------------------


def _window(params: Params, *names: str) -> Check:
    def check() -> Optional[str]:
        values = [params[name] for name in names]
        if values[0] < 0 or any(a >= b for a, b in zip(values, values[1:])):
            joined = " < ".join(names)
            return f"parameters must satisfy 0 <= {joined}, got {values}"
        return None

    return check


def _uv_plan(identity: str, quick: tuple[int, int], full: Callable[[int], tuple[int, int]]):
    # (largest u, largest v - u)
    def plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
        def limits(c: Params) -> tuple[int, int]:
            return quick if profile == QUICK else full(c["p"])

        return SweepPlan(
            identity,
            (
                Axis("p", primes),
                Axis("u", lambda c: range(limits(c)[0] + 1)),
                Axis("v", lambda c: range(c["u"] + 1, c["u"] + limits(c)[1] + 1)),
            ),
        )

    return plan


def _rank(params: Params, n: int) -> Check:
    return _context(params, n)


@register(
    "rank-two-v",
    alias="prop4.1-ct7",
    summary="[u, v] = sum_(s=u)^(v-1) V_1^(p^v - p^(s+1) + p^u) V_2^(p^s)",
    params=("p", "u", "v"),
    hypothesis=lambda params: _first(_rank(params, 2), _window(params, "u", "v")),
    plan=_uv_plan("rank-two-v", (1, 3), lambda p: (2, 5)),
)
def rank_two_v(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=2)
    p, u, v = ws.p, params["u"], params["v"]
    rhs = ws.zero
    for s in range(u, v):
        rhs = rhs + power(ws.V(1), p**v - p ** (s + 1) + p**u) * _twist(ws.V(2), s)
    return Sides(ws.B(0, (u, v)), rhs)


def _uvw_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    def span(c: Params) -> int:
        if profile == QUICK:
            return 3
        return 5 if c["p"] == 3 else 3

    return SweepPlan(
        "rank-three-v",
        (
            Axis("p", primes),
            Axis("u", range(_ceiling(profile, 1, 2))),
            Axis("v", lambda c: range(c["u"] + 1, c["u"] + span(c))),
            Axis("w", lambda c: range(c["v"] + 1, c["u"] + span(c) + 1)),
        ),
    )


@register(
    "rank-three-v",
    alias="prop4.1-ct8",
    summary="[u, v, w] L_2^(p^w) = sum_s [u, s+1][v, w] L_2^(p^w - p^(s+1)) V_3^(p^s) + sum_s [u, v][s+1, w] L_2^(p^w - p^(s+1)) V_3^(p^s)",
    params=("p", "u", "v", "w"),
    hypothesis=lambda params: _first(_rank(params, 3), _window(params, "u", "v", "w")),
    plan=_uvw_plan,
)
def rank_three_v(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=3)
    p, u, v, w = ws.p, params["u"], params["v"], params["w"]
    l2, v3 = ws.L(2), ws.V(3)
    lhs = ws.B(0, (u, v, w)) * _twist(l2, w)
    rhs = ws.zero
    for s in range(u, v):
        rhs = rhs + ws.B(0, (u, s + 1)) * ws.B(0, (v, w)) * power(l2, p**w - p ** (s + 1)) * _twist(v3, s)
    for s in range(v, w):
        rhs = rhs + ws.B(0, (u, v)) * ws.B(0, (s + 1, w)) * power(l2, p**w - p ** (s + 1)) * _twist(v3, s)
    return Sides(lhs, rhs)


@register(
    "rank-three-adjacent",
    alias="ct9",
    summary="[u, v, v+1] = sum_(s=u)^(v-1) [u, s+1] L_2^(p^v - p^(s+1)) V_3^(p^s)",
    params=("p", "u", "v"),
    hypothesis=lambda params: _first(_rank(params, 3), _window(params, "u", "v")),
    plan=_uv_plan("rank-three-adjacent", (1, 3), lambda p: (2, 5 if p == 3 else 3)),
)
def rank_three_adjacent(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=3)
    p, u, v = ws.p, params["u"], params["v"]
    l2, v3 = ws.L(2), ws.V(3)
    rhs = ws.zero
    for s in range(u, v):
        rhs = rhs + ws.B(0, (u, s + 1)) * power(l2, p**v - p ** (s + 1)) * _twist(v3, s)
    return Sides(ws.B(0, (u, v, v + 1)), rhs)


@register(
    "rank-two-dickson",
    alias="prop4.2",
    summary="[u, v] = sum over a in I(u, v) of (-1)^a L_2^(p^u + p(p-1)a) Q_(2,1)^((p^(v-1) - p^u)/(p-1) - (p+1)a)",
    params=("p", "u", "v"),
    hypothesis=lambda params: _first(_rank(params, 2), _window(params, "u", "v")),
    plan=_uv_plan("rank-two-dickson", (1, 3), lambda p: (2, 4 if p == 3 else 3)),
)
def rank_two_dickson(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=2)
    p, u, v = ws.p, params["u"], params["v"]
    l2, q21 = ws.L(2), ws.Q(2, 1)
    base = (p ** (v - 1) - p**u) // (p - 1)
    rhs = ws.zero
    for a in sorted(index_set_I(p, u, v)):
        # A negative exponent raises and the case is reported as failing.
        term = power(l2, p**u + p * (p - 1) * a) * power(q21, base - (p + 1) * a)
        rhs = rhs + _sign(a) * term
    return Sides(ws.B(0, (u, v)), rhs)


@register(
    "rank-three-dickson",
    alias="prop4.3",
    summary="[u, v, v+1] = sum over a in J(u, v) of (-1)^a L_3^(p^u + p(p-1)a) Q_(3,1)^b(a) Q_(3,2)^c(a)",
    params=("p", "u", "v"),
    hypothesis=lambda params: _first(_rank(params, 3), _window(params, "u", "v")),
    plan=_uv_plan("rank-three-dickson", (0, 4), lambda p: (1, 5 if p == 3 else 3)),
)
def rank_three_dickson(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=3)
    p, u, v = ws.p, params["u"], params["v"]
    l3, q31, q32 = ws.L(3), ws.Q(3, 1), ws.Q(3, 2)
    rhs = ws.zero
    for a in sorted(index_set_J(p, u, v)):
        term = (
            power(l3, p**u + p * (p - 1) * a)
            * power(q31, b_func(p, u, v, a))
            * power(q32, c_func(p, u, v, a))
        )
        rhs = rhs + _sign(a) * term
    return Sides(ws.B(0, (u, v, v + 1)), rhs)


def _index_recursion_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    span = _ceiling(profile, 6, 9)
    return SweepPlan(
        "j-recursion",
        (
            Axis("p", primes),
            Axis("form", (1, 2)),
            Axis("u", range(_ceiling(profile, 2, 3))),
            Axis("v", lambda c: range(c["u"] + 1, c["u"] + span + 1)),
        ),
    )


@register(
    "j-recursion",
    alias="lem4.4",
    summary="I(u, v+2) = I(u, v+1) + (p^(v-1) + I(u, v)) and the transfer of J(u, v+3) with b and c onto J(u, v+2), J(u, v+1), J(u, v)",
    params=("p", "u", "v", "form"),
    hypothesis=lambda params: _first(
        _rank(params, 1),
        _window(params, "u", "v"),
        _when(lambda: params["form"] not in (1, 2), "form must be 1 (I sets) or 2 (J rows)"),
    ),
    plan=_index_recursion_plan,
)
def j_recursion(params: Params, self_check: bool) -> Sides:
    p, u, v = params["p"], params["u"], params["v"]
    if params["form"] == 1:
        lhs, rhs = i_recursion_sides(p, u, v)
        return Sides(lhs, rhs, "I")
    lhs, rhs = j_recursion_sides(p, u, v)
    return Sides(lhs, rhs, "J")


@register(
    "rank-three-recursion",
    alias="lem4.5",
    summary="[u, v+3, v+4] = [u, v+2, v+3] Q_(3,1)^(p^(v+1)) - [u, v+1, v+2] Q_(3,0)^(p^(v+1)) Q_(3,2)^(p^v) + [u, v, v+1] Q_(3,0)^(p^(v+1) + p^v)",
    params=("p", "u", "v"),
    hypothesis=lambda params: _first(_rank(params, 3), _window(params, "u", "v")),
    plan=_uv_plan("rank-three-recursion", (0, 2), lambda p: (1, 3 if p == 3 else 2)),
)
def rank_three_recursion(params: Params, self_check: bool) -> Sides:
    ws = Workspace.of(params, self_check, n=3)
    u, v = params["u"], params["v"]
    q30, q31, q32 = ws.Q(3, 0), ws.Q(3, 1), ws.Q(3, 2)
    lhs = ws.B(0, (u, v + 3, v + 4))
    rhs = (
        ws.B(0, (u, v + 2, v + 3)) * _twist(q31, v + 1)
        - ws.B(0, (u, v + 1, v + 2)) * _twist(q30, v + 1) * _twist(q32, v)
        + ws.B(0, (u, v, v + 1)) * _twist(q30, v + 1) * _twist(q30, v)
    )
    return Sides(lhs, rhs)


# -- cross-checks -------------------------------------------------------------


def _mui_expansion_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    top_n, top_e = _ceiling(profile, (3, 2), (3, 3))
    return SweepPlan(
        "mui-expansion",
        (
            Axis("p", primes),
            Axis("n", _ranks(top_n)),
            Axis("k", lambda c: range(1, c["n"] + 1)),
            Axis("e", lambda c: product(range(top_e + 1), repeat=c["n"] - c["k"])),
        ),
    )


@register(
    "mui-expansion",
    summary="[k; e] L_n = (-1)^(k(k-1)/2) sum over s_1 < .. < s_k of (-1)^(s_1+..+s_k) M_(n;s) [s, e]",
    params=("p", "n", "k", "e"),
    hypothesis=lambda params: _first(
        _context(params),
        _bracket_shape(params),
        _when(lambda: params["k"] < 1, "k must be positive"),
    ),
    plan=_mui_expansion_plan,
)
def mui_expansion(params: Params, self_check: bool) -> Sides:
    ctx = Context(params["p"], params["n"])
    lhs, rhs = mui_expansion_sides(BracketSpec(ctx, params["k"], tuple(params["e"]), params["n"]))
    return Sides(lhs, rhs)


def _equivariance_plan(profile: str, primes: tuple[int, ...], seed: int) -> SweepPlan:
    count = _ceiling(profile, 5, 20)
    return SweepPlan(
        "equivariance",
        (
            Axis("p", primes),
            Axis("n", _ranks(3)),
            Axis("seed", range(seed, seed + count)),
        ),
    )


@register(
    "equivariance",
    summary="St^(S,R)(g a) = g St^(S,R)(a) for a random operation, element and invertible matrix g",
    params=("p", "n", "seed"),
    hypothesis=lambda params: _context(params)(),
    plan=_equivariance_plan,
)
def equivariance(params: Params, self_check: bool) -> Sides:
    ctx = Context(params["p"], params["n"])
    rng = random.Random(params["seed"])
    op = MilnorOpType.random(rng)
    a = random_element(ctx, rng)
    g = MatrixFp.random_general_linear(ctx, rng)
    return Sides(apply(op, apply_matrix(g, a)), apply_matrix(g, apply(op, a)), "identity" if op.is_identity else "")
