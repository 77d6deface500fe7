"""
The identity registry.

Every identity is a builder that turns a parameter map into two sides
which must agree. Builders are registered with a decorator, the same way
system checks are::

    @register("delta-dickson", alias="...", summary="...",
              params=("p", "n", "s", "i"), hypothesis=..., plan=...)
    def delta_dickson(params, self_check):
        ...
        return Sides(lhs, rhs)
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Any, Optional, Union

from milnor.algebra import Element
from milnor.exceptions import (
    HypothesisViolationError,
    MilnorError,
    UnknownIdentityError,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

# Parameters that always hold a list of integers, even when given one value.
LIST_PARAMS = frozenset({"e", "slist"})

Params = dict[str, Any]
Side = Union[Element, list, tuple]


@dataclass(frozen=True)
class Sides:
    lhs: Side
    rhs: Side
    branch: str = ""


@dataclass(frozen=True)
class IdentityCase:
    identity: str
    params: Params
    status: str
    branch: str = ""
    message: str = ""
    elapsed: float = 0.0
    diff: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class Axis:
    """One sweep parameter; ``values`` may depend on the axes before it."""

    name: str
    values: Union[Iterable[Any], Callable[[Params], Iterable[Any]]]

    def expand(self, params: Params) -> Iterable[Any]:
        return self.values(params) if callable(self.values) else self.values


@dataclass(frozen=True)
class SweepPlan:
    """Nested axes plus filters. A plan without axes is empty.

    An axis value of ``None`` leaves that parameter out of the case.
    """

    identity: str
    axes: tuple[Axis, ...] = ()
    filters: tuple[Callable[[Params], bool], ...] = ()

    def cases(self) -> Iterator[Params]:
        if not self.axes:
            return

        def walk(depth: int, params: Params) -> Iterator[Params]:
            if depth == len(self.axes):
                case = {name: value for name, value in params.items() if value is not None}
                if all(f(case) for f in self.filters):
                    yield case
                return
            axis = self.axes[depth]
            for value in axis.expand(params):
                params[axis.name] = value
                yield from walk(depth + 1, params)
            params.pop(axis.name, None)

        yield from walk(0, {})

    def __len__(self) -> int:
        return sum(1 for _ in self.cases())


Builder = Callable[[Params, bool], Sides]
Hypothesis = Callable[[Params], Optional[str]]
PlanFactory = Callable[[str, tuple[int, ...], int], SweepPlan]


@dataclass(frozen=True)
class IdentityDefinition:
    identity: str
    summary: str
    params: tuple[str, ...]
    build: Builder
    hypothesis: Hypothesis
    plan_factory: PlanFactory = field(repr=False)
    alias: str = ""

    def violation(self, params: Params) -> Optional[str]:
        missing = [name for name in self.params if name not in params]
        if missing:
            return f"missing parameter(s) {', '.join(missing)}"
        return self.hypothesis(params)

    def plan(self, profile: str, primes: tuple[int, ...], seed: int = 0) -> SweepPlan:
        """The profile's plan, restricted to tuples that meet the hypotheses."""
        base = self.plan_factory(profile, tuple(primes), seed)
        return SweepPlan(
            self.identity,
            base.axes,
            base.filters + (lambda params: self.violation(params) is None,),
        )


class IdentityRegistry:
    def __init__(self) -> None:
        self._definitions: dict[str, IdentityDefinition] = {}
        # Short statement tags accepted wherever an id is.
        self._aliases: dict[str, str] = {}

    def register(
        self,
        identity: str,
        *,
        summary: str,
        params: tuple[str, ...],
        hypothesis: Hypothesis,
        plan: PlanFactory,
        alias: str = "",
    ) -> Callable[[Builder], Builder]:
        def inner(build: Builder) -> Builder:
            taken = set(self._definitions) | set(self._aliases)
            if identity in taken or (alias and alias in taken):
                raise ValueError(f"identity {identity!r} or alias {alias!r} is already registered")
            self._definitions[identity] = IdentityDefinition(
                identity, summary, params, build, hypothesis, plan, alias
            )
            if alias:
                self._aliases[alias] = identity
            return build

        return inner

    def get(self, identity: str) -> IdentityDefinition:
        try:
            return self._definitions[self._aliases.get(identity, identity)]
        except KeyError:
            raise UnknownIdentityError(f"unknown identity id {identity!r}") from None

    def ids(self) -> list[str]:
        return list(self._definitions)

    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    def __contains__(self, identity: object) -> bool:
        return identity in self._definitions or identity in self._aliases

    def __iter__(self) -> Iterator[IdentityDefinition]:
        return iter(self._definitions.values())


registry = IdentityRegistry()
register = registry.register


def normalize_params(params: Mapping[str, Any]) -> Params:
    out: Params = {}
    for name, value in params.items():
        if name in LIST_PARAMS:
            value = (value,) if isinstance(value, int) else tuple(value)
        out[name] = value
    return out


def _difference(lhs: Side, rhs: Side) -> Any:
    if isinstance(lhs, Element) and isinstance(rhs, Element):
        return None if lhs == rhs else lhs - rhs
    if lhs == rhs:
        return None
    only_left = [row for row in lhs if row not in rhs]
    only_right = [row for row in rhs if row not in lhs]
    return f"left only {only_left}; right only {only_right}; sizes {len(lhs)} and {len(rhs)}"


def evaluate(identity: str, params: Mapping[str, Any], *, self_check: bool = False) -> IdentityCase:
    """Build and compare both sides without sending any signal."""
    definition = registry.get(identity)
    identity = definition.identity
    params = normalize_params(params)
    reason = definition.violation(params)
    if reason is not None:
        raise HypothesisViolationError(f"{identity}: {reason}")
    start = time.perf_counter()
    try:
        sides = definition.build(params, self_check)
    except MilnorError as exc:
        return IdentityCase(
            identity, params, FAIL, message=str(exc), elapsed=time.perf_counter() - start
        )
    diff = _difference(sides.lhs, sides.rhs)
    return IdentityCase(
        identity,
        params,
        PASS if diff is None else FAIL,
        branch=sides.branch,
        message="" if diff is None else "sides differ",
        elapsed=time.perf_counter() - start,
        diff=diff,
    )


def check(identity: str, params: Mapping[str, Any], *, self_check: bool = False) -> IdentityCase:
    from milnor.signals import identity_checked

    case = evaluate(identity, params, self_check=self_check)
    identity_checked.send(sender=IdentityCase, case=case)
    return case
