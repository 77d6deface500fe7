from __future__ import annotations

import logging
import time
from collections import Counter
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from milnor.exceptions import InvalidOperationError
from milnor.harness.registry import IdentityCase, Params, SweepPlan, evaluate, registry
from milnor.harness.statements import PROFILES

logger = logging.getLogger(__name__)


@dataclass
class IdentitySummary:
    identity: str
    cases: int = 0
    passed: int = 0
    failed: int = 0
    elapsed: float = 0.0
    branches: Counter = field(default_factory=Counter)
    first_failure: Optional[IdentityCase] = None

    def add(self, case: IdentityCase) -> None:
        self.cases += 1
        self.elapsed += case.elapsed
        if case.branch:
            self.branches[case.branch] += 1
        if case.passed:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = case


@dataclass
class SweepReport:
    profile: str = ""
    primes: tuple[int, ...] = ()
    summaries: list[IdentitySummary] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return sum(s.cases for s in self.summaries)

    @property
    def passed(self) -> int:
        return sum(s.passed for s in self.summaries)

    @property
    def failed(self) -> int:
        return sum(s.failed for s in self.summaries)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self, identity: str) -> IdentitySummary:
        for s in self.summaries:
            if s.identity == identity:
                return s
        raise KeyError(identity)


def _run(job: tuple[str, Params, bool]) -> IdentityCase:
    identity, params, self_check = job
    return evaluate(identity, params, self_check=self_check)


def sweep(
    plans: Iterable[SweepPlan],
    *,
    workers: int = 1,
    self_check: bool = False,
    profile: str = "",
    primes: Sequence[int] = (),
) -> SweepReport:
    """Run every case of every plan and aggregate the outcomes.

    Cases keep plan order in the report whatever ``workers`` is, so the first
    failure recorded per identity is the earliest failing tuple of its plan.
    """
    from milnor.signals import identity_checked, sweep_finished

    start = time.perf_counter()
    report = SweepReport(profile=profile, primes=tuple(primes))
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for plan in plans:
            summary = IdentitySummary(plan.identity)
            jobs = [(plan.identity, params, self_check) for params in plan.cases()]
            results = executor.map(_run, jobs, chunksize=8) if executor else map(_run, jobs)
            for case in results:
                summary.add(case)
                identity_checked.send(sender=IdentityCase, case=case)
            report.summaries.append(summary)
            if summary.failed:
                logger.warning(
                    "%s: %d of %d cases failed, first at %s",
                    summary.identity,
                    summary.failed,
                    summary.cases,
                    summary.first_failure.params,
                )
            else:
                logger.info(
                    "%s: %d cases passed in %.2fs", summary.identity, summary.cases, summary.elapsed
                )
    finally:
        if executor is not None:
            executor.shutdown()
    report.elapsed = time.perf_counter() - start
    sweep_finished.send(sender=SweepReport, report=report)
    return report


def plans_for(
    profile: str,
    primes: Sequence[int],
    *,
    ids: Optional[Sequence[str]] = None,
    seed: int = 0,
) -> list[SweepPlan]:
    if profile not in PROFILES:
        raise InvalidOperationError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    chosen = [registry.get(identity) for identity in ids] if ids else list(registry)
    return [definition.plan(profile, tuple(primes), seed) for definition in chosen]


def verify_all(
    profile: str,
    primes: Sequence[int],
    *,
    ids: Optional[Sequence[str]] = None,
    workers: int = 1,
    self_check: bool = False,
    seed: int = 0,
) -> SweepReport:
    plans = plans_for(profile, primes, ids=ids, seed=seed)
    return sweep(
        plans, workers=workers, self_check=self_check, profile=profile, primes=primes
    )
