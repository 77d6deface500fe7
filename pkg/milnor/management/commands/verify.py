"""
Check one identity on one parameter tuple, or on every profile case that
agrees with the parameters given when some are left out.
Usage: python manage.py verify --id delta-dickson --param s=0 --param i=1 --p 3 --n 2
       python manage.py verify --id cor3.2 --p 3
"""

from __future__ import annotations

import argparse
from typing import Any

from django.core.management.base import CommandError, CommandParser

from milnor.exceptions import HypothesisViolationError
from milnor.harness import IdentityCase, SweepPlan, check, registry, sweep
from milnor.harness.registry import IdentityDefinition, normalize_params
from milnor.management.base import FAILURE_EXIT, CliConfig, MilnorCommand
from milnor.serializers import IdentityCaseSerializer, SweepReportSerializer


def param(text: str) -> tuple[str, Any]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        if "," in value:
            parsed: Any = tuple(int(part) for part in value.split(",") if part.strip())
        else:
            parsed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {name!r} needs integer values, got {value!r}") from None
    return name.strip(), parsed


class Command(MilnorCommand):
    help = "Evaluate both sides of one identity on one parameter tuple, or on its matching profile cases"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--id", dest="identity", required=True, help="identity id or statement tag, see verify_all")
        parser.add_argument(
            "--param",
            dest="params",
            type=param,
            action="append",
            default=[],
            help="name=value, repeatable; lists are comma separated",
        )
        super().add_arguments(parser)

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        definition = registry.get(options["identity"])
        given = dict(options["params"])
        given["p"] = cfg.p
        for name, value in (("n", cfg.n), ("seed", cfg.seed)):
            if name in definition.params and options[name] is not None:
                given[name] = value

        params = dict(given)
        if "n" in definition.params:
            params.setdefault("n", cfg.n)
        if "seed" in definition.params:
            params.setdefault("seed", cfg.seed)

        if all(name in params for name in definition.params):
            self.single(cfg, check(definition.identity, params, self_check=cfg.self_check))
        else:
            self.planned(cfg, definition, given)

    def single(self, cfg: CliConfig, case: IdentityCase) -> None:
        if cfg.json:
            self.write_json(IdentityCaseSerializer(case).data)
        else:
            self.write_case(case)
            if not case.passed:
                self.stdout.write(case.message)
                if case.diff is not None:
                    self.stdout.write(f"lhs - rhs: {case.diff}")
        if not case.passed:
            raise CommandError(f"{case.identity} failed", returncode=FAILURE_EXIT)

    def planned(self, cfg: CliConfig, definition: IdentityDefinition, given: dict[str, Any]) -> None:
        """Run every profile case that agrees with the parameters given."""
        given = normalize_params(given)
        base = definition.plan(cfg.profile, (cfg.p,), cfg.seed)
        plan = SweepPlan(
            base.identity,
            base.axes,
            base.filters + (lambda case: all(case.get(k, v) == v for k, v in given.items()),),
        )
        if not any(True for _ in plan.cases()):
            missing = ", ".join(name for name in definition.params if name not in given)
            raise HypothesisViolationError(
                f"{definition.identity}: no {cfg.profile} case matches; give {missing} with --param"
            )
        report = sweep([plan], self_check=cfg.self_check, profile=cfg.profile, primes=(cfg.p,))
        summary = report.summary(definition.identity)
        if cfg.json:
            self.write_json(SweepReportSerializer(report).data)
        else:
            if summary.first_failure is not None:
                self.write_case(summary.first_failure)
                self.stdout.write(summary.first_failure.message)
            self.stdout.write(
                f"{summary.passed} of {summary.cases} {cfg.profile} cases of "
                f"{definition.identity} passed in {summary.elapsed:.3f}s"
            )
        if not report.ok:
            raise CommandError(f"{definition.identity} failed", returncode=FAILURE_EXIT)

    def write_case(self, case: IdentityCase) -> None:
        shown = ", ".join(f"{k}={v}" for k, v in sorted(case.params.items()))
        branch = f" [{case.branch}]" if case.branch else ""
        self.stdout.write(f"{case.status} {case.identity}({shown}){branch} in {case.elapsed:.3f}s")
