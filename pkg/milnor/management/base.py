from __future__ import annotations

import argparse
from dataclasses import dataclass
from typing import Any

from django.core.management.base import BaseCommand, CommandError, CommandParser
from rest_framework.renderers import JSONRenderer

from milnor.algebra import Context, Element, degree
from milnor.conf import conf
from milnor.defaults import verify_profiles
from milnor.exceptions import (
    ArityError,
    ElementSyntaxError,
    ExpressionSyntaxError,
    HypothesisViolationError,
    IndexOutOfRangeError,
    InvalidContextError,
    MilnorError,
    UnknownIdentifierError,
    UnknownIdentityError,
)

# Errors caused by what was typed rather than by what was computed.
USAGE_ERRORS = (
    ArityError,
    ElementSyntaxError,
    ExpressionSyntaxError,
    HypothesisViolationError,
    IndexOutOfRangeError,
    InvalidContextError,
    UnknownIdentifierError,
    UnknownIdentityError,
)

USAGE_EXIT = 2
FAILURE_EXIT = 1


def int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


@dataclass(frozen=True)
class CliConfig:
    p: int
    n: int
    json: bool = False
    profile: str = "quick"
    seed: int = 0
    self_check: bool = False

    @property
    def ctx(self) -> Context:
        return Context(self.p, self.n)


class MilnorCommand(BaseCommand):
    """Shared flags and error translation for the lab's commands.

    Subclasses implement ``run(cfg, **options)``.
    """

    # Commands that sweep several primes read --p as a comma separated list.
    multiple_primes = False

    def add_arguments(self, parser: CommandParser) -> None:
        if self.multiple_primes:
            parser.add_argument("--p", dest="primes", type=int_list, default=None, help="comma separated odd primes")
        else:
            parser.add_argument("--p", type=int, default=None, help="odd prime (default MILNOR_DEFAULT_P)")
        parser.add_argument("--n", type=int, default=None, help="number of variables (default MILNOR_DEFAULT_N)")
        parser.add_argument("--json", action="store_true", help="print JSON instead of text")
        parser.add_argument("--seed", type=int, default=None, help="seed for randomized cases")
        parser.add_argument(
            "--self-check",
            action="store_true",
            default=None,
            help="cross-check Dickson and Mui invariants against their defining quotients",
        )

    def config(self, options: dict[str, Any]) -> CliConfig:
        p = options.get("p")
        profile = options.get("profile") or conf.MILNOR_VERIFY_PROFILE
        if profile not in verify_profiles:
            raise CommandError(
                f"invalid-operation: unknown profile {profile!r}", returncode=USAGE_EXIT
            )
        return CliConfig(
            p=conf.MILNOR_DEFAULT_P if p is None else p,
            n=options.get("n") or conf.MILNOR_DEFAULT_N,
            json=bool(options.get("json")),
            profile=profile,
            seed=conf.MILNOR_SEED if options.get("seed") is None else options["seed"],
            self_check=conf.MILNOR_SELF_CHECK if options.get("self_check") is None else options["self_check"],
        )

    def handle(self, *args: Any, **options: Any) -> None:
        try:
            cfg = self.config(options)
            self.run(cfg, *args, **options)
        except MilnorError as exc:
            returncode = USAGE_EXIT if isinstance(exc, USAGE_ERRORS) else FAILURE_EXIT
            raise CommandError(str(exc), returncode=returncode) from exc

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        raise NotImplementedError("subclasses of MilnorCommand must provide a run() method")

    def write_json(self, data: Any) -> None:
        self.stdout.write(JSONRenderer().render(data).decode())

    def write_element(self, cfg: CliConfig, a: Element, label: str = "") -> None:
        from milnor.serializers import EvaluationSerializer

        if cfg.json:
            self.write_json(EvaluationSerializer(a).data)
            return
        d = degree(a)
        shown = "zero" if d is None else d
        self.stdout.write(f"{label} = {a}" if label else str(a))
        self.stdout.write(f"degree: {shown}, terms: {len(a)}")
