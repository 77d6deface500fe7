"""
Sweep every registered identity over a profile.
Usage: python manage.py verify_all --profile quick --p 3,5 --workers 4
"""

from __future__ import annotations

from typing import Any

from django.core.management.base import CommandError, CommandParser

from milnor.conf import conf
from milnor.defaults import verify_profiles
from milnor.harness import IdentityCase, verify_all
from milnor.management.base import FAILURE_EXIT, CliConfig, MilnorCommand
from milnor.serializers import SweepReportSerializer
from milnor.signals import identity_checked

DEFAULT_PRIMES = {"quick": (3,), "full": (3, 5)}


class Command(MilnorCommand):
    help = "Check every registered identity over the quick or full parameter profile"
    multiple_primes = True

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--profile", choices=verify_profiles, default=None)
        parser.add_argument(
            "--id", dest="ids", action="append", default=[], help="restrict to this identity, repeatable"
        )
        parser.add_argument("--workers", type=int, default=None)
        super().add_arguments(parser)

    def progress(self, sender: Any, case: IdentityCase, **kwargs: Any) -> None:
        style = self.style.SUCCESS if case.passed else self.style.ERROR
        self.stdout.write(style(f"{case.status} {case.identity} {case.params}"))

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        primes = options["primes"] or DEFAULT_PRIMES[cfg.profile]
        workers = options["workers"] or conf.MILNOR_SWEEP_WORKERS
        if workers < 1:
            raise CommandError("--workers must be at least 1", returncode=2)

        verbose = options["verbosity"] >= 2
        if verbose:
            identity_checked.connect(self.progress, sender=IdentityCase)
        try:
            report = verify_all(
                cfg.profile,
                primes,
                ids=options["ids"] or None,
                workers=workers,
                self_check=cfg.self_check,
                seed=cfg.seed,
            )
        finally:
            if verbose:
                identity_checked.disconnect(self.progress, sender=IdentityCase)

        if cfg.json:
            self.write_json(SweepReportSerializer(report).data)
        else:
            primes_shown = ",".join(map(str, report.primes))
            self.stdout.write(f"profile {report.profile}, primes {primes_shown}")
            width = max((len(s.identity) for s in report.summaries), default=0)
            for s in report.summaries:
                status = self.style.SUCCESS("ok") if not s.failed else self.style.ERROR("FAIL")
                self.stdout.write(
                    f"{s.identity:<{width}}  {s.passed:>6}/{s.cases:<6} {s.elapsed:8.2f}s  {status}"
                )
                if s.first_failure is not None:
                    self.stdout.write(f"    first failure: {s.first_failure.params} {s.first_failure.message}")
            self.stdout.write(
                f"{report.passed} of {report.total} cases passed in {report.elapsed:.2f}s"
            )
        if not report.ok:
            raise CommandError(f"{report.failed} case(s) failed", returncode=FAILURE_EXIT)
