from __future__ import annotations

from typing import Any

from django.core.checks import CheckMessage, Error
from sympy import isprime

from milnor.conf import conf
from milnor.defaults import verify_profiles


def check_settings(**kwargs: Any) -> list[CheckMessage]:
    errors: list[CheckMessage] = []

    p = conf.MILNOR_DEFAULT_P
    if not is_integer(p) or p < 3 or not isprime(p):
        errors.append(
            Error(
                f"MILNOR_DEFAULT_P should be an odd prime, got {p!r}.",
                id="milnor.E001",
                hint=(
                    "Only odd primes are supported; p = 2 has a different "
                    + "Steenrod algebra and is excluded."
                ),
            )
        )

    if not is_integer(conf.MILNOR_DEFAULT_N) or conf.MILNOR_DEFAULT_N < 1:
        errors.append(
            Error("MILNOR_DEFAULT_N should be a positive integer.", id="milnor.E002")
        )

    if conf.MILNOR_VERIFY_PROFILE not in verify_profiles:
        errors.append(
            Error(
                (
                    "MILNOR_VERIFY_PROFILE should be one of "
                    + ", ".join(verify_profiles)
                    + "."
                ),
                id="milnor.E003",
            )
        )

    if not is_integer(conf.MILNOR_SWEEP_WORKERS) or conf.MILNOR_SWEEP_WORKERS < 1:
        errors.append(
            Error(
                "MILNOR_SWEEP_WORKERS should be an integer greater than or equal to one.",
                id="milnor.E004",
            )
        )

    if not isinstance(conf.MILNOR_SELF_CHECK, bool):
        errors.append(Error("MILNOR_SELF_CHECK should be a bool.", id="milnor.E005"))

    if not is_integer(conf.MILNOR_SEED):
        errors.append(Error("MILNOR_SEED should be an integer.", id="milnor.E006"))

    return errors


def is_integer(thing: Any) -> bool:
    return isinstance(thing, int) and not isinstance(thing, bool)
