from __future__ import annotations

from django.conf import settings

from milnor.defaults import (
    default_n,
    default_p,
    default_profile,
    default_seed,
    default_workers,
)


class Settings:
    """
    Shadow Django's settings with the lab's defaults
    """

    @property
    def MILNOR_DEFAULT_P(self) -> int:
        return getattr(settings, "MILNOR_DEFAULT_P", default_p)

    @property
    def MILNOR_DEFAULT_N(self) -> int:
        return getattr(settings, "MILNOR_DEFAULT_N", default_n)

    @property
    def MILNOR_VERIFY_PROFILE(self) -> str:
        return getattr(settings, "MILNOR_VERIFY_PROFILE", default_profile)

    @property
    def MILNOR_SWEEP_WORKERS(self) -> int:
        return getattr(settings, "MILNOR_SWEEP_WORKERS", default_workers)

    @property
    def MILNOR_SELF_CHECK(self) -> bool:
        return getattr(settings, "MILNOR_SELF_CHECK", False)

    @property
    def MILNOR_SEED(self) -> int:
        return getattr(settings, "MILNOR_SEED", default_seed)


conf = Settings()
