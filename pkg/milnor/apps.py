from __future__ import annotations

from django.apps import AppConfig
from django.core.checks import Tags, register

from milnor.checks import check_settings


class MilnorConfig(AppConfig):
    name = "milnor"
    verbose_name = "Milnor lab"

    def ready(self) -> None:
        register(Tags.compatibility)(check_settings)

        from milnor import receivers  # noqa: F401
