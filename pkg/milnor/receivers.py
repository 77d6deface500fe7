from __future__ import annotations

import logging
from typing import Any

from django.dispatch import receiver

from milnor.signals import identity_checked

logger = logging.getLogger(__name__)


@receiver(identity_checked, dispatch_uid="milnor.log_failed_case")
def log_failed_case(sender: Any, case: Any, **kwargs: Any) -> None:
    if not case.passed:
        logger.warning("%s failed for %s: %s", case.identity, case.params, case.message)
