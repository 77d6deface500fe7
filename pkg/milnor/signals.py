from __future__ import annotations

from django.dispatch import Signal

# Sent with ``case`` for every evaluated identity case, in plan order.
identity_checked = Signal()

# Sent with ``report`` once a sweep has run every plan.
sweep_finished = Signal()
