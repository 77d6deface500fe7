from __future__ import annotations

# Importing the statements module fills the registry.
from milnor.harness import statements  # noqa: F401
from milnor.harness.registry import (
    Axis,
    IdentityCase,
    Sides,
    SweepPlan,
    check,
    evaluate,
    registry,
)
from milnor.harness.statements import FULL, PROFILES, QUICK
from milnor.harness.sweep import SweepReport, plans_for, sweep, verify_all

__all__ = [
    "Axis",
    "FULL",
    "IdentityCase",
    "PROFILES",
    "QUICK",
    "Sides",
    "SweepPlan",
    "SweepReport",
    "check",
    "evaluate",
    "plans_for",
    "registry",
    "sweep",
    "verify_all",
]
