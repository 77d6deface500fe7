"""
Evaluate an expression in P_n.
Usage: python manage.py eval "StDelta(1, Q(2,1))" --p 3 --n 2
"""

from __future__ import annotations

from typing import Any

from django.core.management.base import CommandParser

from milnor.expr import evaluate, parse_expr
from milnor.management.base import CliConfig, MilnorCommand


class Command(MilnorCommand):
    help = "Evaluate an expression and print its canonical form, degree and term count"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("expression")
        super().add_arguments(parser)

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        tree = parse_expr(options["expression"])
        self.write_element(cfg, evaluate(tree, cfg.ctx, self_check=cfg.self_check))
