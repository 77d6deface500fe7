"""
Pretty-print a named invariant.
Usage: python manage.py invariant "Md(2,2;0)" --p 3 --n 2
"""

from __future__ import annotations

from typing import Any

from django.core.management.base import CommandParser

from milnor.exceptions import UnknownIdentifierError
from milnor.expr import Bracket, Invariant, evaluate, parse_expr, unparse
from milnor.management.base import CliConfig, MilnorCommand


class Command(MilnorCommand):
    help = "Print a named invariant such as L(2), Q(3,1), V(2), M(2;0,1), Md(2,2;0) or B(1;[1];2)"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("name")
        super().add_arguments(parser)

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        tree = parse_expr(options["name"])
        if not isinstance(tree, (Invariant, Bracket)):
            raise UnknownIdentifierError(f"{options['name']!r} does not name an invariant")
        value = evaluate(tree, cfg.ctx, self_check=cfg.self_check)
        self.write_element(cfg, value, label=unparse(tree))
