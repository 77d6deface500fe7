"""
List the members of I(u, v) or J(u, v); for J also each member's block
decomposition with b and c.
Usage: python manage.py index_set --kind J --p 3 --u 0 --v 7
"""

from __future__ import annotations

from typing import Any

from django.core.management.base import CommandParser

from milnor.management.base import CliConfig, MilnorCommand
from milnor.padic import b_func, count_decompositions, index_set_I, index_set_J, j_decompose
from milnor.serializers import IndexSetSerializer


class Command(MilnorCommand):
    help = "List the members of the index set I(u, v) or J(u, v)"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--kind", choices=["I", "J"], required=True)
        parser.add_argument("--u", type=int, required=True)
        parser.add_argument("--v", type=int, required=True)
        super().add_arguments(parser)

    def run(self, cfg: CliConfig, *args: Any, **options: Any) -> None:
        p, u, v, kind = cfg.ctx.p, options["u"], options["v"], options["kind"]
        members = sorted((index_set_I if kind == "I" else index_set_J)(p, u, v))
        data: dict[str, Any] = {"kind": kind, "p": p, "u": u, "v": v, "members": members}
        decompositions = []
        if kind == "J":
            for a in members:
                dec = j_decompose(p, u, v, a)
                decompositions.append(
                    {
                        "a": a,
                        "blocks": list(dec.blocks),
                        "parts": list(dec.parts),
                        "b": b_func(p, u, v, a),
                        "c": sum(dec.parts),
                        "ways": count_decompositions(p, u, v, a),
                    }
                )
            data["decompositions"] = decompositions

        if cfg.json:
            self.write_json(IndexSetSerializer(data).data)
            return
        self.stdout.write(f"{kind}({u}, {v}) at p={p}: {len(members)} members")
        self.stdout.write(", ".join(map(str, members)))
        for row in decompositions:
            self.stdout.write(
                f"  {row['a']}: blocks {row['blocks']} parts {row['parts']} "
                f"b={row['b']} c={row['c']} ways={row['ways']}"
            )
