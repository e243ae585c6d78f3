"""White-noise detection scan of a catalog state."""

from apps.cli.base import MubCorrCommand
from apps.cli.options import (
    add_optimizer_arguments,
    add_output_arguments,
    add_state_arguments,
    parse_grid,
    state_spec,
)
from apps.detect.bounds import load_registry
from apps.detect.scan import CSV_COLUMNS, first_undetected, noise_scan


class Command(MubCorrCommand):
    help = "Scan white-noise levels and flag entanglement and genuine tripartite entanglement."

    def add_arguments(self, parser):
        add_state_arguments(parser, allow_file=False)
        parser.add_argument("--N", type=int, default=2)
        parser.add_argument("--noise", default="0:0.2:0.01", help="Grid start:stop:step.")
        parser.add_argument("--setting", choices=("pauli", "optimize"), default="pauli")
        parser.add_argument("--analytic", action="store_true", help="Use the closed-form path.")
        parser.add_argument(
            "--measure", choices=("c", "j"), default="c", help="Score C_N (c) or J_N (j)."
        )
        parser.add_argument("--kappa", type=float, help="Use d+1 MUMs of efficiency kappa.")
        parser.add_argument("--bounds-file", dest="bounds_file", help="YAML registry of bounds.")
        add_optimizer_arguments(parser)
        add_output_arguments(parser, default="csv")

    def run(self, **options):
        spec = state_spec(options)
        setting = "analytic" if options["analytic"] else options["setting"]
        registry = load_registry(options["bounds_file"]) if options["bounds_file"] else None
        rows = noise_scan(
            spec,
            parse_grid(options["noise"]),
            options["N"],
            setting=setting,
            kappa=options["kappa"],
            restarts=options["restarts"],
            seed=options["seed"],
            max_iters=options["max_iters"],
            workers=options["workers"],
            registry=registry,
            measure=options["measure"],
        )
        self.emit({"rows": rows}, rows, CSV_COLUMNS, options)

        flag = "tripartite" if rows[0]["bisep_threshold"] is not None else "entangled"
        undetected = first_undetected(rows, flag)
        self.note(f"first undetected p ({flag}): {'none' if undetected is None else undetected}")
