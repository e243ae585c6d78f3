"""Noise tolerance p_max(d) of noisy three-party GHZ states."""

from apps.cli.base import MubCorrCommand
from apps.cli.options import add_output_arguments
from apps.common.concurrency import run_parallel
from apps.detect.noisy import p_max

CSV_COLUMNS = ("d", "p_max")


class Command(MubCorrCommand):
    help = "Largest white-noise weight p at which C_2 still flags GHZ_d,3 as genuinely tripartite."

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, nargs="+", required=True, help="Local dimensions.")
        parser.add_argument("--tol", type=float, default=1e-6)
        parser.add_argument("--workers", type=int)
        add_output_arguments(parser, default="csv")

    def run(self, **options):
        dims = options["d"]
        values = run_parallel(lambda d: p_max(d, options["tol"]), dims, options["workers"])
        rows = [{"d": d, "p_max": value} for d, value in zip(dims, values)]
        self.emit({"p_max": rows}, rows, CSV_COLUMNS, options)
