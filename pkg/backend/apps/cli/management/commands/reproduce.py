"""Regenerate the threshold table and the data behind the figures."""

from apps.cli import targets
from apps.cli.base import MubCorrCommand
from apps.cli.options import add_optimizer_arguments, add_output_arguments, parse_grid
from apps.detect.bounds import load_registry

DEFAULT_GRIDS = {
    "fig1": "0:0.45:0.05",
    "fig2": "0:0.3:0.02",
    "fig4": "0:0.2:0.005",
}


class Command(MubCorrCommand):
    help = "Write table1, fig1, fig2, fig4 or fig5 data as CSV (or JSON)."

    def add_arguments(self, parser):
        parser.add_argument("target", choices=("table1", "fig1", "fig2", "fig4", "fig5"))
        parser.add_argument("--grid", help="x or p grid start:stop:step.")
        parser.add_argument("--bounds-file", dest="bounds_file", help="YAML registry (table1).")
        parser.add_argument(
            "--optimize", action="store_true", help="Add optimized C_N to fig1/fig2."
        )
        parser.add_argument("--dims", type=int, nargs="+", help="Dimensions for fig4.")
        parser.add_argument("--dmin", type=int, default=3)
        parser.add_argument("--dmax", type=int, default=1000)
        parser.add_argument("--points", type=int, default=40)
        add_optimizer_arguments(parser)
        add_output_arguments(parser, default="csv")

    def run(self, **options):
        target = options["target"]
        rows, columns = getattr(self, f"build_{target}")(options)
        self.emit({"target": target, "rows": rows}, rows, columns, options)

    def grid(self, options):
        return parse_grid(options["grid"] or DEFAULT_GRIDS[options["target"]])

    def build_table1(self, options):
        registry = load_registry(options["bounds_file"]) if options["bounds_file"] else None
        return targets.table1_rows(registry), targets.TABLE1_COLUMNS

    def build_fig1(self, options):
        rows = targets.fig1_rows(self.grid(options), **self.optimizer_options(options))
        return rows, targets.FIG1_COLUMNS

    def build_fig2(self, options):
        rows = targets.fig2_rows(self.grid(options), **self.optimizer_options(options))
        return rows, targets.FIG2_COLUMNS

    def build_fig4(self, options):
        dims = options["dims"] or targets.FIG4_DIMS
        return targets.fig4_rows(self.grid(options), dims), targets.FIG4_COLUMNS

    def build_fig5(self, options):
        rows = targets.fig5_rows(
            options["dmin"], options["dmax"], options["points"], workers=options["workers"]
        )
        return rows, targets.FIG5_COLUMNS

    @staticmethod
    def optimizer_options(options):
        return {
            "optimize": options["optimize"],
            "restarts": options["restarts"],
            "seed": options["seed"],
            "max_iters": options["max_iters"],
            "workers": options["workers"],
        }
