"""Evaluate C_N (or J_N) of one state."""

from apps.cli.base import MubCorrCommand
from apps.cli.options import (
    add_optimizer_arguments,
    add_output_arguments,
    add_state_arguments,
    load_state,
)
from apps.common.exceptions import InvalidParameterError
from apps.corr.measures import c_n_given, j_n_value
from apps.corr.optimize import c_n_optimize, j_n_optimize
from apps.corr.serializers import CorrelationReportSerializer
from apps.corr.setting import mum_setting, pauli_setting
from apps.detect.bounds import j_n_bisep_bound
from apps.detect.scan import judge
from apps.detect.serializers import DetectionVerdictSerializer
from apps.mub.construct import standard_mub_set

CSV_COLUMNS = ("measure", "N", "value", "normalized", "maximal_value", "setting", "seed")


class Command(MubCorrCommand):
    help = "Compute C_N of a state with the Pauli setting, a MUM setting or an optimized setting."

    forced_setting = None

    def add_arguments(self, parser):
        add_state_arguments(parser)
        parser.add_argument("--N", type=int, default=2, help="Number of measurements.")
        parser.add_argument("--p", type=float, help="Mix in white noise with weight p.")
        if self.forced_setting is None:
            parser.add_argument("--setting", choices=("pauli", "optimize"), default="pauli")
        parser.add_argument("--kappa", type=float, help="Use d+1 MUMs of efficiency kappa.")
        parser.add_argument(
            "--measure",
            choices=("c", "j"),
            default="c",
            help="C_N, or J_N for d qudits of dimension d.",
        )
        add_optimizer_arguments(parser)
        add_output_arguments(parser)

    def run(self, **options):
        setting = self.forced_setting or options["setting"]
        if setting == "pauli" and options["kappa"] is None:
            self.note("note: the fixed Pauli setting gives a lower bound on the maximal C_N.")
        state = load_state(options, options.get("p"))
        if options["measure"] == "j":
            payload, row = self.j_value(state, setting, options)
        else:
            payload, row = self.c_value(state, setting, options)
        self.emit(payload, [row], CSV_COLUMNS, options)

    def c_value(self, state, setting, options):
        N, kappa = options["N"], options["kappa"]
        if kappa is not None:
            if setting != "pauli":
                raise InvalidParameterError("MUM mode uses the fixed MUM setting.", code="setting")
            d = state.layout.dims[0]
            if N != d + 1:
                raise InvalidParameterError(
                    f"MUM mode needs the complete set N = {d + 1}, got {N}.", code="N_range"
                )
            report = c_n_given(state, mum_setting(state.layout, kappa))
        elif setting == "optimize":
            report = c_n_optimize(
                state,
                N,
                restarts=options["restarts"],
                seed=options["seed"],
                max_iters=options["max_iters"],
                workers=options["workers"],
            )
        else:
            report = c_n_given(state, pauli_setting(state.layout, N))

        payload = CorrelationReportSerializer(report).data
        if state.layout.is_uniform() and N >= 2:
            payload["verdict"] = DetectionVerdictSerializer(
                judge(report.c_value, state.layout, N, kappa)
            ).data
        label = setting if kappa is None else f"mum:{kappa}"
        row = {
            "measure": f"C_{N}",
            "N": N,
            "value": report.c_value,
            "normalized": report.normalized(),
            "maximal_value": report.maximal_value,
            "setting": label,
            "seed": self.seed(report.optimizer, setting),
        }
        return payload, row

    def j_value(self, state, setting, options):
        N = options["N"]
        d = state.layout.dims[0]
        if setting == "optimize":
            result = j_n_optimize(
                state,
                N,
                restarts=options["restarts"],
                seed=options["seed"],
                max_iters=options["max_iters"],
                workers=options["workers"],
            )
            value, optimizer = result["value"], result["optimizer"]
        else:
            value, optimizer = j_n_value(state, standard_mub_set(d, N)), {}
        bound = j_n_bisep_bound(N, d)
        payload = {
            "measure": f"J_{N}",
            "value": value,
            "bisep_bound": bound,
            "detected": value > bound,
            "optimizer": optimizer,
        }
        row = {
            "measure": f"J_{N}",
            "N": N,
            "value": value,
            "normalized": value / N,
            "maximal_value": float(N),
            "setting": setting,
            "seed": self.seed(optimizer, setting),
        }
        return payload, row

    @staticmethod
    def seed(optimizer, setting):
        return optimizer.get("seed") if setting == "optimize" else None
