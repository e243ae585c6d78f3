"""Certify maximal C_N of a pure state through its Pauli symmetries."""

from apps.cli.base import MubCorrCommand
from apps.cli.options import add_output_arguments, add_state_arguments, load_state
from apps.common.exceptions import CertificationError
from apps.maxcheck.serializers import CertificationFailureSerializer, SymmetryCertificateSerializer
from apps.maxcheck.symmetry import certify_theorem2


class Command(MubCorrCommand):
    help = "Search for N Pauli symmetries that certify C_N = log2 d for a pure state."

    def add_arguments(self, parser):
        add_state_arguments(parser)
        parser.add_argument("--N", type=int, default=2)
        add_output_arguments(parser, formats=("json",))

    def run(self, **options):
        state = load_state(options)
        try:
            certificate = certify_theorem2(state, options["N"])
        except CertificationError as exc:
            self.emit_json(CertificationFailureSerializer(exc).data, options)
            raise
        self.emit_json(SymmetryCertificateSerializer(certificate).data, options)
