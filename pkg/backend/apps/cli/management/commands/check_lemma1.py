"""Maximally-entangled decomposition test for bipartite cuts."""

from apps.cli.base import MubCorrCommand
from apps.cli.options import add_output_arguments, add_state_arguments, load_state
from apps.common.exceptions import CertificationError
from apps.maxcheck.decompose import lemma1_check, lemma2_necessary_check, one_vs_rest
from apps.maxcheck.serializers import CertificationFailureSerializer, MaxEntDecompositionSerializer


class Command(MubCorrCommand):
    help = (
        "Decompose a bipartite state into weighted isometries applied to φ+, "
        "or test every one-vs-rest cut of a multipartite state."
    )

    def add_arguments(self, parser):
        add_state_arguments(parser)
        cut = parser.add_mutually_exclusive_group()
        cut.add_argument("--split", type=int, nargs=2, help="Bipartite dimensions d' d.")
        cut.add_argument("--site", type=int, help="Test the cut of this site against the rest.")
        cut.add_argument("--all-cuts", action="store_true", dest="all_cuts")
        parser.add_argument("--p", type=float, help="Mix in white noise with weight p.")
        add_output_arguments(parser, formats=("json",))

    def run(self, **options):
        state = load_state(options, options.get("p"))
        if options["all_cuts"]:
            flags = lemma2_necessary_check(state)
            self.emit_json({"cuts": flags, "may_be_maximal": all(flags)}, options)
            return
        if options["site"] is not None:
            state = one_vs_rest(state, options["site"])
        try:
            decomposition = lemma1_check(state, split=options["split"])
        except CertificationError as exc:
            self.emit_json(CertificationFailureSerializer(exc).data, options)
            raise
        self.emit_json(MaxEntDecompositionSerializer(decomposition).data, options)
