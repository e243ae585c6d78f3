"""Shared command-line arguments: state selection, grids and output."""

import json
import math
from pathlib import Path

from rest_framework import serializers

from apps.common.exceptions import InvalidParameterError
from apps.qstate.serializers import StateSerializer
from apps.states.catalog import FAMILIES, catalog_state
from apps.states.families import white_noise_mix
from apps.states.serializers import StateSpecSerializer

# CLI flag -> StateSpec parameter, for everything a catalog family can take.
FAMILY_FLAGS = ("d", "n", "a", "b", "c", "x", "z", "g", "k")


def add_state_arguments(parser, allow_file=True):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--state", choices=sorted(FAMILIES), help="Catalog family.")
    if allow_file:
        source.add_argument("--state-file", help="JSON state document.")
    parser.add_argument("--d", type=int, help="Local dimension.")
    parser.add_argument("--n", type=int, help="Number of sites.")
    parser.add_argument("--a", help="Ψ_3,3 coefficient a (complex literal).")
    parser.add_argument("--b", help="Ψ_3,3 coefficient b (complex literal).")
    parser.add_argument("--c", help="Ψ_3,3 coefficient c (complex literal).")
    parser.add_argument("--x", type=float, nargs=3, help="GHZ-class MES parameters x1 x2 x3.")
    parser.add_argument("--z", help="GHZ-class MES parameter z (complex literal).")
    parser.add_argument("--g", type=float, nargs=3, help="Qutrit MES parameters g1 g2 g3.")
    parser.add_argument("--k", type=int, nargs=2, help="Qutrit MES Pauli index k1 k2.")


def add_output_arguments(parser, formats=("csv", "json"), default="json"):
    parser.add_argument("--out", help="Write to this file instead of stdout.")
    parser.add_argument("--format", choices=formats, default=default)


def add_optimizer_arguments(parser):
    parser.add_argument("--restarts", type=int, help="Optimizer restarts.")
    parser.add_argument("--seed", type=int, help="Optimizer seed.")
    parser.add_argument("--max-iters", type=int, dest="max_iters", help="Iterations per restart.")
    parser.add_argument("--workers", type=int, help="Worker pool size.")


def state_spec(options, p=None):
    """StateSpec from ``--state`` and the family flags present on the command line."""
    payload = {"family": options["state"], "p": p}
    payload.update(
        {flag: options[flag] for flag in FAMILY_FLAGS if options.get(flag) is not None}
    )
    serializer = StateSpecSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def load_state_file(path):
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidParameterError(f"Cannot read {path}: {exc}", code="state_file") from exc
    except json.JSONDecodeError as exc:
        raise serializers.ValidationError({"state_file": f"Not valid JSON: {exc}"})
    serializer = StateSerializer(data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def load_state(options, p=None):
    if options.get("state_file"):
        state = load_state_file(options["state_file"])
        if p is not None:
            state = white_noise_mix(state, p)
        return state
    return catalog_state(state_spec(options, p))


def parse_grid(text):
    """``start:stop:step`` with both ends included, or one value.

    Points sit on the step lattice from ``start``; ``stop`` is appended when it
    falls between lattice points, so no interval is longer than ``step``.
    """
    parts = str(text).split(":")
    try:
        values = [float(part) for part in parts]
    except ValueError as exc:
        raise InvalidParameterError(f"Bad grid '{text}'.", code="grid") from exc
    if len(values) == 1:
        return values
    if len(values) != 3:
        raise InvalidParameterError(f"Grid must be start:stop:step, got '{text}'.", code="grid")
    start, stop, step = values
    if step <= 0 or stop < start:
        raise InvalidParameterError(f"Empty or backwards grid '{text}'.", code="grid")
    steps = math.floor((stop - start) / step + 1e-9)
    grid = [round(start + index * step, 12) for index in range(steps + 1)]
    if stop - grid[-1] > 1e-9 * step:
        grid.append(stop)
    else:
        grid[-1] = stop
    return grid
