"""``compute`` with the optimized setting."""

from .compute import Command as ComputeCommand


class Command(ComputeCommand):
    help = "Lower-bound the maximal C_N (or J_N) by optimizing local rotations of the MUBs."

    forced_setting = "optimize"
