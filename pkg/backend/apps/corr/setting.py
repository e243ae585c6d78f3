"""Per-site measurement settings: N MUBs (or N MUMs) on every site."""

from dataclasses import dataclass

from apps.common.exceptions import DimensionMismatchError, InvalidParameterError
from apps.mub.construct import build_mum_set, rotate_mub_set, standard_mub_set
from apps.mub.types import MubSet, MumSet


@dataclass(frozen=True, eq=False)
class MeasurementSetting:
    """``site_sets[l]`` holds the N measurements used on site l."""

    site_sets: tuple

    def __post_init__(self):
        site_sets = tuple(self.site_sets)
        if not site_sets:
            raise InvalidParameterError("A setting needs at least one site.")
        for site_set in site_sets:
            if not isinstance(site_set, (MubSet, MumSet)):
                raise InvalidParameterError("Each site needs a MubSet or a MumSet.")
        if len({s.N for s in site_sets}) != 1:
            raise InvalidParameterError("All sites must use the same number of measurements N.")
        object.__setattr__(self, "site_sets", site_sets)

    @property
    def N(self):
        return self.site_sets[0].N

    @property
    def n(self):
        return len(self.site_sets)

    @property
    def is_projective(self):
        return all(isinstance(s, MubSet) for s in self.site_sets)

    def check_layout(self, layout):
        dims = tuple(s.d for s in self.site_sets)
        if dims != layout.dims:
            raise DimensionMismatchError(
                f"Setting dimensions {dims} do not match layout {layout.dims}."
            )

    def measurements(self, k):
        """Site-wise k-th measurement: a Basis per site, or POVM element lists."""
        if self.is_projective:
            return [s.bases[k] for s in self.site_sets]
        return [_povm(s, k) for s in self.site_sets]

    def first(self, count):
        return MeasurementSetting(tuple(s.first(count) for s in self.site_sets))

    def rotated(self, unitaries):
        return MeasurementSetting(
            tuple(rotate_mub_set(s, u) for s, u in zip(self.site_sets, unitaries))
        )

    def describe(self):
        site = self.site_sets[0]
        if isinstance(site, MumSet):
            dims = [s.d for s in self.site_sets]
            return {"kind": "mum", "N": self.N, "kappa": site.kappa, "dims": dims}
        return {
            "kind": "mub",
            "N": self.N,
            "dims": [s.d for s in self.site_sets],
            "pauli_indices": [
                [list(k.as_tuple()) for k in s.pauli_indices] for s in self.site_sets
            ],
        }


def _povm(site_set, k):
    if isinstance(site_set, MubSet):
        return site_set.bases[k].projectors()
    return list(site_set.measurements[k])


def pauli_setting(layout, N):
    """The standard MUB set of each site's dimension."""
    return MeasurementSetting(tuple(standard_mub_set(d, N) for d in layout.dims))


def mum_setting(layout, kappa, operator_basis=None):
    """A complete MUM set of efficiency κ on every site."""
    return MeasurementSetting(
        tuple(build_mum_set(d, kappa, operator_basis) for d in layout.dims)
    )
