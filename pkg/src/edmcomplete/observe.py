"""Observation models deciding which pairwise distances count as known.

Four models mirror how partial distance data arises in practice: a plain
distance cutoff (short-range measurements only), the cutoff augmented by
all intra-residue pairs, the smallest fixed percentage of all pairwise
distances, and bonded pairs inferred from Van der Waals radius overlap.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .edm import PartialEDM, PointCloud, edm_from_points
from .errors import InvalidInput, MissingRadius

DEFAULT_CUTOFF = 6.0


class Mode(str, enum.Enum):
    CUTOFF = "cutoff"
    CUTOFF_PLUS_RESIDUE = "cutoff+residue"
    TOP_PERCENT = "top-percent"
    VDW_OVERLAP = "vdw"


@dataclass(frozen=True, eq=False)
class ObservationModel:
    """A mode plus exactly the parameters that mode requires.

    cutoff is a distance in angstroms (strict less-than); percent selects
    the smallest ceil(percent/100 * pair count) distances; radii maps
    element symbols to Van der Waals radii in angstroms (overlap is the
    closed condition, distance <= r_i + r_j).
    """

    mode: Mode
    cutoff: float | None = None
    percent: float | None = None
    radii: Mapping | None = None

    def __post_init__(self):
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        if mode in (Mode.CUTOFF, Mode.CUTOFF_PLUS_RESIDUE):
            if self.cutoff is None or not self.cutoff > 0.0:
                raise InvalidInput("ObservationModel: cutoff modes need a positive cutoff")
            if self.percent is not None or self.radii is not None:
                raise InvalidInput("ObservationModel: cutoff modes take only a cutoff")
        elif mode is Mode.TOP_PERCENT:
            if self.percent is None or not 0.0 < self.percent <= 100.0:
                raise InvalidInput("ObservationModel: percent must lie in (0, 100]")
            if self.cutoff is not None or self.radii is not None:
                raise InvalidInput("ObservationModel: top-percent mode takes only a percent")
        else:
            if not self.radii:
                raise InvalidInput("ObservationModel: vdw mode needs a radius table")
            radii = {str(k): float(v) for k, v in dict(self.radii).items()}
            if any(not v > 0.0 for v in radii.values()):
                raise InvalidInput("ObservationModel: radii must be positive")
            object.__setattr__(self, "radii", radii)
            if self.cutoff is not None or self.percent is not None:
                raise InvalidInput("ObservationModel: vdw mode takes only radii")

    @classmethod
    def with_cutoff(cls, cutoff: float = DEFAULT_CUTOFF) -> "ObservationModel":
        return cls(Mode.CUTOFF, cutoff=cutoff)

    @classmethod
    def with_cutoff_and_residues(cls, cutoff: float = DEFAULT_CUTOFF) -> "ObservationModel":
        return cls(Mode.CUTOFF_PLUS_RESIDUE, cutoff=cutoff)

    @classmethod
    def with_top_percent(cls, percent: float) -> "ObservationModel":
        return cls(Mode.TOP_PERCENT, percent=percent)

    @classmethod
    def with_vdw(cls, radii: Mapping) -> "ObservationModel":
        return cls(Mode.VDW_OVERLAP, radii=radii)


def build_partial_edm(pc: PointCloud, model: ObservationModel) -> PartialEDM:
    """Apply an observation model to a cloud, yielding the known squared distances.

    Thresholds are compared on squared distances (squaring is monotone on
    nonnegative reals, so the stated distance conditions are preserved
    exactly). Diagonal pairs are always known.
    """
    d = edm_from_points(pc)
    m = pc.order
    mask = np.eye(m, dtype=bool)
    if model.mode in (Mode.CUTOFF, Mode.CUTOFF_PLUS_RESIDUE):
        mask |= d < model.cutoff**2
        if model.mode is Mode.CUTOFF_PLUS_RESIDUE:
            res = np.asarray(pc.residues)
            mask |= res[:, None] == res[None, :]
    elif model.mode is Mode.TOP_PERCENT:
        pairs = sorted(
            (float(d[i, j]), i, j) for i in range(m - 1) for j in range(i + 1, m)
        )
        npairs = m * (m - 1) // 2
        # Multiply before dividing so integral percents give the exact count.
        count = min(npairs, math.ceil(model.percent * npairs / 100.0))
        for _, i, j in pairs[:count]:
            mask[i, j] = True
            mask[j, i] = True
    else:
        try:
            radii = np.array([model.radii[e] for e in pc.elements], dtype=np.float64)
        except KeyError as exc:
            raise MissingRadius(exc.args[0]) from None
        reach = radii[:, None] + radii[None, :]
        mask |= d <= reach * reach
    values = np.where(mask, d, 0.0)
    return PartialEDM(mask=mask, values=values)
