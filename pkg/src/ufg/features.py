"""Numeric summary of a layout, the input space for preference learning."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evaluation import N_RAYS, RAY_RANGE_CELLS, _cover_from_mask, blocking_mask, walkable_mask
from .model import GRID_SIZE, MAX_TOTAL_PROPS, CellKind, MapLayout

# fixed feature order; decision tree nodes refer to these positions
FEATURE_NAMES = (
    "free_ratio",
    "street_ratio",
    "building_ratio",
    "mean_building_height",
    "prop_count_norm",
    "mean_cover",
)

COVER_SAMPLE_STRIDE = 4


@dataclass(frozen=True)
class FeatureVector:
    free_ratio: float
    street_ratio: float
    building_ratio: float
    mean_building_height: float
    prop_count_norm: float
    mean_cover: float

    def __post_init__(self):
        for name in FEATURE_NAMES:
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"feature {name} must be finite")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in FEATURE_NAMES)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FEATURE_NAMES}

    @classmethod
    def from_dict(cls, doc: dict) -> "FeatureVector":
        return cls(**{name: doc[name] for name in FEATURE_NAMES})


def feature_distance(a: FeatureVector, b: FeatureVector) -> float:
    return float(np.linalg.norm(a.as_array() - b.as_array()))


def extract_features(
    layout: MapLayout, n_rays: int = N_RAYS, range_cells: float = RAY_RANGE_CELLS
) -> FeatureVector:
    counts = {CellKind.FREE: 0, CellKind.STREET: 0, CellKind.BUILDING: 0}
    height_sum = 0
    prop_total = 0
    for row in layout.grid:
        for cell in row:
            counts[cell.kind] += 1
            if cell.kind is CellKind.BUILDING:
                height_sum += cell.height_stories
            prop_total += len(cell.props)
    total = GRID_SIZE * GRID_SIZE
    n_buildings = counts[CellKind.BUILDING]

    # deterministic subsample: every 4th walkable cell in row-major order
    walkable = walkable_mask(layout)
    blocking = blocking_mask(layout)
    sampled = [
        (r, c) for i, (r, c) in enumerate(
            (r, c) for r in range(GRID_SIZE) for c in range(GRID_SIZE) if walkable[r, c]
        ) if i % COVER_SAMPLE_STRIDE == 0
    ]
    if sampled:
        mean_cover = sum(_cover_from_mask(blocking, cell, n_rays, range_cells) for cell in sampled) / len(sampled)
    else:
        mean_cover = 0.0

    return FeatureVector(
        free_ratio=counts[CellKind.FREE] / total,
        street_ratio=counts[CellKind.STREET] / total,
        building_ratio=n_buildings / total,
        mean_building_height=height_sum / n_buildings if n_buildings else 0.0,
        prop_count_norm=prop_total / MAX_TOTAL_PROPS,
        mean_cover=mean_cover,
    )
