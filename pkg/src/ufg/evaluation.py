"""Computational play-testers: cover analysis, choke points, playability gate.

Rays are cast on the cell grid with an Amanatides-Woo style traversal from
the origin cell center. Angles are radians measured from the +column (east)
axis toward the +row (south) axis. A cell blocks a ray when it holds a
building or is a free cell decorated with at least two props; streets and
sparse decoration never block. Props never block movement: the walkable
graph is simply every non-building cell, 4-connected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import ndimage

from .model import _FOUR_CONN, GRID_SIZE, CellKind, MapLayout

N_RAYS = 16
RAY_RANGE_CELLS = 8
EXPOSURE_THRESHOLD = 0.125
MIN_WALKABLE_FRACTION = 0.3
BLOCKING_PROP_COUNT = 2

# a ray passing within this of a cell corner is treated as crossing exactly
# through it and steps diagonally, skipping both touching cells
_TIE_EPS = 1e-9


def walkable_mask(layout: MapLayout) -> np.ndarray:
    mask = np.empty((GRID_SIZE, GRID_SIZE), dtype=bool)
    for r, row in enumerate(layout.grid):
        for c, cell in enumerate(row):
            mask[r, c] = cell.kind is not CellKind.BUILDING
    return mask


def blocking_mask(layout: MapLayout) -> np.ndarray:
    mask = np.empty((GRID_SIZE, GRID_SIZE), dtype=bool)
    for r, row in enumerate(layout.grid):
        for c, cell in enumerate(row):
            mask[r, c] = cell.kind is CellKind.BUILDING or (
                cell.kind is CellKind.FREE and len(cell.props) >= BLOCKING_PROP_COUNT
            )
    return mask


@lru_cache(maxsize=4096)
def _ray_offsets(angle: float, range_cells: float) -> tuple[tuple[int, int], ...]:
    """Ordered (dr, dc) cell offsets a ray from any cell center traverses.

    Origins always sit at cell centers, so the traversal pattern is origin
    independent. Exact corner crossings step both axes at once; the two
    cells merely touched at the corner are not traversed.
    """
    dx = math.cos(angle)  # +column
    dy = math.sin(angle)  # +row
    step_x = 1 if dx > 0 else -1
    step_y = 1 if dy > 0 else -1
    t_max_x = (0.5 / abs(dx)) if dx != 0 else math.inf
    t_max_y = (0.5 / abs(dy)) if dy != 0 else math.inf
    t_delta_x = (1.0 / abs(dx)) if dx != 0 else math.inf
    t_delta_y = (1.0 / abs(dy)) if dy != 0 else math.inf
    offsets = []
    col = 0
    row = 0
    while True:
        if abs(t_max_x - t_max_y) <= _TIE_EPS:
            t_entry = t_max_x
            col += step_x
            row += step_y
            t_max_x += t_delta_x
            t_max_y += t_delta_y
        elif t_max_x < t_max_y:
            t_entry = t_max_x
            col += step_x
            t_max_x += t_delta_x
        else:
            t_entry = t_max_y
            row += step_y
            t_max_y += t_delta_y
        if t_entry > range_cells:
            return tuple(offsets)
        offsets.append((row, col))


def cast_ray(
    layout: MapLayout,
    origin: tuple[int, int],
    angle: float,
    range_cells: float = RAY_RANGE_CELLS,
) -> tuple[int, int] | None:
    """First blocking cell the ray hits within range, or None. Origin never blocks."""
    r0, c0 = origin
    if not (0 <= r0 < GRID_SIZE and 0 <= c0 < GRID_SIZE):
        raise ValueError(f"ray origin {origin} outside grid")
    if layout.grid[r0][c0].kind is CellKind.BUILDING:
        raise ValueError(f"ray origin {origin} is not walkable")
    blocking = blocking_mask(layout)
    return _first_hit(blocking, origin, angle, range_cells)


def _first_hit(blocking: np.ndarray, origin: tuple[int, int], angle: float, range_cells: float):
    r0, c0 = origin
    for dr, dc in _ray_offsets(angle, range_cells):
        r, c = r0 + dr, c0 + dc
        if not (0 <= r < GRID_SIZE and 0 <= c < GRID_SIZE):
            return None  # left the grid; a straight ray cannot re-enter
        if blocking[r, c]:
            return (r, c)
    return None


def _cover_from_mask(
    blocking: np.ndarray, cell: tuple[int, int], n_rays: int, range_cells: float
) -> float:
    hits = 0
    for k in range(n_rays):
        if _first_hit(blocking, cell, 2.0 * math.pi * k / n_rays, range_cells) is not None:
            hits += 1
    return hits / n_rays


def cover_score(
    layout: MapLayout,
    cell: tuple[int, int],
    n_rays: int = N_RAYS,
    range_cells: float = RAY_RANGE_CELLS,
) -> float:
    """Fraction of evenly spaced rays from the cell that get blocked in range."""
    r, c = cell
    if layout.grid[r][c].kind is CellKind.BUILDING:
        raise ValueError(f"cover origin {cell} is not walkable")
    return _cover_from_mask(blocking_mask(layout), cell, n_rays, range_cells)


@dataclass(frozen=True)
class CoverMap:
    scores: dict[tuple[int, int], float]
    n_rays: int
    range_cells: float


def cover_map(
    layout: MapLayout, n_rays: int = N_RAYS, range_cells: float = RAY_RANGE_CELLS
) -> CoverMap:
    blocking = blocking_mask(layout)
    walkable = walkable_mask(layout)
    scores = {}
    for r in range(GRID_SIZE):
        for c in range(GRID_SIZE):
            if walkable[r, c]:
                scores[(r, c)] = _cover_from_mask(blocking, (r, c), n_rays, range_cells)
    return CoverMap(scores, n_rays, range_cells)


# ---------------------------------------------------------------------------
# walkability graph


def _neighbors(r: int, c: int):
    if r > 0:
        yield r - 1, c
    if r + 1 < GRID_SIZE:
        yield r + 1, c
    if c > 0:
        yield r, c - 1
    if c + 1 < GRID_SIZE:
        yield r, c + 1


def find_choke_points(layout: MapLayout) -> list[tuple[int, int]]:
    """Articulation points of the 4-connected walkable graph, row-major order.

    Iterative low-link DFS; removing any returned cell splits its walkable
    component.
    """
    walk = walkable_mask(layout)
    disc: dict[tuple[int, int], int] = {}
    low: dict[tuple[int, int], int] = {}
    points: set[tuple[int, int]] = set()
    timer = 0
    for sr in range(GRID_SIZE):
        for sc in range(GRID_SIZE):
            start = (sr, sc)
            if not walk[sr, sc] or start in disc:
                continue
            root_children = 0
            disc[start] = low[start] = timer
            timer += 1
            stack = [(start, None, iter(_neighbors(sr, sc)))]
            while stack:
                node, parent, it = stack[-1]
                advanced = False
                for nb in it:
                    if not walk[nb]:
                        continue
                    if nb not in disc:
                        if node == start:
                            root_children += 1
                        disc[nb] = low[nb] = timer
                        timer += 1
                        stack.append((nb, node, iter(_neighbors(*nb))))
                        advanced = True
                        break
                    if nb != parent:
                        low[node] = min(low[node], disc[nb])
                if advanced:
                    continue
                stack.pop()
                if stack:
                    pnode = stack[-1][0]
                    low[pnode] = min(low[pnode], low[node])
                    if pnode != start and low[node] >= disc[pnode]:
                        points.add(pnode)
            if root_children >= 2:
                points.add(start)
    return sorted(points)


def spawns_reachable(layout: MapLayout) -> bool:
    if layout.spawns is None:
        return False
    walk = walkable_mask(layout)
    a, b = layout.spawns
    if not walk[a] or not walk[b]:
        return False
    labels, _ = ndimage.label(walk, structure=_FOUR_CONN)
    return bool(labels[a] == labels[b])


@dataclass(frozen=True)
class PlayabilityReport:
    spawns_reachable: bool
    walkable_fraction: float
    exposed_cells: tuple[tuple[int, int], ...]
    choke_points: tuple[tuple[int, int], ...]
    passed: bool


def passes_gate(layout: MapLayout, min_walkable_fraction: float = MIN_WALKABLE_FRACTION) -> bool:
    """Cheap accept test used while breeding: reachable spawns, enough open ground."""
    walk = walkable_mask(layout)
    fraction = walk.sum() / walk.size
    return fraction >= min_walkable_fraction and spawns_reachable(layout)


def playability(
    layout: MapLayout,
    *,
    exposure_threshold: float = EXPOSURE_THRESHOLD,
    min_walkable_fraction: float = MIN_WALKABLE_FRACTION,
    n_rays: int = N_RAYS,
    range_cells: float = RAY_RANGE_CELLS,
) -> PlayabilityReport:
    walk = walkable_mask(layout)
    blocking = blocking_mask(layout)
    fraction = float(walk.sum() / walk.size)
    exposed = []
    for r in range(GRID_SIZE):
        for c in range(GRID_SIZE):
            if walk[r, c] and _cover_from_mask(blocking, (r, c), n_rays, range_cells) < exposure_threshold:
                exposed.append((r, c))
    reachable = spawns_reachable(layout)
    return PlayabilityReport(
        spawns_reachable=reachable,
        walkable_fraction=fraction,
        exposed_cells=tuple(exposed),
        choke_points=tuple(find_choke_points(layout)),
        passed=reachable and fraction >= min_walkable_fraction,
    )


def report_to_json(report: PlayabilityReport) -> dict:
    return {
        "spawns_reachable": report.spawns_reachable,
        "walkable_fraction": report.walkable_fraction,
        "exposed_cells": [list(cell) for cell in report.exposed_cells],
        "choke_points": [list(cell) for cell in report.choke_points],
        "passed": report.passed,
    }
