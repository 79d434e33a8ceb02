"""Map genome encoding and the decoder that turns genomes into city layouts.

A level is a 20x20 grid of 25-unit square cells centered on a 512x512-unit
canvas; the 12 leftover units form an inert margin. Four genes in [0, 1]
drive each cell (content class, building height, facade prefab, prop
density), 1600 genes in all. Decoding is a pure function of the genome:
even prop placements come from a counter RNG keyed by cell index and the
quantized density gene, so equal genomes always yield byte-identical
layouts. After the raw per-cell pass a repair step forces the street
network into a single 4-connected component, then the two team spawns are
placed near the west and east edge midpoints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from . import rng

# ---------------------------------------------------------------------------
# encoding constants

GRID_SIZE = 20
CELL_COUNT = GRID_SIZE * GRID_SIZE
GENES_PER_CELL = 4
GENOME_LENGTH = CELL_COUNT * GENES_PER_CELL
CANVAS_UNITS = 512
CELL_UNITS = 25
MARGIN_UNITS = (CANVAS_UNITS - GRID_SIZE * CELL_UNITS) / 2

STREET_THRESHOLD = 0.25
BUILDING_THRESHOLD = 0.55
MAX_STORIES = 6
PREFAB_COUNT = 12
MAX_PROPS_PER_CELL = 3
MAX_TOTAL_PROPS = CELL_COUNT * MAX_PROPS_PER_CELL

LEVEL_FORMAT = "ufg-level/1"

# internal content codes used for array work
_STREET, _BUILDING, _FREE = 0, 1, 2

_FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=np.int8)


class EncodingError(ValueError):
    """Raised when a genome or serialized level violates the encoding."""


class CellKind(str, Enum):
    STREET = "S"
    BUILDING = "B"
    FREE = "F"


class PropKind(str, Enum):
    CONTAINER = "container"
    PLANT = "plant"
    FURNITURE = "furniture"
    DEBRIS = "debris"


_PROP_KINDS = (PropKind.CONTAINER, PropKind.PLANT, PropKind.FURNITURE, PropKind.DEBRIS)
_CELL_KINDS = (CellKind.STREET, CellKind.BUILDING, CellKind.FREE)


@dataclass(slots=True)
class PropPlacement:
    """One decorative obstacle inside a cell; (u, v) in [0, 1) cell space."""

    kind: PropKind
    u: float
    v: float


@dataclass(slots=True)
class Cell:
    kind: CellKind
    height_stories: int  # 1..6, meaningful only for buildings
    prefab_index: int  # 0..11, meaningful only for buildings
    props: tuple[PropPlacement, ...] = ()


@dataclass(frozen=True, eq=False)
class MapGenome:
    """1600 reals in [0, 1], four per cell in row-major cell order."""

    genes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.genes, dtype=np.float64)
        if arr.shape != (GENOME_LENGTH,):
            raise EncodingError(f"genome must hold {GENOME_LENGTH} genes, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise EncodingError("genome genes must be finite")
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise EncodingError("genome genes must lie in [0, 1]")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "genes", arr)

    @classmethod
    def from_values(cls, values) -> "MapGenome":
        return cls(np.asarray(list(values), dtype=np.float64))

    @classmethod
    def clamped(cls, values) -> "MapGenome":
        """Total constructor: clamps arbitrary finite reals into [0, 1]."""
        arr = np.asarray(list(values), dtype=np.float64)
        if arr.shape != (GENOME_LENGTH,):
            raise EncodingError(f"genome must hold {GENOME_LENGTH} genes, got {arr.shape}")
        return cls(np.clip(np.nan_to_num(arr, nan=0.0, posinf=1.0, neginf=0.0), 0.0, 1.0))


@dataclass
class MapLayout:
    grid: tuple[tuple[Cell, ...], ...]
    spawns: tuple[tuple[int, int], tuple[int, int]] | None
    repair_log: tuple[tuple[int, int], ...] = ()
    width_units: int = CANVAS_UNITS
    cell_size_units: int = CELL_UNITS


# ---------------------------------------------------------------------------
# raw per-cell decode


def _raw_fields(genome: MapGenome, street_threshold: float, building_threshold: float):
    """Vector decode of the four per-cell gene fields, before repair."""
    g = genome.genes.reshape(CELL_COUNT, GENES_PER_CELL)
    content = np.where(
        g[:, 0] < street_threshold, _STREET, np.where(g[:, 0] < building_threshold, _BUILDING, _FREE)
    ).astype(np.int8)
    heights = np.minimum(1 + np.floor(g[:, 1] * MAX_STORIES).astype(np.int64), MAX_STORIES)
    prefabs = np.minimum(np.floor(g[:, 2] * PREFAB_COUNT).astype(np.int64), PREFAB_COUNT - 1)
    prop_counts = np.minimum(np.floor(g[:, 3] * 4).astype(np.int64), MAX_PROPS_PER_CELL)
    shape = (GRID_SIZE, GRID_SIZE)
    return content.reshape(shape), heights.reshape(shape), prefabs.reshape(shape), prop_counts.reshape(shape)


def _prop_draws(prop_genes: np.ndarray) -> np.ndarray:
    """(CELL_COUNT, 9) uniform draws keyed by (cell index, quantized gene).

    Quantizing the gene keeps the sub-stream key integral; three draws per
    prop slot cover kind, u and v.
    """
    quant = np.floor(prop_genes * (1 << 20)).astype(np.uint64)
    cells = np.arange(CELL_COUNT, dtype=np.uint64)
    return rng.unit_matrix(rng.fold_arrays(cells, quant), MAX_PROPS_PER_CELL * 3)


# ---------------------------------------------------------------------------
# street repair


def _l_path(a: tuple[int, int], b: tuple[int, int]) -> list[tuple[int, int]]:
    """Cells strictly between a and b on the row-first L-path (corner at a's row)."""
    (r1, c1), (r2, c2) = a, b
    path = []
    cstep = 1 if c2 >= c1 else -1
    for c in range(c1 + cstep, c2 + cstep, cstep):
        path.append((r1, c))
    rstep = 1 if r2 >= r1 else -1
    for r in range(r1 + rstep, r2 + rstep, rstep):
        path.append((r, c2))
    return [cell for cell in path if cell != a and cell != b]


# pair keys pack (manhattan distance, a, b) into one int: flat index order on a
# 20x20 grid equals row-major (row, col) tuple order, so an integer argmin
# reproduces the lexicographic tie-break exactly
_PAIR_BASE = CELL_COUNT * CELL_COUNT


def _repair_content(content: np.ndarray) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Force a non-empty, single-component street network; log converted cells.

    No streets at all: carve a center-row plus center-column cross. Multiple
    components: repeatedly connect the largest to the nearest other one along
    a row-first L-path between their nearest cell pair (ties: smallest
    (distance, a, b) triple). The largest component only ever grows, so it is
    chosen once; per-cell best-pair keys are updated incrementally as carved
    and absorbed cells join it.
    """
    content = content.copy()
    street = content == _STREET
    if not street.any():
        mid = GRID_SIZE // 2
        log = [(mid, c) for c in range(GRID_SIZE)] + [(r, mid) for r in range(GRID_SIZE) if r != mid]
        for r, c in log:
            content[r, c] = _STREET
        return content, sorted(log)

    labels, n_comps = ndimage.label(street, structure=_FOUR_CONN)
    if n_comps <= 1:
        return content, []

    # street cells in raster order; largest component, ties to the one whose
    # first cell comes earliest in raster order
    flat = np.nonzero(street.ravel())[0].astype(np.int32)
    ids = labels.ravel()[flat]
    sizes = np.bincount(ids)
    uniq, first_pos = np.unique(ids, return_index=True)
    candidates = uniq[sizes[uniq] == sizes.max()]
    largest_id = int(candidates[np.argmin(first_pos[np.searchsorted(uniq, candidates)])])

    in_largest = ids == largest_id
    l_flat = flat[in_largest]
    o_flat = flat[~in_largest]
    o_ids = ids[~in_largest]
    o_r, o_c = o_flat // GRID_SIZE, o_flat % GRID_SIZE

    def pair_keys(group: np.ndarray) -> np.ndarray:
        """Per remaining cell, the best (dist, a, b) key against the group."""
        g_r, g_c = group // GRID_SIZE, group % GRID_SIZE
        dist = np.abs(g_r[:, None] - o_r[None, :]) + np.abs(g_c[:, None] - o_c[None, :])
        keys = dist * _PAIR_BASE + group[:, None] * CELL_COUNT + o_flat[None, :]
        return keys.min(axis=0)

    best = pair_keys(l_flat)
    labels_flat = labels.ravel().tolist()
    merged = {largest_id}
    log: list[tuple[int, int]] = []
    while True:
        j = int(np.argmin(best))
        key = int(best[j])
        a = divmod((key % _PAIR_BASE) // CELL_COUNT, GRID_SIZE)
        b = divmod(key % CELL_COUNT, GRID_SIZE)
        carved = _l_path(a, b)
        absorbed_ids = {int(o_ids[j])}
        carved_flat = []
        for r, c in carved:
            content[r, c] = _STREET
            log.append((r, c))
            f = r * GRID_SIZE + c
            carved_flat.append(f)
            labels_flat[f] = largest_id
            # carving turns a non-street cell into street: any component it
            # now touches merges in without further carving
            for nf in (f - GRID_SIZE, f + GRID_SIZE, f - 1 if c else -1, f + 1 if c < GRID_SIZE - 1 else -1):
                if 0 <= nf < CELL_COUNT:
                    nid = labels_flat[nf]
                    if nid and nid not in merged:
                        absorbed_ids.add(nid)
        merged.update(absorbed_ids)
        gone = (
            (o_ids == absorbed_ids.pop()) if len(absorbed_ids) == 1
            else np.isin(o_ids, list(absorbed_ids))
        )
        joined = np.concatenate([np.asarray(carved_flat, dtype=np.int32), o_flat[gone]])
        keep = ~gone
        o_flat, o_ids, o_r, o_c, best = o_flat[keep], o_ids[keep], o_r[keep], o_c[keep], best[keep]
        if not len(o_flat):
            break
        best = np.minimum(best, pair_keys(joined))
    return content, sorted(log)


def _spawn_points(content: np.ndarray) -> tuple[tuple[int, int], tuple[int, int]]:
    """Spawns near the west/east edge midpoints, on the street-connected area.

    Restricting candidates to the walkable component that contains the street
    network keeps the two spawns mutually reachable even when enclosed
    walkable pockets exist. Ties go to the lowest row, then lowest column.
    """
    walkable = content != _BUILDING
    labels, _ = ndimage.label(walkable, structure=_FOUR_CONN)
    streets = np.argwhere(content == _STREET)
    if len(streets):
        main = labels[streets[0][0], streets[0][1]]
    else:  # defensive: repair guarantees streets exist
        main = np.argmax(np.bincount(labels[labels > 0]))
    members = np.argwhere(labels == main)
    mid = GRID_SIZE // 2
    spawns = []
    for ar, ac in ((mid, 0), (mid, GRID_SIZE - 1)):
        d2 = (members[:, 0] - ar) ** 2 + (members[:, 1] - ac) ** 2
        best = members[int(np.argmin(d2))]  # argmin keeps the first, i.e. row-major, minimum
        spawns.append((int(best[0]), int(best[1])))
    return spawns[0], spawns[1]


def _build_layout(content, heights, prefabs, prop_counts, genome, repair_log) -> MapLayout:
    prop_counts = np.where(content == _FREE, prop_counts, 0)
    counts = prop_counts.ravel().tolist()
    kinds = us = vs = None
    if any(counts):
        draws = _prop_draws(genome.genes.reshape(CELL_COUNT, GENES_PER_CELL)[:, 3])
        kinds = np.minimum(3, (draws[:, 0::3] * 4).astype(np.int64)).tolist()
        us = draws[:, 1::3].tolist()
        vs = draws[:, 2::3].tolist()
    kind_codes = content.ravel().tolist()
    height_list = heights.ravel().tolist()
    prefab_list = prefabs.ravel().tolist()
    rows = []
    for r in range(GRID_SIZE):
        row = []
        for i in range(r * GRID_SIZE, (r + 1) * GRID_SIZE):
            count = counts[i]
            if count:
                ki, ui, vi = kinds[i], us[i], vs[i]
                props = tuple(PropPlacement(_PROP_KINDS[ki[j]], ui[j], vi[j]) for j in range(count))
            else:
                props = ()
            row.append(Cell(_CELL_KINDS[kind_codes[i]], height_list[i], prefab_list[i], props))
        rows.append(tuple(row))
    spawns = _spawn_points(content)
    return MapLayout(grid=tuple(rows), spawns=spawns, repair_log=tuple(repair_log))


def decode(
    genome: MapGenome,
    *,
    street_threshold: float = STREET_THRESHOLD,
    building_threshold: float = BUILDING_THRESHOLD,
) -> MapLayout:
    """Genome -> repaired, spawn-placed layout. Pure and total on valid genomes."""
    if not 0.0 < street_threshold < building_threshold < 1.0:
        raise EncodingError("content thresholds must satisfy 0 < street < building < 1")
    content, heights, prefabs, prop_counts = _raw_fields(genome, street_threshold, building_threshold)
    content, repair_log = _repair_content(content)
    return _build_layout(content, heights, prefabs, prop_counts, genome, repair_log)


def repair(layout: MapLayout) -> MapLayout:
    """Public repair pass over an existing layout; already-valid layouts pass through."""
    content = content_codes(layout)
    repaired, log = _repair_content(content)
    if not log:
        if layout.spawns is None:
            return MapLayout(layout.grid, _spawn_points(repaired), layout.repair_log)
        return layout
    rows = []
    for r in range(GRID_SIZE):
        row = []
        for c in range(GRID_SIZE):
            cell = layout.grid[r][c]
            if repaired[r, c] == _STREET and cell.kind is not CellKind.STREET:
                cell = Cell(CellKind.STREET, cell.height_stories, cell.prefab_index, ())
            row.append(cell)
        rows.append(tuple(row))
    spawns = _spawn_points(repaired)
    return MapLayout(tuple(rows), spawns, tuple(sorted(set(layout.repair_log) | set(log))))


def content_codes(layout: MapLayout) -> np.ndarray:
    codes = np.empty((GRID_SIZE, GRID_SIZE), dtype=np.int8)
    lut = {CellKind.STREET: _STREET, CellKind.BUILDING: _BUILDING, CellKind.FREE: _FREE}
    for r, row in enumerate(layout.grid):
        for c, cell in enumerate(row):
            codes[r, c] = lut[cell.kind]
    return codes


# ---------------------------------------------------------------------------
# serialization


def layout_to_json(layout: MapLayout, meta: dict | None = None) -> dict:
    grid = [
        [
            {
                "t": cell.kind.value,
                "h": cell.height_stories,
                "p": cell.prefab_index,
                "props": [{"k": prop.kind.value, "u": prop.u, "v": prop.v} for prop in cell.props],
            }
            for cell in row
        ]
        for row in layout.grid
    ]
    return {
        "version": LEVEL_FORMAT,
        "canvas": layout.width_units,
        "cell_size": layout.cell_size_units,
        "grid": grid,
        "spawns": [list(s) for s in layout.spawns] if layout.spawns else [],
        "repair": [list(cell) for cell in layout.repair_log],
        "meta": meta or {},
    }


def dump_level(layout: MapLayout, meta: dict | None = None) -> bytes:
    """Canonical byte serialization: sorted keys, no whitespace."""
    return json.dumps(layout_to_json(layout, meta), sort_keys=True, separators=(",", ":")).encode()


def validate_level_json(doc: dict) -> None:
    """Schema check for exported levels; raises EncodingError on violation."""
    if doc.get("version") != LEVEL_FORMAT:
        raise EncodingError(f"unknown level format: {doc.get('version')!r}")
    if doc.get("canvas") != CANVAS_UNITS or doc.get("cell_size") != CELL_UNITS:
        raise EncodingError("level canvas/cell size mismatch")
    grid = doc.get("grid")
    if not isinstance(grid, list) or len(grid) != GRID_SIZE or any(len(row) != GRID_SIZE for row in grid):
        raise EncodingError(f"grid must be {GRID_SIZE}x{GRID_SIZE}")
    for row in grid:
        for cell in row:
            if cell["t"] not in ("S", "B", "F"):
                raise EncodingError(f"bad cell type {cell['t']!r}")
            if not 1 <= cell["h"] <= MAX_STORIES:
                raise EncodingError(f"height {cell['h']} out of range")
            if not 0 <= cell["p"] < PREFAB_COUNT:
                raise EncodingError(f"prefab {cell['p']} out of range")
            if len(cell["props"]) > MAX_PROPS_PER_CELL:
                raise EncodingError("too many props in one cell")
            if cell["t"] != "F" and cell["props"]:
                raise EncodingError("props are only allowed on free cells")
            for prop in cell["props"]:
                if prop["k"] not in {k.value for k in _PROP_KINDS}:
                    raise EncodingError(f"bad prop kind {prop['k']!r}")
                if not (0.0 <= prop["u"] < 1.0 and 0.0 <= prop["v"] < 1.0):
                    raise EncodingError("prop sub-position out of range")
    spawns = doc.get("spawns")
    if not isinstance(spawns, list) or len(spawns) != 2:
        raise EncodingError("level must carry exactly two spawns")
    for r, c in spawns:
        if not (0 <= r < GRID_SIZE and 0 <= c < GRID_SIZE):
            raise EncodingError("spawn outside grid")
        if grid[r][c]["t"] == "B":
            raise EncodingError("spawn on a building cell")


def layout_from_json(doc: dict) -> MapLayout:
    validate_level_json(doc)
    rows = []
    for row in doc["grid"]:
        cells = []
        for cell in row:
            props = tuple(PropPlacement(PropKind(p["k"]), p["u"], p["v"]) for p in cell["props"])
            cells.append(Cell(CellKind(cell["t"]), cell["h"], cell["p"], props))
        rows.append(tuple(cells))
    spawns = tuple(tuple(s) for s in doc["spawns"])
    repair_log = tuple(tuple(cell) for cell in doc.get("repair", []))
    return MapLayout(tuple(rows), spawns, repair_log)


def ascii_map(layout: MapLayout) -> str:
    """Debug view: # building, = street, . free, * free with props, A/B spawns."""
    chars = []
    for row in layout.grid:
        line = []
        for cell in row:
            if cell.kind is CellKind.BUILDING:
                ch = "#"
            elif cell.kind is CellKind.STREET:
                ch = "="
            else:
                ch = "*" if cell.props else "."
            line.append(ch)
        chars.append(line)
    if layout.spawns:
        (ar, ac), (br, bc) = layout.spawns
        chars[ar][ac] = "A"
        chars[br][bc] = "B"
    return "\n".join("".join(line) for line in chars)
