"""Independent brute-force references the fast implementations are checked against.

Everything here is deliberately written the slow, obvious way in plain
Python: per-cell scalar decoding, flood fills over coordinate sets,
supersampled ray marching, remove-and-recount articulation search, and an
exhaustive split enumerator. None of it shares code with the package
beyond reading its data types.
"""

from __future__ import annotations

import math
from collections import deque

from ufg.model import GRID_SIZE, Cell, CellKind, MapLayout, PropKind, PropPlacement

# ---------------------------------------------------------------------------
# scalar per-cell decoding


def reference_raw_decode(genes, street_threshold=0.25, building_threshold=0.55):
    """Per-cell (content, height, prefab, prop_count) from one genome, scalar math."""
    out = []
    for i in range(GRID_SIZE * GRID_SIZE):
        c, h, p, d = (float(genes[4 * i + k]) for k in range(4))
        if c < street_threshold:
            content = "S"
        elif c < building_threshold:
            content = "B"
        else:
            content = "F"
        height = min(1 + math.floor(h * 6), 6)
        prefab = min(math.floor(p * 12), 11)
        props = min(math.floor(d * 4), 3) if content == "F" else 0
        out.append((content, height, prefab, props))
    return out


# ---------------------------------------------------------------------------
# grids, components, reachability


def street_cells(layout: MapLayout) -> set:
    return {
        (r, c)
        for r, row in enumerate(layout.grid)
        for c, cell in enumerate(row)
        if cell.kind is CellKind.STREET
    }


def walkable_cells(layout: MapLayout) -> set:
    return {
        (r, c)
        for r, row in enumerate(layout.grid)
        for c, cell in enumerate(row)
        if cell.kind is not CellKind.BUILDING
    }


def blocking_cells(layout: MapLayout) -> set:
    out = set()
    for r, row in enumerate(layout.grid):
        for c, cell in enumerate(row):
            if cell.kind is CellKind.BUILDING or (cell.kind is CellKind.FREE and len(cell.props) >= 2):
                out.add((r, c))
    return out


def components(cells: set) -> list[set]:
    """4-connected components of a coordinate set, flood fill."""
    remaining = set(cells)
    out = []
    while remaining:
        start = remaining.pop()
        comp = {start}
        queue = deque([start])
        while queue:
            r, c = queue.popleft()
            for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if nb in remaining:
                    remaining.remove(nb)
                    comp.add(nb)
                    queue.append(nb)
        out.append(comp)
    return out


def reachable(cells: set, a, b) -> bool:
    if a not in cells or b not in cells:
        return False
    seen = {a}
    queue = deque([a])
    while queue:
        r, c = queue.popleft()
        if (r, c) == b:
            return True
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return False


def articulation_points(walkable: set) -> set:
    """Remove each cell in turn and recount components."""
    base = len(components(walkable))
    out = set()
    for cell in walkable:
        if len(components(walkable - {cell})) > base:
            out.add(cell)
    return out


# ---------------------------------------------------------------------------
# reference repair: sequential largest-to-nearest merging


def _row_first_between(a, b):
    (r1, c1), (r2, c2) = a, b
    path = []
    cstep = 1 if c2 >= c1 else -1
    for c in range(c1 + cstep, c2 + cstep, cstep):
        path.append((r1, c))
    rstep = 1 if r2 >= r1 else -1
    for r in range(r1 + rstep, r2 + rstep, rstep):
        path.append((r, c2))
    return [cell for cell in path if cell != a and cell != b]


def reference_repair(streets: set) -> tuple[set, list]:
    """(final street set, sorted added cells) under the connect-largest rule."""
    streets = set(streets)
    if not streets:
        mid = GRID_SIZE // 2
        added = {(mid, c) for c in range(GRID_SIZE)} | {(r, mid) for r in range(GRID_SIZE)}
        return added, sorted(added)
    log = []
    while True:
        comps = [sorted(c) for c in components(streets)]
        if len(comps) <= 1:
            break
        largest = max(comps, key=lambda comp: (len(comp), (-comp[0][0], -comp[0][1])))
        best = None
        for a in largest:
            for comp in comps:
                if comp is largest:
                    continue
                for b in comp:
                    key = (abs(a[0] - b[0]) + abs(a[1] - b[1]), a, b)
                    if best is None or key < best:
                        best = key
        _, a, b = best
        for cell in _row_first_between(a, b):
            streets.add(cell)
            log.append(cell)
    return streets, sorted(log)


# ---------------------------------------------------------------------------
# supersampled ray marching


def ray_march(blocking: set, origin, angle, range_cells=8.0, step=0.01):
    """First blocking cell along the ray, by dense point sampling.

    Points are sampled every `step` cells from the origin cell center; the
    origin cell never blocks and leaving the grid ends the ray.
    """
    r0, c0 = origin
    pr0, pc0 = r0 + 0.5, c0 + 0.5
    dr, dc = math.sin(angle), math.cos(angle)
    n = int(round(range_cells / step))
    for k in range(1, n + 1):
        t = k * step
        cell = (math.floor(pr0 + t * dr), math.floor(pc0 + t * dc))
        if cell == origin:
            continue
        if not (0 <= cell[0] < GRID_SIZE and 0 <= cell[1] < GRID_SIZE):
            return None
        if cell in blocking:
            return cell
    return None


def cover_by_marching(blocking: set, cell, n_rays=16, range_cells=8.0) -> float:
    hits = sum(
        ray_march(blocking, cell, 2.0 * math.pi * k / n_rays, range_cells) is not None
        for k in range(n_rays)
    )
    return hits / n_rays


# ---------------------------------------------------------------------------
# exhaustive decision tree split search


def entropy(pos, n):
    if n == 0 or pos == 0 or pos == n:
        return 0.0
    p = pos / n
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def all_splits(rows):
    """Every candidate (feature, threshold, gain_ratio) for rows of (vector, positive)."""
    n = len(rows)
    pos = sum(1 for _, y in rows if y)
    parent = entropy(pos, n)
    n_features = len(rows[0][0])
    out = []
    for f in range(n_features):
        values = sorted({vec[f] for vec, _ in rows})
        for lo, hi in zip(values, values[1:]):
            t = (lo + hi) / 2.0
            left = [(vec, y) for vec, y in rows if vec[f] <= t]
            right = [(vec, y) for vec, y in rows if vec[f] > t]
            pos_l = sum(1 for _, y in left if y)
            pos_r = pos - pos_l
            gain = (
                parent
                - len(left) / n * entropy(pos_l, len(left))
                - len(right) / n * entropy(pos_r, len(right))
            )
            out.append((f, t, gain / entropy(len(left), n)))
    return out


def best_split(rows):
    """(feature, threshold, ratio) maximizing gain ratio; ties to lowest feature, threshold."""
    candidates = all_splits(rows)
    if not candidates:
        return None
    return min(candidates, key=lambda s: (-s[2], s[0], s[1]))


# ---------------------------------------------------------------------------
# hand-built layouts


def grid_from_ascii(art: str, spawns=None, props: dict | None = None) -> MapLayout:
    """Layout from one char per cell: # building, = street, . free, * free+2 props."""
    lines = [line for line in art.strip().splitlines()]
    assert len(lines) == GRID_SIZE and all(len(line) == GRID_SIZE for line in lines)
    props = props or {}
    rows = []
    for r, line in enumerate(lines):
        row = []
        for c, ch in enumerate(line):
            if ch == "#":
                row.append(Cell(CellKind.BUILDING, 1, 0))
            elif ch == "=":
                row.append(Cell(CellKind.STREET, 1, 0))
            else:
                cell_props = props.get((r, c), ())
                if ch == "*" and not cell_props:
                    cell_props = (
                        PropPlacement(PropKind.CONTAINER, 0.25, 0.25),
                        PropPlacement(PropKind.DEBRIS, 0.75, 0.75),
                    )
                row.append(Cell(CellKind.FREE, 1, 0, tuple(cell_props)))
        rows.append(tuple(row))
    return MapLayout(grid=tuple(rows), spawns=spawns)


def open_field(fill: str = ".") -> str:
    return "\n".join(fill * GRID_SIZE for _ in range(GRID_SIZE))
