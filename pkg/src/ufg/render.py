"""Top-down SVG rendering of decoded levels, for debugging and the CLI."""

from __future__ import annotations

from .model import CANVAS_UNITS, CELL_UNITS, MARGIN_UNITS, MAX_STORIES, CellKind, MapLayout

_STREET_FILL = "#b8b8b8"
_FREE_FILL = "#e8e3d2"
_MARGIN_FILL = "#d7d3c6"
_PROP_FILL = {
    "container": "#8a6d3b",
    "plant": "#3e7d46",
    "furniture": "#5b4a8a",
    "debris": "#6f6f6f",
}
_SPAWN_FILL = {"A": "#c0392b", "B": "#2a5db0"}


def _building_fill(stories: int) -> str:
    # taller buildings render darker
    t = (stories - 1) / (MAX_STORIES - 1)
    lo, hi = 0x2E, 0x9E
    v = int(hi - t * (hi - lo))
    return f"#{v:02x}{v:02x}{v:02x}"


def layout_to_svg(layout: MapLayout, scale: float = 1.0) -> str:
    size = CANVAS_UNITS * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" height="{size:g}" '
        f'viewBox="0 0 {CANVAS_UNITS} {CANVAS_UNITS}">',
        f'<rect width="{CANVAS_UNITS}" height="{CANVAS_UNITS}" fill="{_MARGIN_FILL}"/>',
    ]
    for r, row in enumerate(layout.grid):
        for c, cell in enumerate(row):
            x = MARGIN_UNITS + c * CELL_UNITS
            y = MARGIN_UNITS + r * CELL_UNITS
            if cell.kind is CellKind.BUILDING:
                fill = _building_fill(cell.height_stories)
            elif cell.kind is CellKind.STREET:
                fill = _STREET_FILL
            else:
                fill = _FREE_FILL
            parts.append(
                f'<rect x="{x:g}" y="{y:g}" width="{CELL_UNITS}" height="{CELL_UNITS}" fill="{fill}"/>'
            )
            for prop in cell.props:
                px = x + prop.u * CELL_UNITS
                py = y + prop.v * CELL_UNITS
                parts.append(
                    f'<circle cx="{px:.2f}" cy="{py:.2f}" r="2.4" fill="{_PROP_FILL[prop.kind.value]}"/>'
                )
    if layout.spawns:
        for name, (r, c) in zip(("A", "B"), layout.spawns):
            cx = MARGIN_UNITS + (c + 0.5) * CELL_UNITS
            cy = MARGIN_UNITS + (r + 0.5) * CELL_UNITS
            parts.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="9" fill="{_SPAWN_FILL[name]}"/>')
            parts.append(
                f'<text x="{cx:g}" y="{cy:g}" fill="#ffffff" font-size="12" font-family="sans-serif" '
                f'text-anchor="middle" dominant-baseline="central">{name}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)
