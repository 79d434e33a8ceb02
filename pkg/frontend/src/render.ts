/** Deterministic top-down drawing of level JSON: SVG string for snapshots and
 * static markup, canvas strokes for the live grid. Both share one geometry. */

import type { CellJson, FeatureSummary, LevelJson, PlayabilityJson } from "./types.js";

export const GRID_SIZE = 20;
export const MAX_STORIES = 6;

const STREET_FILL = "#b8b8b8";
const FREE_FILL = "#e8e3d2";
const MARGIN_FILL = "#d7d3c6";
const SPAWN_FILL: Record<string, string> = { A: "#c0392b", B: "#2a5db0" };
const PROP_FILL: Record<string, string> = {
  container: "#8a6d3b",
  plant: "#3e7d46",
  furniture: "#5b4a8a",
  debris: "#6f6f6f",
};

export class MalformedLevelError extends Error {
  constructor(detail: string) {
    super(detail);
    this.name = "MalformedLevelError";
  }
}

/** Taller buildings render darker, one shade per story count. */
export function buildingFill(stories: number): string {
  const t = (stories - 1) / (MAX_STORIES - 1);
  const v = Math.round(0x9e - t * (0x9e - 0x2e));
  const hex = v.toString(16).padStart(2, "0");
  return `#${hex}${hex}${hex}`;
}

export function cellFill(cell: CellJson): string {
  if (cell.t === "B") return buildingFill(cell.h);
  if (cell.t === "S") return STREET_FILL;
  return FREE_FILL;
}

/** Shape check before drawing; the UI turns the throw into an error banner. */
export function checkLevel(level: LevelJson): void {
  if (!Array.isArray(level.grid) || level.grid.length !== GRID_SIZE) {
    throw new MalformedLevelError(`grid must be ${GRID_SIZE} rows`);
  }
  for (const row of level.grid) {
    if (!Array.isArray(row) || row.length !== GRID_SIZE) {
      throw new MalformedLevelError(`grid rows must hold ${GRID_SIZE} cells`);
    }
    for (const cell of row) {
      if (cell.t !== "S" && cell.t !== "B" && cell.t !== "F") {
        throw new MalformedLevelError(`unknown cell kind ${String(cell.t)}`);
      }
    }
  }
  if (!Array.isArray(level.spawns) || level.spawns.length !== 2) {
    throw new MalformedLevelError("level must carry two spawns");
  }
}

interface Geometry {
  margin: number;
  cell: number;
  canvas: number;
}

function geometry(level: LevelJson): Geometry {
  const cell = level.cell_size;
  return { cell, canvas: level.canvas, margin: (level.canvas - GRID_SIZE * cell) / 2 };
}

export function renderLevelSvg(level: LevelJson, scale = 1): string {
  checkLevel(level);
  const geo = geometry(level);
  const size = geo.canvas * scale;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" viewBox="0 0 ${geo.canvas} ${geo.canvas}">`,
    `<rect width="${geo.canvas}" height="${geo.canvas}" fill="${MARGIN_FILL}"/>`,
  ];
  level.grid.forEach((row, r) => {
    row.forEach((cell, c) => {
      const x = geo.margin + c * geo.cell;
      const y = geo.margin + r * geo.cell;
      parts.push(
        `<rect x="${x}" y="${y}" width="${geo.cell}" height="${geo.cell}" fill="${cellFill(cell)}"/>`,
      );
      for (const prop of cell.props) {
        const px = (x + prop.u * geo.cell).toFixed(2);
        const py = (y + prop.v * geo.cell).toFixed(2);
        parts.push(
          `<circle cx="${px}" cy="${py}" r="2.4" fill="${PROP_FILL[prop.k] ?? "#6f6f6f"}"/>`,
        );
      }
    });
  });
  level.spawns.forEach(([r, c], team) => {
    const name = team === 0 ? "A" : "B";
    const cx = geo.margin + (c + 0.5) * geo.cell;
    const cy = geo.margin + (r + 0.5) * geo.cell;
    parts.push(`<circle cx="${cx}" cy="${cy}" r="9" fill="${SPAWN_FILL[name]}"/>`);
    parts.push(
      `<text x="${cx}" y="${cy}" fill="#ffffff" font-size="12" font-family="sans-serif" ` +
        `text-anchor="middle" dominant-baseline="central">${name}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n");
}

/** Same picture on a 2D canvas, for the interactive cards. */
export function drawLevel(ctx: CanvasRenderingContext2D, level: LevelJson, scale = 1): void {
  checkLevel(level);
  const geo = geometry(level);
  ctx.save();
  ctx.scale(scale, scale);
  ctx.fillStyle = MARGIN_FILL;
  ctx.fillRect(0, 0, geo.canvas, geo.canvas);
  level.grid.forEach((row, r) => {
    row.forEach((cell, c) => {
      const x = geo.margin + c * geo.cell;
      const y = geo.margin + r * geo.cell;
      ctx.fillStyle = cellFill(cell);
      ctx.fillRect(x, y, geo.cell, geo.cell);
      for (const prop of cell.props) {
        ctx.fillStyle = PROP_FILL[prop.k] ?? "#6f6f6f";
        ctx.beginPath();
        ctx.arc(x + prop.u * geo.cell, y + prop.v * geo.cell, 2.4, 0, Math.PI * 2);
        ctx.fill();
      }
    });
  });
  level.spawns.forEach(([r, c], team) => {
    const name = team === 0 ? "A" : "B";
    const cx = geo.margin + (c + 0.5) * geo.cell;
    const cy = geo.margin + (r + 0.5) * geo.cell;
    ctx.fillStyle = SPAWN_FILL[name] ?? "#000000";
    ctx.beginPath();
    ctx.arc(cx, cy, 9, 0, Math.PI * 2);
    ctx.fill();
    ctx.fillStyle = "#ffffff";
    ctx.font = "12px sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText(name, cx, cy);
  });
  ctx.restore();
}

export function featureSummary(features: FeatureSummary): string {
  const pct = (x: number) => `${Math.round(x * 100)}%`;
  return (
    `streets ${pct(features.street_ratio)} · buildings ${pct(features.building_ratio)} ` +
    `(~${features.mean_building_height.toFixed(1)} stories) · free ${pct(features.free_ratio)} · ` +
    `props ${pct(features.prop_count_norm)} · cover ${features.mean_cover.toFixed(2)}`
  );
}

export function playabilityBadge(report: PlayabilityJson): { label: string; ok: boolean } {
  if (report.passed) {
    return { label: `playable · ${Math.round(report.walkable_fraction * 100)}% walkable`, ok: true };
  }
  const reason = report.spawns_reachable ? "too little walkable space" : "spawns disconnected";
  return { label: `unplayable · ${reason}`, ok: false };
}
