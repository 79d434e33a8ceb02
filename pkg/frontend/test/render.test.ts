import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { renderRound } from "../src/app.js";
import {
  MalformedLevelError,
  buildingFill,
  checkLevel,
  featureSummary,
  playabilityBadge,
  renderLevelSvg,
} from "../src/render.js";
import type { LevelJson, SessionState } from "../src/types.js";

const HERE = fileURLToPath(new URL(".", import.meta.url));

function fixture(name: string): LevelJson {
  return JSON.parse(readFileSync(join(HERE, "fixtures", name), "utf-8")) as LevelJson;
}

describe("level rendering", () => {
  it("renders the fixed layout to a stable SVG", () => {
    const svg = renderLevelSvg(fixture("level.json"));
    expect(svg).toMatchSnapshot();
    expect(renderLevelSvg(fixture("level.json"))).toBe(svg); // deterministic
  });

  it("draws one rect per cell plus the margin", () => {
    const svg = renderLevelSvg(fixture("level.json"));
    expect(svg.match(/<rect /g)).toHaveLength(1 + 400);
    expect(svg).toContain('viewBox="0 0 512 512"');
    expect(svg).toContain(">A</text>");
    expect(svg).toContain(">B</text>");
  });

  it("renders an all-street level as a uniform gray tile", () => {
    const svg = renderLevelSvg(fixture("street.json"));
    expect(svg.match(/fill="#b8b8b8"/g)).toHaveLength(400);
    expect(svg).not.toContain("#e8e3d2"); // no free cells
    expect(svg.match(/<circle /g)).toHaveLength(2); // spawn markers only
  });

  it("shades taller buildings darker", () => {
    expect(buildingFill(1)).toBe("#9e9e9e");
    expect(buildingFill(6)).toBe("#2e2e2e");
    const shades = [1, 2, 3, 4, 5, 6].map(buildingFill);
    expect([...shades].sort().reverse()).toEqual(shades);
  });

  it("rejects malformed levels", () => {
    const level = fixture("level.json");
    (level.grid as unknown[]).pop();
    expect(() => checkLevel(level)).toThrow(MalformedLevelError);
    expect(() => renderLevelSvg(level)).toThrow(/20 rows/);
  });

  it("summarizes features and playability for the card captions", () => {
    const summary = featureSummary({
      free_ratio: 0.5,
      street_ratio: 0.3,
      building_ratio: 0.2,
      mean_building_height: 3.25,
      prop_count_norm: 0.1,
      mean_cover: 0.42,
    });
    expect(summary).toContain("streets 30%");
    expect(summary).toContain("~3.3 stories");
    expect(summary).toContain("cover 0.42");

    expect(
      playabilityBadge({
        spawns_reachable: true,
        walkable_fraction: 0.8,
        exposed_cells: [],
        choke_points: [],
        passed: true,
      }),
    ).toEqual({ label: "playable · 80% walkable", ok: true });
    expect(
      playabilityBadge({
        spawns_reachable: false,
        walkable_fraction: 0.8,
        exposed_cells: [],
        choke_points: [],
        passed: false,
      }).label,
    ).toContain("spawns disconnected");
  });
});

describe("round view", () => {
  function stateWith(candidates: number): SessionState {
    const level = fixture("level.json");
    return {
      id: "s1",
      status: "active",
      turn: "human",
      generation: {
        index: 4,
        parent_ids: [0, 1],
        candidates: Array.from({ length: candidates }, (_, id) => ({
          id,
          layout: level,
          features: {
            free_ratio: 0.4,
            street_ratio: 0.3,
            building_ratio: 0.3,
            mean_building_height: 2,
            prop_count_norm: 0.2,
            mean_cover: 0.5,
          },
          playability: {
            spawns_reachable: true,
            walkable_fraction: 0.7,
            exposed_cells: [],
            choke_points: [],
            passed: true,
          },
          gate_warning: false,
        })),
      },
      history: [
        { generation: 0, selector: "human", ids: [0, 1] },
        { generation: 3, selector: "agent", ids: [2, 5] },
      ],
      params: {},
      policy: {},
      corpus_size: 18,
      tree: null,
    };
  }

  it("builds exactly nine cards with captions", () => {
    const view = renderRound(stateWith(9));
    expect(view.cards).toHaveLength(9);
    expect(view.generation).toBe(4);
    expect(view.cards[0]?.svg).toContain("<svg");
    expect(view.cards[0]?.badge.ok).toBe(true);
    expect(view.history).toHaveLength(2);
  });

  it("treats a wrong candidate count as malformed state", () => {
    expect(() => renderRound(stateWith(7))).toThrow(MalformedLevelError);
    expect(() => renderRound(stateWith(7))).toThrow(/exactly 9 candidates/);
  });
});
