/** Wire types mirroring the session service JSON payloads. */

export type CellKindCode = "S" | "B" | "F";

export interface PropJson {
  k: string;
  u: number;
  v: number;
}

export interface CellJson {
  t: CellKindCode;
  h: number;
  p: number;
  props: PropJson[];
}

export interface LevelJson {
  version: string;
  canvas: number;
  cell_size: number;
  grid: CellJson[][];
  spawns: [number, number][];
  repair: [number, number][];
  meta: Record<string, unknown>;
}

export interface FeatureSummary {
  free_ratio: number;
  street_ratio: number;
  building_ratio: number;
  mean_building_height: number;
  prop_count_norm: number;
  mean_cover: number;
}

export interface PlayabilityJson {
  spawns_reachable: boolean;
  walkable_fraction: number;
  exposed_cells: [number, number][];
  choke_points: [number, number][];
  passed: boolean;
}

export interface CandidateJson {
  id: number;
  layout: LevelJson;
  features: FeatureSummary;
  playability: PlayabilityJson;
  gate_warning: boolean;
}

export interface GenerationJson {
  index: number;
  parent_ids: number[] | null;
  candidates: CandidateJson[];
}

export interface HistoryEntryJson {
  generation: number;
  selector: "human" | "agent";
  ids: number[];
}

export interface SessionState {
  id: string;
  status: "active" | "finished";
  turn: "human" | "finished";
  generation: GenerationJson;
  history: HistoryEntryJson[];
  params: Record<string, number>;
  policy: Record<string, number>;
  corpus_size: number;
  tree: unknown;
}

export interface CreateSessionResponse {
  id: string;
  state: SessionState;
}

export interface TranscriptJson {
  id: string;
  params: Record<string, number>;
  policy: Record<string, number>;
  status: string;
  selections: HistoryEntryJson[];
}
