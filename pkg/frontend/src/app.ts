/** View-model layer: everything the DOM shows is derived here from server
 * state plus the local selection, so tests can run without a browser. */

import { ApiError, SessionApi } from "./api.js";
import { MalformedLevelError, featureSummary, playabilityBadge, renderLevelSvg } from "./render.js";
import { SelectionModel } from "./selection.js";
import type { CandidateJson, HistoryEntryJson, SessionState } from "./types.js";

export interface CandidateCard {
  id: number;
  svg: string;
  summary: string;
  badge: { label: string; ok: boolean };
  gateWarning: boolean;
}

export interface RoundView {
  generation: number;
  turn: "human" | "finished";
  cards: CandidateCard[];
  history: HistoryEntryJson[];
  corpusSize: number;
}

export function buildCard(candidate: CandidateJson): CandidateCard {
  return {
    id: candidate.id,
    svg: renderLevelSvg(candidate.layout),
    summary: featureSummary(candidate.features),
    badge: playabilityBadge(candidate.playability),
    gateWarning: candidate.gate_warning,
  };
}

/** One card per candidate of the current generation; malformed payloads throw. */
export function renderRound(state: SessionState): RoundView {
  const candidates = state.generation?.candidates;
  if (!Array.isArray(candidates) || candidates.length !== 9) {
    throw new MalformedLevelError(
      `state must carry exactly 9 candidates, got ${candidates?.length ?? "none"}`,
    );
  }
  return {
    generation: state.generation.index,
    turn: state.turn,
    cards: candidates.map(buildCard),
    history: state.history,
    corpusSize: state.corpus_size,
  };
}

export function describeHistoryEntry(entry: HistoryEntryJson): string {
  const who = entry.selector === "agent" ? "agent" : "you";
  return `round ${entry.generation}: ${who} kept ${entry.ids.join(" + ")}`;
}

/** Session driver: one in-flight request, state re-fetched after mutation. */
export class DesignerApp {
  readonly selection = new SelectionModel();
  state: SessionState | null = null;
  error: string | null = null;
  private busy = false;

  constructor(readonly api: SessionApi) {}

  get view(): RoundView | null {
    return this.state ? renderRound(this.state) : null;
  }

  get canSubmit(): boolean {
    return (
      !this.busy && this.state?.status === "active" && this.selection.canSubmit
    );
  }

  async start(params?: Record<string, number>, policy?: Record<string, number>): Promise<void> {
    await this.guard(async () => {
      const created = await this.api.createSession(params, policy);
      this.state = created.state;
      this.selection.clear();
    });
  }

  async resume(sessionId: string): Promise<void> {
    await this.guard(async () => {
      this.state = await this.api.getState(sessionId);
      this.selection.clear();
    });
  }

  /** POST the current pair, then adopt the next human-turn state. */
  async submit(): Promise<void> {
    if (!this.state || !this.selection.canSubmit) {
      this.error = "pick exactly two maps first";
      return;
    }
    const id = this.state.id;
    const pair = this.selection.pair;
    await this.guard(async () => {
      this.state = await this.api.submitSelection(id, pair);
      this.selection.clear();
    });
  }

  async exportCandidate(candidateId: number): Promise<Uint8Array | null> {
    if (!this.state) return null;
    const id = this.state.id;
    let bytes: Uint8Array | null = null;
    await this.guard(async () => {
      bytes = await this.api.exportLevel(id, candidateId);
    });
    return bytes;
  }

  private async guard(work: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.error = null;
    try {
      await work();
    } catch (exc) {
      if (exc instanceof ApiError || exc instanceof MalformedLevelError) {
        this.error = exc.message;
      } else {
        this.error = String(exc);
      }
    } finally {
      this.busy = false;
    }
  }
}
