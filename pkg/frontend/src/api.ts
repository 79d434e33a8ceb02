/** Typed fetch client for the session service. */

import type { CreateSessionResponse, SessionState, TranscriptJson } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function raise(resp: Response): Promise<never> {
  let detail = resp.statusText;
  try {
    const body = (await resp.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body: keep the status text
  }
  throw new ApiError(resp.status, detail);
}

export class SessionApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  async createSession(
    params?: Record<string, number>,
    policy?: Record<string, number>,
  ): Promise<CreateSessionResponse> {
    const resp = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ params: params ?? {}, policy: policy ?? {} }),
    });
    if (resp.status !== 201) await raise(resp);
    return (await resp.json()) as CreateSessionResponse;
  }

  async getState(sessionId: string): Promise<SessionState> {
    const resp = await fetch(this.url(`/sessions/${sessionId}`));
    if (!resp.ok) await raise(resp);
    return (await resp.json()) as SessionState;
  }

  async submitSelection(sessionId: string, ids: [number, number]): Promise<SessionState> {
    const resp = await fetch(this.url(`/sessions/${sessionId}/selection`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ ids }),
    });
    if (!resp.ok) await raise(resp);
    return (await resp.json()) as SessionState;
  }

  /** Raw export bytes; the server emits canonical JSON so bytes are comparable. */
  async exportLevel(sessionId: string, candidateId: number): Promise<Uint8Array> {
    const resp = await fetch(this.url(`/sessions/${sessionId}/export/${candidateId}`));
    if (!resp.ok) await raise(resp);
    return new Uint8Array(await resp.arrayBuffer());
  }

  async getHistory(sessionId: string): Promise<TranscriptJson> {
    const resp = await fetch(this.url(`/sessions/${sessionId}/history`));
    if (!resp.ok) await raise(resp);
    return (await resp.json()) as TranscriptJson;
  }
}
