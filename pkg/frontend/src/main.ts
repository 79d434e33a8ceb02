/** Browser bootstrap: 3x3 candidate grid, pick-two submit flow, history strip,
 * level download. Layout and styling live in index.html. */

import { SessionApi } from "./api.js";
import { DesignerApp, describeHistoryEntry } from "./app.js";
import { drawLevel } from "./render.js";

const api = new SessionApi(
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8000",
);
const app = new DesignerApp(api);

const gridEl = document.getElementById("grid") as HTMLDivElement;
const statusEl = document.getElementById("status") as HTMLDivElement;
const errorEl = document.getElementById("error") as HTMLDivElement;
const historyEl = document.getElementById("history") as HTMLUListElement;
const submitEl = document.getElementById("submit") as HTMLButtonElement;
const newSessionEl = document.getElementById("new-session") as HTMLButtonElement;

function downloadBytes(bytes: Uint8Array, filename: string): void {
  const url = URL.createObjectURL(new Blob([new Uint8Array(bytes)], { type: "application/json" }));
  const link = document.createElement("a");
  link.href = url;
  link.download = filename;
  link.click();
  URL.revokeObjectURL(url);
}

function repaint(): void {
  errorEl.textContent = app.error ?? "";
  errorEl.hidden = !app.error;
  submitEl.disabled = !app.canSubmit;
  gridEl.replaceChildren();
  historyEl.replaceChildren();

  let view;
  try {
    view = app.view;
  } catch (exc) {
    errorEl.textContent = String(exc instanceof Error ? exc.message : exc);
    errorEl.hidden = false;
    return;
  }
  if (!view || !app.state) {
    statusEl.textContent = "no session";
    return;
  }

  const finished = view.turn === "finished";
  statusEl.textContent = finished
    ? `generation ${view.generation} · finished, export your favorite`
    : `generation ${view.generation} · pick two maps (${view.corpusSize} labels banked)`;

  for (const card of view.cards) {
    const candidate = app.state.generation.candidates[card.id];
    const tile = document.createElement("figure");
    tile.className = "card";
    tile.classList.toggle("picked", app.selection.has(card.id));

    const canvas = document.createElement("canvas");
    canvas.width = 256;
    canvas.height = 256;
    const ctx = canvas.getContext("2d");
    if (ctx && candidate) drawLevel(ctx, candidate.layout, 0.5);
    tile.appendChild(canvas);

    const caption = document.createElement("figcaption");
    const badge = document.createElement("span");
    badge.className = card.badge.ok ? "badge ok" : "badge bad";
    badge.textContent = card.badge.label + (card.gateWarning ? " · gate warning" : "");
    caption.appendChild(badge);

    const details = document.createElement("details");
    const summaryToggle = document.createElement("summary");
    summaryToggle.textContent = `map ${card.id}`;
    const stats = document.createElement("p");
    stats.textContent = card.summary;
    details.append(summaryToggle, stats);
    caption.appendChild(details);

    if (finished) {
      const save = document.createElement("button");
      save.textContent = "download level";
      save.addEventListener("click", async (event) => {
        event.stopPropagation();
        const bytes = await app.exportCandidate(card.id);
        if (bytes) downloadBytes(bytes, `level-${app.state?.id}-${card.id}.json`);
        repaint();
      });
      caption.appendChild(save);
    } else {
      tile.addEventListener("click", () => {
        app.selection.toggle(card.id);
        repaint();
      });
    }
    tile.appendChild(caption);
    gridEl.appendChild(tile);
  }

  for (const entry of view.history) {
    const item = document.createElement("li");
    item.className = entry.selector;
    item.textContent = describeHistoryEntry(entry);
    historyEl.appendChild(item);
  }
}

submitEl.addEventListener("click", async () => {
  await app.submit();
  repaint();
});

newSessionEl.addEventListener("click", async () => {
  await app.start();
  repaint();
});

void app.start().then(repaint);
