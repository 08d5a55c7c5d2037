/** DOM rendering: grid of intersections, stones, overlays, side panel. */

import type { Analysis, Candidate, SearchInfo } from "./api.js";
import { UiGameState, gameOver, humanTurn, visibleGrid } from "./state.js";

export interface RenderCallbacks {
  onSquareClick(row: number, col: number): void;
}

const VERDICT_LABELS: Record<string, string> = {
  win_in_sight: "Win in sight",
  loss_certain: "Loss certain",
  forced: "Forced",
  open: "Open",
};

export function renderBoard(
  container: HTMLElement,
  state: UiGameState,
  callbacks: RenderCallbacks,
  candidates: Candidate[] = [],
): void {
  const board = state.board;
  container.textContent = "";
  if (!board) return;
  const grid = visibleGrid(state);
  const table = document.createElement("table");
  table.className = "board";
  const clickable = humanTurn(state);

  const badge = badgeSquares(state.lastAnalysis);
  const candScores = new Map(candidates.map((c) => [key(c.square[0], c.square[1]), c.score]));
  const last = state.lastEngineMove;
  const pvOrder = new Map<string, number>();
  (state.lastSearch?.pv ?? []).forEach(([r, c], i) => {
    if (!pvOrder.has(key(r, c))) pvOrder.set(key(r, c), i + 1);
  });

  const header = document.createElement("tr");
  header.appendChild(document.createElement("th"));
  for (let c = 0; c < board.cols; c++) {
    const th = document.createElement("th");
    th.textContent = String(c);
    header.appendChild(th);
  }
  table.appendChild(header);

  for (let r = 0; r < board.rows; r++) {
    const tr = document.createElement("tr");
    const th = document.createElement("th");
    th.textContent = String(r);
    tr.appendChild(th);
    for (let c = 0; c < board.cols; c++) {
      const td = document.createElement("td");
      td.dataset.row = String(r);
      td.dataset.col = String(c);
      const stone = grid[r]?.charAt(c) ?? ".";
      if (stone === "X" || stone === "O") {
        const span = document.createElement("span");
        span.className = stone === "X" ? "stone black" : "stone white";
        if (last && last[0] === r && last[1] === c) span.classList.add("last");
        td.appendChild(span);
      } else {
        const mark = badge.get(key(r, c));
        if (mark) {
          const span = document.createElement("span");
          span.className = `badge ${mark.cls}`;
          span.title = mark.title;
          span.textContent = mark.text;
          td.appendChild(span);
        } else if (pvOrder.has(key(r, c))) {
          const span = document.createElement("span");
          span.className = "pv";
          span.title = "principal variation";
          span.textContent = String(pvOrder.get(key(r, c)));
          td.appendChild(span);
        } else if (candScores.has(key(r, c))) {
          const dot = document.createElement("span");
          dot.className = "candidate";
          dot.title = `score ${candScores.get(key(r, c))}`;
          td.appendChild(dot);
        }
        if (clickable) {
          td.classList.add("playable");
          td.addEventListener("click", () => callbacks.onSquareClick(r, c));
        }
      }
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
}

function key(r: number, c: number): string {
  return `${r},${c}`;
}

interface Badge {
  cls: string;
  text: string;
  title: string;
}

/** Threat overlays: winning squares, forced blocks, strong-potential marks. */
function badgeSquares(analysis: Analysis | null): Map<string, Badge> {
  const out = new Map<string, Badge>();
  if (!analysis) return out;
  if (analysis.verdict === "forced") {
    for (const [r, c] of analysis.moves) {
      out.set(key(r, c), { cls: "forced", text: "!", title: "forced move" });
    }
  } else if (analysis.verdict === "win_in_sight") {
    for (const [r, c] of analysis.moves) {
      out.set(key(r, c), { cls: "winning", text: "★", title: "winning square" });
    }
  }
  for (const ev of analysis.evidence) {
    const [r, c] = ev.square;
    if (!out.has(key(r, c)) && ["S5", "D4", "C44"].includes(ev.kind)) {
      out.set(key(r, c), {
        cls: "threat",
        text: ev.kind,
        title: `${ev.kind} potential`,
      });
    }
  }
  return out;
}

export function renderStatus(el: HTMLElement, state: UiGameState): void {
  const b = state.board;
  if (!b) {
    el.textContent = "No game";
    return;
  }
  if (b.winner) {
    el.textContent = b.winner === "X" ? "Black (you) won" : "White (engine) won";
  } else if (b.draw) {
    el.textContent = "Draw: board full";
  } else if (state.busy) {
    el.textContent = "Engine thinking…";
  } else if (state.cursor !== null) {
    el.textContent = `Browsing move ${state.cursor}/${b.history.length}`;
  } else {
    el.textContent = b.to_move === "X" ? "Your move (black)" : "Engine to move";
  }
}

export function renderVerdict(el: HTMLElement, analysis: Analysis | null): void {
  if (!analysis) {
    el.textContent = "";
    el.className = "verdict";
    return;
  }
  el.textContent = VERDICT_LABELS[analysis.verdict] ?? analysis.verdict;
  el.className = `verdict ${analysis.verdict}`;
}

export function renderSearch(el: HTMLElement, info: SearchInfo | null): void {
  if (!info) {
    el.textContent = "";
    return;
  }
  const pv = info.pv.map(([r, c]) => `(${r},${c})`).join(" ");
  el.textContent =
    `depth ${info.depth}, ${info.nodes} nodes, ` +
    `${info.time_ms.toFixed(0)} ms, pv ${pv || "-"}`;
}

/** Eval bar: engine value mapped to a 0..100% black share. */
export function renderEvalBar(el: HTMLElement, info: SearchInfo | null): void {
  const fill = el.querySelector<HTMLElement>(".fill") ?? el;
  if (!info) {
    fill.style.width = "50%";
    return;
  }
  // The reported value is from the engine's (white's) perspective.
  const blackValue = -info.value;
  const share = 100 / (1 + Math.exp(-blackValue / 50_000));
  fill.style.width = `${share.toFixed(1)}%`;
}

export function renderError(el: HTMLElement, message: string | null): void {
  el.textContent = message ?? "";
  el.classList.toggle("visible", message !== null);
}
