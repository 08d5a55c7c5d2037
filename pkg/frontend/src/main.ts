/** Wiring: one in-flight request per game, input disabled while waiting. */

import { BridgeClient, BridgeError, Candidate } from "./api.js";
import {
  applyError,
  applyResponse,
  forkMoves,
  gameOver,
  humanTurn,
  initialState,
  stepHistory,
  UiGameState,
} from "./state.js";
import {
  renderBoard,
  renderError,
  renderEvalBar,
  renderSearch,
  renderStatus,
  renderVerdict,
} from "./render.js";

export function mount(root: Document, client: BridgeClient) {
  const boardEl = root.getElementById("board")!;
  const statusEl = root.getElementById("status")!;
  const verdictEl = root.getElementById("verdict")!;
  const searchEl = root.getElementById("search-stats")!;
  const evalEl = root.getElementById("eval-bar")!;
  const errorEl = root.getElementById("error")!;

  let state: UiGameState = initialState();
  let candidates: Candidate[] = [];

  function draw() {
    renderBoard(boardEl as HTMLElement, state, { onSquareClick: play }, candidates);
    renderStatus(statusEl as HTMLElement, state);
    renderVerdict(verdictEl as HTMLElement, state.lastAnalysis);
    renderSearch(searchEl as HTMLElement, state.lastSearch);
    renderEvalBar(evalEl as HTMLElement, state.lastSearch);
    renderError(errorEl as HTMLElement, state.error);
    (root.getElementById("analyze") as HTMLButtonElement).disabled =
      state.gameId === null || gameOver(state) || state.busy;
  }

  async function guard(work: () => Promise<void>) {
    if (state.busy) return;
    state = { ...state, busy: true, error: null };
    draw();
    try {
      await work();
    } catch (err) {
      const msg =
        err instanceof BridgeError ? err.message : "bridge unreachable; retry";
      state = applyError(state, msg);
    }
    draw();
  }

  async function newGame(moves: [number, number][] = []) {
    await guard(async () => {
      candidates = [];
      state = applyResponse(initialState(), await client.createGame(15, 15, moves));
    });
  }

  async function play(row: number, col: number) {
    if (!humanTurn(state)) return;
    await guard(async () => {
      candidates = [];
      state = applyResponse(state, await client.playMove(state.gameId!, row, col));
    });
  }

  async function analyze() {
    if (state.gameId === null || gameOver(state)) return;
    await guard(async () => {
      const resp = await client.analyze(state.gameId!);
      candidates = resp.candidates ?? [];
      state = applyResponse(state, resp);
    });
  }

  root.getElementById("new-game")!.addEventListener("click", () => void newGame());
  root.getElementById("analyze")!.addEventListener("click", () => void analyze());
  root.getElementById("fork")!.addEventListener("click", () => void newGame(forkMoves(state)));
  root.getElementById("back")!.addEventListener("click", () => {
    state = stepHistory(state, -1);
    draw();
  });
  root.getElementById("forward")!.addEventListener("click", () => {
    state = stepHistory(state, +1);
    draw();
  });

  draw();
  return {
    newGame,
    play,
    analyze,
    getState: () => state,
  };
}

declare global {
  interface Window {
    quintet?: ReturnType<typeof mount>;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.getElementById("board")) {
  window.quintet = mount(document, new BridgeClient(""));
}
