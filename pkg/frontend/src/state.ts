/** Client-side game state: a server-authoritative mirror.
 *
 * Every field derives from an acknowledged bridge response; nothing is
 * simulated locally.  History navigation is a read-only cursor over the
 * server-reported move list. */

import type { Analysis, BoardState, GameResponse, SearchInfo } from "./api.js";

export interface UiGameState {
  gameId: number | null;
  board: BoardState | null;
  lastSearch: SearchInfo | null;
  lastAnalysis: Analysis | null;
  lastEngineMove: [number, number] | null;
  busy: boolean;
  cursor: number | null; // history index when browsing, null = live
  error: string | null;
}

export function initialState(): UiGameState {
  return {
    gameId: null,
    board: null,
    lastSearch: null,
    lastAnalysis: null,
    lastEngineMove: null,
    busy: false,
    cursor: null,
    error: null,
  };
}

export function applyResponse(state: UiGameState, resp: GameResponse): UiGameState {
  return {
    ...state,
    gameId: resp.id,
    board: resp.state,
    lastSearch: resp.search ?? state.lastSearch,
    lastAnalysis: resp.analysis ?? null,
    lastEngineMove: resp.engine_move ?? null,
    cursor: null,
    error: null,
    busy: false,
  };
}

export function applyError(state: UiGameState, message: string): UiGameState {
  return { ...state, error: message, busy: false };
}

export function humanTurn(state: UiGameState): boolean {
  const b = state.board;
  if (!b || state.busy || state.cursor !== null) return false;
  if (b.winner !== null || b.draw) return false;
  // The human always plays black in this client; the engine answers within
  // the same exchange, so between exchanges it is black's move.
  return b.to_move === "X";
}

export function gameOver(state: UiGameState): boolean {
  const b = state.board;
  return !!b && (b.winner !== null || b.draw);
}

export function squareAt(state: UiGameState, row: number, col: number): string {
  const b = state.board;
  if (!b) return ".";
  return b.grid[row]?.charAt(col) ?? ".";
}

/** Board rows to display: live grid, or a replay prefix when browsing. */
export function visibleGrid(state: UiGameState): string[] {
  const b = state.board;
  if (!b) return [];
  if (state.cursor === null) return b.grid;
  const grid = Array.from({ length: b.rows }, () => ".".repeat(b.cols).split(""));
  for (let i = 0; i < state.cursor; i++) {
    const [r, c] = b.history[i];
    grid[r][c] = i % 2 === 0 ? "X" : "O";
  }
  return grid.map((row) => row.join(""));
}

export function stepHistory(state: UiGameState, delta: number): UiGameState {
  const b = state.board;
  if (!b) return state;
  const max = b.history.length;
  const from = state.cursor === null ? max : state.cursor;
  const next = Math.min(max, Math.max(0, from + delta));
  return { ...state, cursor: next === max ? null : next };
}

/** Moves to replay when forking a new game from the current cursor. */
export function forkMoves(state: UiGameState): [number, number][] {
  const b = state.board;
  if (!b) return [];
  const upto = state.cursor === null ? b.history.length : state.cursor;
  return b.history.slice(0, upto);
}
