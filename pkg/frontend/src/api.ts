/** Typed client for the engine bridge (JSON schema version 1). */

export const SCHEMA_VERSION = 1;

export interface BoardState {
  rows: number;
  cols: number;
  grid: string[]; // rows of 'X' | 'O' | '.'
  to_move: "X" | "O";
  move_count: number;
  winner: "X" | "O" | null;
  draw: boolean;
  history: [number, number][];
}

export interface Evidence {
  square: [number, number];
  kind: string;
  owner: number;
}

export interface Analysis {
  verdict: "win_in_sight" | "loss_certain" | "forced" | "open";
  case: number;
  moves: [number, number][];
  evidence: Evidence[];
}

export interface SearchInfo {
  best_move: [number, number] | null;
  value: number;
  pv: [number, number][];
  nodes: number;
  tt_hits: number;
  depth: number;
  time_ms: number;
}

export interface Candidate {
  square: [number, number];
  score: number;
}

export interface GameResponse {
  schema_version: number;
  id: number;
  state: BoardState;
  engine_move?: [number, number] | null;
  analysis?: Analysis | null;
  search?: SearchInfo | null;
  candidates?: Candidate[];
  verdict?: { status: string; line: [number, number][]; unknown: boolean; nodes: number };
}

export class BridgeError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function request(url: string, init?: RequestInit): Promise<GameResponse> {
  const resp = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new BridgeError(resp.status, detail);
  }
  const body = (await resp.json()) as GameResponse;
  if (body.schema_version !== undefined && body.schema_version !== SCHEMA_VERSION) {
    throw new BridgeError(500, `unsupported schema version ${body.schema_version}`);
  }
  return body;
}

export class BridgeClient {
  constructor(private base: string = "") {}

  createGame(rows = 15, cols = 15, moves: [number, number][] = []): Promise<GameResponse> {
    return request(`${this.base}/game`, {
      method: "POST",
      body: JSON.stringify({ rows, cols, moves }),
    });
  }

  getGame(id: number): Promise<GameResponse> {
    return request(`${this.base}/game/${id}`);
  }

  playMove(id: number, row: number, col: number): Promise<GameResponse> {
    return request(`${this.base}/game/${id}/move`, {
      method: "POST",
      body: JSON.stringify({ row, col }),
    });
  }

  analyze(id: number): Promise<GameResponse> {
    return request(`${this.base}/game/${id}/analyze`, { method: "POST", body: "{}" });
  }

  solve(id: number, solver = "bmm", threats = "fours"): Promise<GameResponse> {
    return request(`${this.base}/game/${id}/solve`, {
      method: "POST",
      body: JSON.stringify({ solver, threats }),
    });
  }

  deleteGame(id: number): Promise<unknown> {
    return request(`${this.base}/game/${id}`, { method: "DELETE" });
  }
}
