/** Scripted DOM session against a live bridge: the full human-vs-engine loop.
 *
 * Spawns `python3 -m quintet.cli --port ...` (depth 2 for speed), mounts the
 * real UI in jsdom, plays five human moves through DOM clicks, receives five
 * engine replies, then builds a case-2 position (a lone defender five threat)
 * and checks the forced-move badge renders on the blocking square. */

import { ChildProcess, spawn } from "node:child_process";
import { existsSync } from "node:fs";
import { resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { BridgeClient } from "../src/api.js";
import { mount } from "../src/main.js";
import { pageSkeleton } from "./dom.js";

const PORT = 8971;
const BASE = `http://127.0.0.1:${PORT}`;

let bridge: ChildProcess;

async function until(cond: () => boolean, ms = 30_000): Promise<void> {
  const deadline = Date.now() + ms;
  while (!cond()) {
    if (Date.now() > deadline) throw new Error("timed out waiting for condition");
    await new Promise((r) => setTimeout(r, 25));
  }
}

beforeAll(async () => {
  const python = ["/usr/bin/python3", "/usr/local/bin/python3"].find(existsSync) ?? "python3";
  const repoRoot = resolve(process.cwd(), "..");  // vitest runs from frontend/
  bridge = spawn(
    python,
    ["-m", "quintet.cli", "--port", String(PORT), "--depth", "2", "--branch", "8"],
    { cwd: repoRoot, stdio: "ignore", env: process.env },
  );
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      await fetch(`${BASE}/game/999`);
      break; // any HTTP response means the server is up
    } catch {
      if (Date.now() > deadline) throw new Error("bridge did not come up");
      await new Promise((r) => setTimeout(r, 200));
    }
  }
}, 40_000);

afterAll(() => {
  bridge?.kill();
});

describe("live bridge session", () => {
  it("plays five human moves and receives five engine replies", async () => {
    pageSkeleton();
    const ui = mount(document, new BridgeClient(BASE));
    await ui.newGame();
    expect(ui.getState().gameId).not.toBeNull();

    const preferences: [number, number][] = [
      [7, 7], [6, 6], [8, 8], [5, 7], [9, 6], [4, 4], [10, 10], [3, 7],
    ];
    let replies = 0;
    for (const [r, c] of preferences) {
      if (replies === 5) break;
      const board = ui.getState().board!;
      if (board.grid[r].charAt(c) !== ".") continue;
      const before = board.move_count;
      const cell = document.querySelector<HTMLElement>(
        `td.playable[data-row='${r}'][data-col='${c}']`,
      );
      expect(cell).not.toBeNull();
      cell!.click();
      await until(() => {
        const s = ui.getState();
        return !s.busy && (s.board!.move_count === before + 2 || s.error !== null);
      });
      expect(ui.getState().error).toBeNull();
      const after = ui.getState();
      expect(after.board!.move_count).toBe(before + 2); // human + engine
      expect(after.lastEngineMove).not.toBeNull();
      const whites = after.board!.grid.join("").split("O").length - 1;
      expect(whites).toBe(replies + 1);
      replies += 1;
    }
    expect(replies).toBe(5);
  });

  it("renders a forced badge on a constructed case-2 position", async () => {
    pageSkeleton();
    const ui = mount(document, new BridgeClient(BASE));
    // Black to move; white holds a four capped on one side: the single
    // blocking square is (0,5).
    const moves: [number, number][] = [
      [0, 0], [0, 1],
      [5, 5], [0, 2],
      [5, 7], [0, 3],
      [9, 9], [0, 4],
    ];
    await ui.newGame(moves);
    expect(ui.getState().board!.move_count).toBe(8);
    await ui.analyze();
    const analysis = ui.getState().lastAnalysis!;
    expect(analysis.verdict).toBe("forced");
    expect(analysis.moves).toEqual([[0, 5]]);
    const badge = document.querySelector("td[data-row='0'][data-col='5'] .badge");
    expect(badge).not.toBeNull();
    expect(badge!.classList.contains("forced")).toBe(true);
    expect(badge!.textContent).toBe("!");
  });

  it("rejects an illegal move with a toast and no state change", async () => {
    pageSkeleton();
    const ui = mount(document, new BridgeClient(BASE));
    await ui.newGame([[7, 7], [8, 8]]);
    const before = ui.getState().board!.move_count;
    await ui.play(8, 8); // occupied
    const s = ui.getState();
    expect(s.error).toContain("occupied");
    expect(s.board!.move_count).toBe(before);
    const toast = document.getElementById("error")!;
    expect(toast.classList.contains("visible")).toBe(true);
  });
});
