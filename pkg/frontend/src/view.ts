// Pure view derivations: everything the board shows comes from the latest
// snapshot plus the pending-request flag. No game rules are re-implemented
// here; a cell is clickable exactly when the snapshot lists it as available.

import type { Cell, GameSnapshot, MoveErrorDetail } from "./types.js";

export type CellKind = "queen" | "shaded" | "open";

export interface UiGameView {
  snapshot: GameSnapshot | null;
  pending: boolean;
  error: MoveErrorDetail | null;
}

export function initialView(): UiGameView {
  return { snapshot: null, pending: false, error: null };
}

const key = (r: number, c: number): string => `${r},${c}`;

export function cellKind(snapshot: GameSnapshot, r: number, c: number): CellKind {
  const queens = new Set(snapshot.moves.map(([qr, qc]) => key(qr, qc)));
  if (queens.has(key(r, c))) {
    return "queen";
  }
  const open = new Set(snapshot.available.map(([ar, ac]) => key(ar, ac)));
  return open.has(key(r, c)) ? "open" : "shaded";
}

/** The set the UI shades: attacked cells plus occupied cells, exactly. */
export function shadedCells(snapshot: GameSnapshot): Cell[] {
  return [...snapshot.attacked, ...snapshot.moves];
}

/** Which player owns the queen on a cell (moves alternate, player 1 first). */
export function queenOwner(snapshot: GameSnapshot, r: number, c: number): 1 | 2 | null {
  const index = snapshot.moves.findIndex(([qr, qc]) => qr === r && qc === c);
  if (index < 0) {
    return null;
  }
  return index % 2 === 0 ? 1 : 2;
}

export function isClickable(view: UiGameView, r: number, c: number): boolean {
  const snap = view.snapshot;
  if (!snap || view.pending || snap.status !== "in_progress") {
    return false;
  }
  if (snap.toMove !== snap.human) {
    return false;
  }
  return cellKind(snap, r, c) === "open";
}

export interface ClickResult {
  view: UiGameView;
  /** Move to send, or null when the click must be ignored. */
  request: Cell | null;
}

export function handleCellClick(view: UiGameView, r: number, c: number): ClickResult {
  if (!isClickable(view, r, c)) {
    return { view, request: null };
  }
  return { view: { ...view, pending: true, error: null }, request: [r, c] };
}

export function applySnapshot(view: UiGameView, snapshot: GameSnapshot): UiGameView {
  return { snapshot, pending: false, error: null };
}

export function applyMoveError(view: UiGameView, error: MoveErrorDetail): UiGameView {
  return { ...view, pending: false, error };
}

export function bannerText(snapshot: GameSnapshot): string | null {
  if (snapshot.status !== "finished" || snapshot.winner === null) {
    return null;
  }
  return `Player ${snapshot.winner} wins (last to move)`;
}

export function statusText(view: UiGameView): string {
  const snap = view.snapshot;
  if (!snap) {
    return "Pick a board size and side, then start a game.";
  }
  const finished = bannerText(snap);
  if (finished) {
    return finished;
  }
  if (view.pending) {
    return "Waiting for the engine…";
  }
  const turn = snap.toMove === snap.human ? "Your move." : "Engine to move.";
  const mode = snap.enginePlay === "heuristic" ? " (engine under time budget)" : "";
  return `${turn}${mode}`;
}

export function errorText(error: MoveErrorDetail): string {
  if (error.constraint && error.conflicting) {
    const [r, c] = error.conflicting;
    return `Illegal move: shares ${error.constraint} with the queen at (${r},${c}).`;
  }
  return error.reason ? `${error.error}: ${error.reason}` : error.error;
}

/** The conflicting queen to highlight after an illegal move, if any. */
export function highlightedQueen(view: UiGameView): Cell | null {
  return view.error?.conflicting ?? null;
}
