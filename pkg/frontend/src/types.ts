// Wire types for the play-service JSON contract. The service is the single
// source of truth; the client derives everything it renders from the latest
// snapshot and performs no legality checks of its own.

export type PlayerNumber = 1 | 2;

export type Cell = [number, number]; // [row, col]

export interface GameSnapshot {
  id: string;
  n: number;
  human: PlayerNumber;
  toMove: PlayerNumber | null;
  moves: Cell[];
  available: Cell[];
  attacked: Cell[];
  status: "in_progress" | "finished";
  winner: PlayerNumber | null;
  enginePlay: "perfect" | "heuristic";
}

export interface MoveErrorDetail {
  error: string;
  constraint?: "row" | "col" | "falling" | "rising";
  conflicting?: Cell;
  reason?: string;
}
