// Snapshots captured from the live play service (verbatim responses, ids
// shortened). They drive the view tests so the client is exercised against
// the real wire shapes.

import type { GameSnapshot, MoveErrorDetail } from "../src/types.js";

export const N4_AS_P2_OPENED: GameSnapshot = {
  id: "fix-n4",
  n: 4,
  human: 2,
  toMove: 2,
  moves: [[1, 1]],
  available: [[0, 3], [2, 3], [3, 0], [3, 2]],
  attacked: [
    [0, 0], [0, 1], [0, 2],
    [1, 0], [1, 2], [1, 3],
    [2, 0], [2, 1], [2, 2],
    [3, 1], [3, 3],
  ],
  status: "in_progress",
  winner: null,
  enginePlay: "perfect",
};

export const N4_FINISHED: GameSnapshot = {
  id: "fix-n4",
  n: 4,
  human: 2,
  toMove: null,
  moves: [[1, 1], [0, 3], [3, 2]],
  available: [],
  attacked: [
    [0, 0], [0, 1], [0, 2],
    [1, 0], [1, 2], [1, 3],
    [2, 0], [2, 1], [2, 2], [2, 3],
    [3, 0], [3, 1], [3, 3],
  ],
  status: "finished",
  winner: 1,
  enginePlay: "perfect",
};

export const N5_AS_P2_OPENED: GameSnapshot = {
  id: "fix-n5",
  n: 5,
  human: 2,
  toMove: 2,
  moves: [[2, 2]],
  available: [
    [0, 1], [0, 3],
    [1, 0], [1, 4],
    [3, 0], [3, 4],
    [4, 1], [4, 3],
  ],
  attacked: [
    [0, 0], [0, 2], [0, 4],
    [1, 1], [1, 2], [1, 3],
    [2, 0], [2, 1], [2, 3], [2, 4],
    [3, 1], [3, 2], [3, 3],
    [4, 0], [4, 2], [4, 4],
  ],
  status: "in_progress",
  winner: null,
  enginePlay: "perfect",
};

export const N1_INSTANT_FINISH: GameSnapshot = {
  id: "fix-n1",
  n: 1,
  human: 2,
  toMove: null,
  moves: [[0, 0]],
  available: [],
  attacked: [],
  status: "finished",
  winner: 1,
  enginePlay: "perfect",
};

export const ILLEGAL_MOVE_DETAIL: MoveErrorDetail = {
  error: "illegal move",
  constraint: "rising",
  conflicting: [1, 1],
};
