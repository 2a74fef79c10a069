// DOM shell: renders the board from the current view and forwards clicks.

import { ApiClient, MoveRejected } from "./api.js";
import type { GameSnapshot } from "./types.js";
import {
  applyMoveError,
  applySnapshot,
  bannerText,
  cellKind,
  errorText,
  handleCellClick,
  highlightedQueen,
  initialView,
  isClickable,
  queenOwner,
  statusText,
  UiGameView,
} from "./view.js";

const QUEEN_GLYPHS = { 1: "♛", 2: "♕" } as const;

class GameClient {
  private view: UiGameView = initialView();

  private readonly api: ApiClient;
  private readonly boardElement: HTMLElement;
  private readonly statusElement: HTMLElement;
  private readonly bannerElement: HTMLElement;
  private readonly errorElement: HTMLElement;
  private readonly form: HTMLFormElement;

  constructor(api: ApiClient) {
    this.api = api;
    this.boardElement = document.getElementById("board")!;
    this.statusElement = document.getElementById("status")!;
    this.bannerElement = document.getElementById("banner")!;
    this.errorElement = document.getElementById("error")!;
    this.form = document.getElementById("new-game") as HTMLFormElement;

    const sizeSelect = document.getElementById("size") as HTMLSelectElement;
    for (let n = 1; n <= 16; n++) {
      const option = document.createElement("option");
      option.value = String(n);
      option.textContent = `${n} × ${n}`;
      if (n === 5) {
        option.selected = true;
      }
      sizeSelect.appendChild(option);
    }

    this.form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.startGame();
    });
    this.render();
  }

  private async startGame(): Promise<void> {
    const data = new FormData(this.form);
    const n = Number(data.get("size"));
    const side = Number(data.get("side")) === 1 ? 1 : 2;
    this.view = { ...this.view, pending: true, error: null };
    this.render();
    try {
      const snapshot = await this.api.createGame(n, side);
      this.view = applySnapshot(this.view, snapshot);
    } catch (err) {
      this.view = applyMoveError(
        this.view,
        err instanceof MoveRejected ? err.detail : { error: String(err) },
      );
    }
    this.render();
  }

  private async clickCell(r: number, c: number): Promise<void> {
    const { view, request } = handleCellClick(this.view, r, c);
    this.view = view;
    if (!request) {
      return; // shaded or out-of-turn cell: no request leaves the client
    }
    this.render();
    const id = this.view.snapshot!.id;
    try {
      const snapshot = await this.api.submitMove(id, request[0], request[1]);
      this.view = applySnapshot(this.view, snapshot);
    } catch (err) {
      this.view = applyMoveError(
        this.view,
        err instanceof MoveRejected ? err.detail : { error: String(err) },
      );
    }
    this.render();
  }

  private render(): void {
    const snap = this.view.snapshot;
    this.statusElement.textContent = statusText(this.view);
    this.errorElement.textContent = this.view.error ? errorText(this.view.error) : "";
    this.bannerElement.textContent = snap ? bannerText(snap) ?? "" : "";
    this.bannerElement.classList.toggle("visible", !!snap && !!bannerText(snap));
    this.boardElement.replaceChildren();
    if (!snap) {
      return;
    }
    this.boardElement.style.gridTemplateColumns = `repeat(${snap.n}, var(--cell))`;
    const highlight = highlightedQueen(this.view);
    for (let r = 0; r < snap.n; r++) {
      for (let c = 0; c < snap.n; c++) {
        this.boardElement.appendChild(this.makeCell(snap, r, c, highlight));
      }
    }
  }

  private makeCell(
    snap: GameSnapshot,
    r: number,
    c: number,
    highlight: [number, number] | null,
  ): HTMLButtonElement {
    const cell = document.createElement("button");
    const kind = cellKind(snap, r, c);
    cell.className = `cell ${kind}`;
    cell.dataset.cell = `${r},${c}`;
    if ((r + c) % 2 === 1) {
      cell.classList.add("dark");
    }
    if (kind === "queen") {
      const owner = queenOwner(snap, r, c)!;
      cell.textContent = QUEEN_GLYPHS[owner];
      cell.title = `player ${owner}`;
      if (highlight && highlight[0] === r && highlight[1] === c) {
        cell.classList.add("conflict");
      }
    }
    if (isClickable(this.view, r, c)) {
      cell.addEventListener("click", () => void this.clickCell(r, c));
    } else {
      cell.disabled = true;
    }
    return cell;
  }
}

new GameClient(new ApiClient());
