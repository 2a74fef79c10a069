// All service calls live here so tests can exercise them with a fake fetch.

import type { GameSnapshot, MoveErrorDetail, PlayerNumber } from "./types.js";

export class MoveRejected extends Error {
  readonly detail: MoveErrorDetail;

  constructor(detail: MoveErrorDetail) {
    super(detail.error);
    this.name = "MoveRejected";
    this.detail = detail;
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: typeof fetch;

  constructor(baseUrl = "", fetchFn: typeof fetch = fetch) {
    this.baseUrl = baseUrl;
    this.fetchFn = fetchFn;
  }

  async createGame(n: number, human: PlayerNumber): Promise<GameSnapshot> {
    const response = await this.fetchFn(`${this.baseUrl}/api/games`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ n, human }),
    });
    return this.unwrap(response);
  }

  async getGame(id: string): Promise<GameSnapshot> {
    const response = await this.fetchFn(`${this.baseUrl}/api/games/${id}`);
    return this.unwrap(response);
  }

  async submitMove(id: string, r: number, c: number): Promise<GameSnapshot> {
    const response = await this.fetchFn(`${this.baseUrl}/api/games/${id}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ r, c }),
    });
    return this.unwrap(response);
  }

  async deleteGame(id: string): Promise<void> {
    await this.fetchFn(`${this.baseUrl}/api/games/${id}`, { method: "DELETE" });
  }

  private async unwrap(response: Response): Promise<GameSnapshot> {
    if (response.ok) {
      return (await response.json()) as GameSnapshot;
    }
    let detail: MoveErrorDetail = { error: `request failed (${response.status})` };
    try {
      const body = (await response.json()) as { detail?: unknown };
      if (body.detail && typeof body.detail === "object") {
        detail = body.detail as MoveErrorDetail;
      } else if (typeof body.detail === "string") {
        detail = { error: body.detail };
      }
    } catch {
      // non-JSON error body; keep the status-based message
    }
    throw new MoveRejected(detail);
  }
}
