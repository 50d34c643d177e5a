import type { Clustering, Compare, Meta, Points, QueryParams, ReachabilityEntry } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/** Typed client for the index service. The UI never computes clustering
 *  itself; every label it shows comes through this client. */
export class ApiClient {
  constructor(private base: string = "") {}

  meta(): Promise<Meta> {
    return this.get<Meta>("/api/meta");
  }

  reachability(): Promise<ReachabilityEntry[]> {
    return this.get<ReachabilityEntry[]>("/api/reachability");
  }

  clustering(params: QueryParams, signal?: AbortSignal): Promise<Clustering> {
    const qs =
      params.kind === "epsilon"
        ? `epsilon_star=${params.value}&mode=${params.mode}`
        : `minpts_star=${params.value}`;
    return this.get<Clustering>(`/api/clustering?${qs}`, signal);
  }

  /** Returns null when the server runs without baselines (409). */
  async compare(epsilonStar: number): Promise<Compare | null> {
    try {
      return await this.get<Compare>(`/api/compare?epsilon_star=${epsilonStar}`);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) return null;
      throw err;
    }
  }

  points(): Promise<Points> {
    return this.get<Points>("/api/points");
  }

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const resp = await fetch(this.base + path, { signal });
    if (!resp.ok) {
      let detail = `HTTP ${resp.status}`;
      try {
        const body = await resp.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status-only message
      }
      throw new ApiError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }
}
