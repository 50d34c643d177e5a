import { ApiClient, ApiError } from "./api.js";
import type { Clustering, Compare, Meta, QueryMode, QueryParams, ReachabilityEntry } from "./types.js";
import { queryKey } from "./types.js";

export interface ExplorerState {
  meta: Meta | null;
  reachability: ReachabilityEntry[] | null;
  params: QueryParams | null;
  clustering: Clustering | null;
  /** Key of the params the current clustering answers; stale responses never land. */
  clusteringKey: string | null;
  compare: Compare | null;
  compareAvailable: boolean;
  latencyMs: number | null;
  error: string | null;
  loading: boolean;
}

type Listener = (state: ExplorerState) => void;

const DEBOUNCE_MS = 150;

/** Owns all query state: slider values are clamped to the index's
 *  admissible range, parameter changes are debounced, at most one
 *  clustering request is in flight, and responses are keyed by parameter
 *  value so out-of-order arrivals are discarded. */
export class ExplorerController {
  readonly state: ExplorerState = {
    meta: null,
    reachability: null,
    params: null,
    clustering: null,
    clusteringKey: null,
    compare: null,
    compareAvailable: false,
    latencyMs: null,
    error: null,
    loading: false,
  };

  private listeners: Listener[] = [];
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;
  private latestKey: string | null = null;

  constructor(
    private api: ApiClient,
    private debounceMs: number = DEBOUNCE_MS,
  ) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const l of this.listeners) l(this.state);
  }

  /** Meta and reachability are fetched exactly once; relabeling on
   *  parameter changes recolors the cached plot without refetching. */
  async init(): Promise<void> {
    try {
      this.state.meta = await this.api.meta();
      this.state.reachability = await this.api.reachability();
    } catch (err) {
      this.state.error = err instanceof Error ? err.message : String(err);
      this.notify();
      return;
    }
    this.state.params = {
      kind: "epsilon",
      value: this.state.meta.epsilon,
      mode: "exact",
    };
    this.notify();
    await this.issueQuery();
  }

  get epsilonStar(): number | null {
    const p = this.state.params;
    return p && p.kind === "epsilon" ? p.value : null;
  }

  get minPtsStar(): number | null {
    const p = this.state.params;
    return p && p.kind === "minpts" ? p.value : null;
  }

  clampEpsilon(value: number): number {
    const eps = this.state.meta ? this.state.meta.epsilon : value;
    return Math.min(Math.max(value, 0), eps);
  }

  clampMinPts(value: number): number {
    const floor = this.state.meta ? this.state.meta.min_pts : value;
    return Math.max(Math.round(value), floor);
  }

  setCutline(value: number): void {
    const mode: QueryMode =
      this.state.params?.kind === "epsilon" ? this.state.params.mode : "exact";
    this.state.params = { kind: "epsilon", value: this.clampEpsilon(value), mode };
    this.notify();
    this.schedule();
  }

  setMinPts(value: number): void {
    this.state.params = { kind: "minpts", value: this.clampMinPts(value) };
    this.notify();
    this.schedule();
  }

  /** The exact/approx toggle applies to radius queries only. */
  setMode(mode: QueryMode): void {
    const p = this.state.params;
    if (!p || p.kind !== "epsilon") return;
    this.state.params = { ...p, mode };
    this.notify();
    this.schedule();
  }

  private schedule(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.issueQuery();
    }, this.debounceMs);
  }

  /** Fire the query for the current params, aborting any previous one. */
  async issueQuery(): Promise<void> {
    const params = this.state.params;
    if (!params) return;
    const key = queryKey(params);
    this.latestKey = key;
    if (this.inflight) this.inflight.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.state.loading = true;
    this.notify();
    const started = performance.now();
    let clustering: Clustering;
    try {
      clustering = await this.api.clustering(params, controller.signal);
    } catch (err) {
      if (controller.signal.aborted) return; // superseded; never surface
      if (this.latestKey === key) {
        this.state.loading = false;
        this.state.error = err instanceof Error ? err.message : String(err);
        this.notify();
      }
      return;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
    if (this.latestKey !== key) return; // stale response, discard
    this.state.clustering = clustering;
    this.state.clusteringKey = key;
    this.state.latencyMs = performance.now() - started;
    this.state.error = null;
    this.state.loading = false;
    this.notify();
    await this.refreshCompare(params);
  }

  private async refreshCompare(params: QueryParams): Promise<void> {
    if (params.kind !== "epsilon") return;
    try {
      const compare = await this.api.compare(params.value);
      this.state.compare = compare;
      this.state.compareAvailable = compare !== null;
    } catch {
      this.state.compare = null;
      this.state.compareAvailable = false;
    }
    this.notify();
  }

  /** Test hook: resolve once no query is pending or in flight. */
  idle(): boolean {
    return this.timer === null && this.inflight === null;
  }
}
