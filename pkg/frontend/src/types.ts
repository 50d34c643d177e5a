export interface Meta {
  n: number;
  epsilon: number;
  min_pts: number;
  metric: string;
  fingerprint: string;
  core_count: number;
}

export interface ReachabilityEntry {
  pos: number;
  object_id: number;
  r: number | null;
  c: number | null;
  n: number;
}

export interface ClusteringStats {
  distance_computations: number;
  candidates: number;
  millis: number;
}

export interface Clustering {
  labels: number[];
  num_clusters: number;
  noise_count: number;
  stats: ClusteringStats;
}

export interface Compare {
  finex_recall: number;
  optics_recall: number;
  exact_cluster_count: number;
}

export interface Points {
  available: boolean;
  points: number[][] | null;
}

export type QueryMode = "exact" | "approx";

export type QueryParams =
  | { kind: "epsilon"; value: number; mode: QueryMode }
  | { kind: "minpts"; value: number };

export function queryKey(params: QueryParams): string {
  return params.kind === "epsilon"
    ? `eps:${params.value}:${params.mode}`
    : `mps:${params.value}`;
}
