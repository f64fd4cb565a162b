/** Response shapes of the screening service; field names mirror the API. */

export interface JobSummary {
  id: string;
  title: string;
  status: string;
  description: string;
  runs: number;
}

export interface JobsResponse {
  jobs: JobSummary[];
  candidates: number;
}

export interface RunParameters {
  samples: number;
  mask_prob: number;
  draws: number;
  threshold: number;
  k: number;
  rho: number;
  seed: number;
}

export interface RunListItem {
  run_id: string;
  job_id: string;
  parameters: RunParameters;
  created_at: string;
  status: string;
}

export interface JobDetail {
  id: string;
  title: string;
  description: string;
  status: string;
  requirements: Record<string, number>;
  runs: RunListItem[];
}

export interface Report {
  k: number;
  jaccard: number;
  rbo: number;
  mean_entropy: number;
  deterministic_top: string[];
  humble_top: string[];
}

export interface ScreenResponse {
  run_id: string;
  job_id: string;
  parameters: RunParameters;
  created_at: string;
  status: string;
  n: number;
  reused: boolean;
  report: Report;
}

export interface ShortlistEntry {
  candidate_id: string;
  label: string | null;
  point_score: number;
  expected_rank: number | null;
  entropy: number | null;
  variance: number | null;
}

export interface Shortlist {
  run_id: string;
  k: number;
  humble: boolean;
  rho: number;
  exploit: ShortlistEntry[];
  explore: ShortlistEntry[];
}

/** [rank, probability] pairs above the run's threshold, rank 1 is best. */
export type SupportPair = [number, number];

export interface RanksetCandidate {
  candidate_id: string;
  label: string | null;
  expected_rank: number;
  support: SupportPair[];
}

export interface Rankset {
  run_id: string;
  draws: number;
  threshold: number;
  candidates: RanksetCandidate[];
}

export interface ScreenRequest {
  samples?: number;
  mask_prob?: number;
  draws?: number;
  threshold?: number;
  k?: number;
  rho?: number;
  seed?: number;
}
