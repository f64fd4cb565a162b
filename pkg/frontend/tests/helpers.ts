import type { FetchLike } from "../src/api.js";
import type {
  JobDetail,
  Rankset,
  RanksetCandidate,
  ScreenResponse,
  Shortlist,
  ShortlistEntry,
} from "../src/types.js";

export const PARAMS = {
  samples: 100,
  mask_prob: 0.5,
  draws: 10_000,
  threshold: 0.01,
  k: 4,
  rho: 0.5,
  seed: 0,
};

export function makeEntry(id: string, overrides: Partial<ShortlistEntry> = {}): ShortlistEntry {
  return {
    candidate_id: id,
    label: `Label ${id}`,
    point_score: 0.5,
    expected_rank: 2.0,
    entropy: 0.4,
    variance: 0.25,
    ...overrides,
  };
}

export function makeShortlist(overrides: Partial<Shortlist> = {}): Shortlist {
  return {
    run_id: "run-abc",
    k: 4,
    humble: true,
    rho: 0.5,
    exploit: [makeEntry("c1"), makeEntry("c2")],
    explore: [makeEntry("c5"), makeEntry("c6")],
    ...overrides,
  };
}

export const DEGENERATE: RanksetCandidate = {
  candidate_id: "c1",
  label: "Label c1",
  expected_rank: 1,
  support: [[1, 1.0]],
};

export const UNIFORM: RanksetCandidate = {
  candidate_id: "c2",
  label: "Label c2",
  expected_rank: 2.5,
  support: [
    [1, 0.25],
    [2, 0.25],
    [3, 0.25],
    [4, 0.25],
  ],
};

export function makeRankset(overrides: Partial<Rankset> = {}): Rankset {
  return {
    run_id: "run-abc",
    draws: 10_000,
    threshold: 0.01,
    candidates: [
      DEGENERATE,
      UNIFORM,
      { candidate_id: "c3", label: "Label c3", expected_rank: 3, support: [[3, 0.6], [4, 0.4]] },
      { candidate_id: "c4", label: "Label c4", expected_rank: 3.5, support: [[3, 0.4], [4, 0.6]] },
      { candidate_id: "c5", label: "Label c5", expected_rank: 2.2, support: [[1, 0.5], [2, 0.2], [3, 0.3]] },
      { candidate_id: "c6", label: "Label c6", expected_rank: 2.4, support: [[1, 0.3], [2, 0.5], [4, 0.2]] },
    ],
    ...overrides,
  };
}

export function makeScreenResponse(overrides: Partial<ScreenResponse> = {}): ScreenResponse {
  return {
    run_id: "run-abc",
    job_id: "j-a",
    parameters: PARAMS,
    created_at: "2026-01-01T00:00:00Z",
    status: "complete",
    n: 6,
    reused: false,
    report: {
      k: 4,
      jaccard: 0.6,
      rbo: 0.72,
      mean_entropy: 0.41,
      deterministic_top: ["c1", "c2", "c3", "c4"],
      humble_top: ["c1", "c2", "c5", "c6"],
    },
    ...overrides,
  };
}

export function makeJobDetail(overrides: Partial<JobDetail> = {}): JobDetail {
  return {
    id: "j-a",
    title: "Alpha Role",
    description: "",
    status: "open",
    requirements: { python: 1.0 },
    runs: [
      {
        run_id: "run-abc",
        job_id: "j-a",
        parameters: PARAMS,
        created_at: "2026-01-01T00:00:00Z",
        status: "complete",
      },
    ],
    ...overrides,
  };
}

function abortError(): Error {
  const error = new Error("The operation was aborted.");
  error.name = "AbortError";
  return error;
}

export function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export type RouteHandler = (url: URL, init?: RequestInit) => unknown;

export interface RecordedCall {
  method: string;
  path: string;
  url: URL;
  signal: AbortSignal | null;
}

export interface FakeFetch {
  fetch: FetchLike;
  calls: RecordedCall[];
}

/** Route-table fetch stub keyed by "METHOD /path"; respects abort signals. */
export function fakeFetch(routes: Record<string, RouteHandler>): FakeFetch {
  const calls: RecordedCall[] = [];
  const fetch: FetchLike = async (input, init) => {
    const url = new URL(input, "http://test");
    const method = (init?.method ?? "GET").toUpperCase();
    const signal = init?.signal ?? null;
    calls.push({ method, path: url.pathname, url, signal });
    if (signal?.aborted) throw abortError();

    const handler = routes[`${method} ${url.pathname}`];
    if (!handler) return jsonResponse({ detail: `no route: ${method} ${url.pathname}` }, 404);

    const aborted = new Promise<never>((_, reject) => {
      signal?.addEventListener("abort", () => reject(abortError()), { once: true });
    });
    const value = await Promise.race([Promise.resolve(handler(url, init)), aborted]);
    return value instanceof Response ? value : jsonResponse(value);
  };
  return { fetch, calls };
}

/** Polls until the probe returns truthy; DOM updates here are async fallout. */
export async function until(probe: () => boolean, timeoutMs = 5_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (probe()) return;
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
  throw new Error("condition not met in time");
}
