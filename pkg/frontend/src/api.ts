import type {
  JobDetail,
  JobsResponse,
  Rankset,
  ScreenRequest,
  ScreenResponse,
  Shortlist,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface ShortlistQuery {
  k?: number;
  humble?: boolean;
  rho?: number;
}

/** Thin typed client; every method resolves to parsed JSON or throws ApiError. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail = `${response.status} ${response.statusText}`;
      try {
        const body = (await response.json()) as { detail?: unknown };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // non-JSON error body; keep the status line
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  jobs(signal?: AbortSignal): Promise<JobsResponse> {
    return this.request("/jobs", { signal });
  }

  job(jobId: string, signal?: AbortSignal): Promise<JobDetail> {
    return this.request(`/jobs/${encodeURIComponent(jobId)}`, { signal });
  }

  screen(jobId: string, params: ScreenRequest = {}, signal?: AbortSignal): Promise<ScreenResponse> {
    return this.request(`/jobs/${encodeURIComponent(jobId)}/screen`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
      signal,
    });
  }

  run(runId: string, signal?: AbortSignal): Promise<ScreenResponse> {
    return this.request(`/runs/${encodeURIComponent(runId)}`, { signal });
  }

  shortlist(runId: string, query: ShortlistQuery = {}, signal?: AbortSignal): Promise<Shortlist> {
    const params = new URLSearchParams();
    if (query.k !== undefined) params.set("k", String(query.k));
    if (query.humble !== undefined) params.set("humble", String(query.humble));
    if (query.rho !== undefined) params.set("rho", String(query.rho));
    const qs = params.toString();
    const suffix = qs ? `?${qs}` : "";
    return this.request(`/runs/${encodeURIComponent(runId)}/shortlist${suffix}`, { signal });
  }

  rankset(runId: string, threshold?: number, signal?: AbortSignal): Promise<Rankset> {
    const suffix = threshold !== undefined ? `?threshold=${threshold}` : "";
    return this.request(`/runs/${encodeURIComponent(runId)}/rankset${suffix}`, { signal });
  }
}
