import { escapeHtml } from "./tables.js";
import type { JobSummary, RunListItem } from "./types.js";

export function renderJobList(root: HTMLElement, jobs: JobSummary[], selected: string | null): void {
  if (jobs.length === 0) {
    root.innerHTML = `<p class="empty">No jobs ingested yet.</p>`;
    return;
  }
  root.innerHTML = jobs
    .map((job) => {
      const active = job.id === selected ? " job-selected" : "";
      return `
        <button type="button" class="job-item${active}" data-job="${escapeHtml(job.id)}">
          <span class="job-title">${escapeHtml(job.title)}</span>
          <span class="job-status status-${escapeHtml(job.status)}">${escapeHtml(job.status)}</span>
          <span class="job-runs">${job.runs} run${job.runs === 1 ? "" : "s"}</span>
        </button>`;
    })
    .join("");
}

export function renderRunList(root: HTMLElement, runs: RunListItem[], selected: string | null): void {
  if (runs.length === 0) {
    root.innerHTML = `<p class="empty">No runs yet. Screen the pool to create one.</p>`;
    return;
  }
  root.innerHTML = runs
    .map((run) => {
      const active = run.run_id === selected ? " run-selected" : "";
      const p = run.parameters;
      return `
        <button type="button" class="run-item${active}" data-run="${escapeHtml(run.run_id)}">
          <span class="run-id">${escapeHtml(run.run_id)}</span>
          <span class="run-params">samples ${p.samples} · draws ${p.draws} · seed ${p.seed}</span>
          <span class="run-created">${escapeHtml(run.created_at)}</span>
        </button>`;
    })
    .join("");
}
