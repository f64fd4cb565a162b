import { ApiClient } from "./api.js";
import { fmt3 } from "./format.js";
import { renderJobList, renderRunList } from "./jobs.js";
import { renderRankDetail } from "./rankchart.js";
import { Store, rhoEnabled } from "./state.js";
import { escapeHtml, renderMatches } from "./tables.js";
import type { Rankset, RanksetCandidate, ScreenRequest, ScreenResponse, Shortlist } from "./types.js";

const SCAFFOLD = `
  <header class="top">
    <h1>Screening console</h1>
    <span id="pool-info" class="pool-info"></span>
  </header>
  <div id="error-banner" class="error-banner" hidden>
    <span id="error-text"></span>
    <button type="button" id="retry-btn">Retry</button>
  </div>
  <p id="status" class="status" role="status" aria-live="polite"></p>
  <div class="layout">
    <aside class="sidebar">
      <h2>Jobs</h2>
      <nav id="job-list" class="job-list" aria-label="jobs"></nav>
      <h2>Runs</h2>
      <div id="run-list" class="run-list"></div>
    </aside>
    <main class="content">
      <section class="controls" aria-label="shortlist controls">
        <button type="button" id="screen-btn" disabled>Screen pool</button>
        <label class="control">
          <input type="checkbox" id="humble-toggle" checked>
          Humble mode
        </label>
        <label class="control" for="rho-slider">
          Explore share <output id="rho-value" for="rho-slider"></output>
          <input type="range" id="rho-slider" min="0" max="1" step="0.05">
        </label>
        <label class="control">
          Shortlist size
          <input type="number" id="k-input" min="1" step="1">
        </label>
        <label class="control">
          <input type="checkbox" id="merged-toggle">
          Merged list
        </label>
      </section>
      <p id="report-line" class="report-line"></p>
      <section id="matches" class="matches-panel" aria-label="shortlist"></section>
      <section id="detail" class="detail-panel" aria-label="rank distribution detail"></section>
    </main>
  </div>`;

/** Single-page console: pick a job, screen the pool, inspect the shortlist. */
export class App {
  readonly store: Store;
  /** Parameters for new screening runs; view knobs never change stored runs. */
  screenParams: ScreenRequest = {};

  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private shortlistAbort: AbortController | null = null;
  private shortlist: Shortlist | null = null;
  private rankset: Rankset | null = null;
  private supports = new Map<string, RanksetCandidate>();
  private retryAction: (() => void) | null = null;

  constructor(root: HTMLElement, api: ApiClient, store: Store = new Store()) {
    this.root = root;
    this.api = api;
    this.store = store;
  }

  private el<T extends HTMLElement>(selector: string): T {
    const node = this.root.querySelector<T>(selector);
    if (!node) throw new Error(`missing element: ${selector}`);
    return node;
  }

  async init(): Promise<void> {
    this.root.innerHTML = SCAFFOLD;
    this.bindControls();
    this.syncControls();
    renderRankDetail(this.el("#detail"), null, 0);
    await this.loadJobs();
  }

  private bindControls(): void {
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement | null;
      if (!target) return;
      const jobButton = target.closest<HTMLElement>(".job-item");
      if (jobButton?.dataset.job) {
        void this.selectJob(jobButton.dataset.job);
        return;
      }
      const runButton = target.closest<HTMLElement>(".run-item");
      if (runButton?.dataset.run) {
        void this.selectRun(runButton.dataset.run);
        return;
      }
      const candidateButton = target.closest<HTMLElement>(".candidate-link");
      if (candidateButton?.dataset.candidate) {
        this.selectCandidate(candidateButton.dataset.candidate);
      }
    });

    this.el("#screen-btn").addEventListener("click", () => void this.screen());
    this.el("#retry-btn").addEventListener("click", () => {
      const action = this.retryAction;
      this.clearError();
      action?.();
    });
    this.el<HTMLInputElement>("#humble-toggle").addEventListener("change", (event) => {
      this.store.set({ humble: (event.target as HTMLInputElement).checked });
      this.syncControls();
      void this.refreshShortlist();
    });
    this.el<HTMLInputElement>("#rho-slider").addEventListener("input", (event) => {
      this.store.set({ rho: Number((event.target as HTMLInputElement).value) });
      this.syncControls();
      void this.refreshShortlist();
    });
    this.el<HTMLInputElement>("#k-input").addEventListener("change", (event) => {
      this.store.set({ k: Number((event.target as HTMLInputElement).value) });
      this.syncControls();
      void this.refreshShortlist();
    });
    this.el<HTMLInputElement>("#merged-toggle").addEventListener("change", (event) => {
      this.store.set({ mergedLayout: (event.target as HTMLInputElement).checked });
      this.renderShortlist();
    });
  }

  /** Pushes view state into the control widgets. */
  private syncControls(): void {
    const state = this.store.get();
    this.el<HTMLInputElement>("#humble-toggle").checked = state.humble;
    const slider = this.el<HTMLInputElement>("#rho-slider");
    slider.value = String(state.rho);
    slider.disabled = !rhoEnabled(state);
    this.el<HTMLOutputElement>("#rho-value").textContent = fmt3(state.rho);
    this.el<HTMLInputElement>("#k-input").value = String(state.k);
    this.el<HTMLInputElement>("#merged-toggle").checked = state.mergedLayout;
    this.el<HTMLButtonElement>("#screen-btn").disabled = state.jobId === null;
  }

  private setStatus(text: string): void {
    this.el("#status").textContent = text;
  }

  private showError(message: string, retry: (() => void) | null): void {
    this.retryAction = retry;
    this.el("#error-text").textContent = message;
    this.el("#error-banner").hidden = false;
  }

  private clearError(): void {
    this.retryAction = null;
    this.el("#error-banner").hidden = true;
  }

  async loadJobs(): Promise<void> {
    try {
      const response = await this.api.jobs();
      this.clearError();
      this.el("#pool-info").textContent = `${response.candidates} candidates in pool`;
      renderJobList(this.el("#job-list"), response.jobs, this.store.get().jobId);
    } catch (error) {
      this.showError(`Could not load jobs: ${describe(error)}`, () => void this.loadJobs());
    }
  }

  async selectJob(jobId: string): Promise<void> {
    this.store.set({ jobId, runId: null });
    this.shortlist = null;
    this.rankset = null;
    this.supports = new Map();
    this.syncControls();
    this.renderShortlist();
    this.renderDetail();
    this.el("#report-line").textContent = "";
    try {
      const detail = await this.api.job(jobId);
      this.clearError();
      renderJobList(this.el("#job-list"), await this.jobSummaries(), jobId);
      renderRunList(this.el("#run-list"), detail.runs, null);
    } catch (error) {
      this.showError(`Could not load job: ${describe(error)}`, () => void this.selectJob(jobId));
    }
  }

  private async jobSummaries() {
    const response = await this.api.jobs();
    this.el("#pool-info").textContent = `${response.candidates} candidates in pool`;
    return response.jobs;
  }

  async screen(): Promise<void> {
    const { jobId } = this.store.get();
    if (jobId === null) return;
    const button = this.el<HTMLButtonElement>("#screen-btn");
    button.disabled = true;
    this.setStatus("Screening pool…");
    try {
      const run = await this.api.screen(jobId, this.screenParams);
      this.clearError();
      this.setStatus(run.reused ? `Reused run ${run.run_id}` : `Created run ${run.run_id}`);
      await this.adoptRun(run);
      const detail = await this.api.job(jobId);
      renderRunList(this.el("#run-list"), detail.runs, run.run_id);
    } catch (error) {
      this.setStatus("");
      this.showError(`Screening failed: ${describe(error)}`, () => void this.screen());
    } finally {
      button.disabled = this.store.get().jobId === null;
    }
  }

  async selectRun(runId: string): Promise<void> {
    this.setStatus(`Loading run ${runId}…`);
    try {
      const run = await this.api.run(runId);
      this.clearError();
      this.setStatus("");
      await this.adoptRun(run);
      renderRunList(
        this.el("#run-list"),
        (await this.api.job(run.job_id)).runs,
        runId,
      );
    } catch (error) {
      this.setStatus("");
      this.showError(`Could not load run: ${describe(error)}`, () => void this.selectRun(runId));
    }
  }

  /** Makes a run the active one: report line, rank supports, shortlist. */
  private async adoptRun(run: ScreenResponse): Promise<void> {
    this.store.set({ runId: run.run_id, k: run.parameters.k, rho: run.parameters.rho });
    this.syncControls();
    const report = run.report;
    this.el("#report-line").innerHTML =
      `run <code>${escapeHtml(run.run_id)}</code> · ${run.n} candidates · ` +
      `top-${report.k} agreement jaccard ${fmt3(report.jaccard)}, overlap ${fmt3(report.rbo)} · ` +
      `mean entropy ${fmt3(report.mean_entropy)}`;
    this.rankset = await this.api.rankset(run.run_id);
    this.supports = new Map(this.rankset.candidates.map((c) => [c.candidate_id, c]));
    this.renderDetail();
    await this.refreshShortlist();
  }

  /**
   * Re-queries the shortlist for the current view state. Only one request is
   * in flight at a time; a newer query cancels the older one.
   */
  async refreshShortlist(): Promise<void> {
    const state = this.store.get();
    if (state.runId === null) return;
    this.shortlistAbort?.abort();
    const controller = new AbortController();
    this.shortlistAbort = controller;
    try {
      const shortlist = await this.api.shortlist(
        state.runId,
        { k: state.k, humble: state.humble, rho: state.rho },
        controller.signal,
      );
      if (controller !== this.shortlistAbort) return;
      this.clearError();
      this.shortlist = shortlist;
      this.renderShortlist();
    } catch (error) {
      if (isAbort(error)) return;
      this.showError(`Could not load shortlist: ${describe(error)}`, () => void this.refreshShortlist());
    }
  }

  private renderShortlist(): void {
    const panel = this.el("#matches");
    if (this.shortlist === null) {
      panel.innerHTML = `<p class="empty">No active run.</p>`;
      return;
    }
    renderMatches(panel, this.shortlist, {
      merged: this.store.get().mergedLayout,
      selectedCandidate: this.store.get().selectedCandidate,
      supports: this.supports,
      poolSize: this.rankset?.candidates.length ?? 0,
    });
  }

  selectCandidate(candidateId: string): void {
    this.store.set({ selectedCandidate: candidateId });
    this.renderShortlist();
    this.renderDetail();
  }

  private renderDetail(): void {
    const selected = this.store.get().selectedCandidate;
    const candidate = selected === null ? null : (this.supports.get(selected) ?? null);
    renderRankDetail(this.el("#detail"), candidate, this.rankset?.threshold ?? 0);
  }
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

function isAbort(error: unknown): boolean {
  return error instanceof Error && error.name === "AbortError";
}
