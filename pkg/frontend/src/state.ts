/** UI view state; the store clamps values so invalid states are unrepresentable. */

export interface ViewState {
  jobId: string | null;
  runId: string | null;
  humble: boolean;
  rho: number;
  k: number;
  mergedLayout: boolean;
  selectedCandidate: string | null;
}

export const INITIAL_STATE: ViewState = {
  jobId: null,
  runId: null,
  humble: true,
  rho: 0.2,
  k: 50,
  mergedLayout: false,
  selectedCandidate: null,
};

export type Listener = (state: ViewState) => void;

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

function sanitize(state: ViewState): ViewState {
  const rho = Number.isFinite(state.rho) ? clamp(state.rho, 0, 1) : INITIAL_STATE.rho;
  const k = Number.isFinite(state.k) ? Math.max(1, Math.round(state.k)) : INITIAL_STATE.k;
  return { ...state, rho, k };
}

export class Store {
  private state: ViewState;
  private readonly listeners = new Set<Listener>();

  constructor(initial: ViewState = INITIAL_STATE) {
    this.state = sanitize(initial);
  }

  get(): ViewState {
    return this.state;
  }

  set(patch: Partial<ViewState>): ViewState {
    const next = sanitize({ ...this.state, ...patch });
    // Switching run or job invalidates the candidate selection.
    if (
      (patch.runId !== undefined && patch.runId !== this.state.runId) ||
      (patch.jobId !== undefined && patch.jobId !== this.state.jobId)
    ) {
      next.selectedCandidate = patch.selectedCandidate ?? null;
    }
    this.state = next;
    for (const listener of this.listeners) listener(next);
    return next;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }
}

/** The exploration slider only has an effect while humble mode is on. */
export function rhoEnabled(state: ViewState): boolean {
  return state.humble;
}
