import { fmt3, fmtOptional, fmtPercent, fmtProb } from "./format.js";
import type { RanksetCandidate, Shortlist, ShortlistEntry, SupportPair } from "./types.js";

export interface TableOptions {
  merged: boolean;
  selectedCandidate: string | null;
  /** Rank supports by candidate id, used for the inline distribution strips. */
  supports: Map<string, RanksetCandidate>;
  poolSize: number;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Inline strip: one bar per supported rank, height proportional to probability. */
function supportStrip(support: SupportPair[] | undefined): string {
  if (!support || support.length === 0) return `<span class="strip-empty">–</span>`;
  const bars = support
    .map(([rank, prob]) => {
      const title = `rank ${rank}: ${fmtProb(prob)}`;
      return `<span class="strip-bar" title="${title}" style="height:${fmtPercent(prob)}"></span>`;
    })
    .join("");
  return `<span class="strip" role="img" aria-label="rank distribution">${bars}</span>`;
}

function entryRow(entry: ShortlistEntry, section: string, options: TableOptions): string {
  const id = escapeHtml(entry.candidate_id);
  const label = entry.label === null ? id : escapeHtml(entry.label);
  const selected = entry.candidate_id === options.selectedCandidate ? " row-selected" : "";
  const detail = options.supports.get(entry.candidate_id);
  return `
    <tr class="match-row${selected}" data-candidate="${id}" data-section="${section}">
      <td class="col-candidate">
        <button type="button" class="candidate-link" data-candidate="${id}">${label}</button>
        <span class="candidate-id">${id}</span>
      </td>
      <td class="col-num">${fmt3(entry.point_score)}</td>
      <td class="col-num">${fmtOptional(entry.expected_rank, 2)}</td>
      <td class="col-num">${fmtOptional(entry.entropy)}</td>
      <td class="col-num">${fmtOptional(entry.variance)}</td>
      <td class="col-strip">${supportStrip(detail?.support)}</td>
    </tr>`;
}

function tableShell(caption: string, kind: string, rows: string): string {
  return `
    <table class="matches" data-kind="${kind}">
      <caption>${caption}</caption>
      <thead>
        <tr>
          <th scope="col">Candidate</th>
          <th scope="col">Score</th>
          <th scope="col">E[rank]</th>
          <th scope="col">Entropy</th>
          <th scope="col">Variance</th>
          <th scope="col">Rank spread</th>
        </tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>`;
}

/**
 * Renders the shortlist. Humble mode shows the expected-rank table plus a
 * separate high-uncertainty table (or one merged list); plain mode shows a
 * single deterministic top-k table.
 */
export function renderMatches(root: HTMLElement, shortlist: Shortlist, options: TableOptions): void {
  const exploitRows = shortlist.exploit.map((e) => entryRow(e, "exploit", options)).join("");
  const exploreRows = shortlist.explore.map((e) => entryRow(e, "explore", options)).join("");

  if (!shortlist.humble) {
    root.innerHTML = tableShell(
      `Top ${shortlist.k} by score`,
      "deterministic",
      exploitRows,
    );
    return;
  }

  if (options.merged) {
    const marker = shortlist.explore.length
      ? `<tr class="section-break"><td colspan="6">High-uncertainty picks (${shortlist.explore.length})</td></tr>`
      : "";
    root.innerHTML = tableShell(
      `Shortlist of ${shortlist.k} (exploration share ${fmt3(shortlist.rho)})`,
      "merged",
      exploitRows + marker + exploreRows,
    );
    return;
  }

  root.innerHTML =
    tableShell(`Best expected rank (${shortlist.exploit.length})`, "exploit", exploitRows) +
    tableShell(`Highest uncertainty (${shortlist.explore.length})`, "explore", exploreRows);
}
