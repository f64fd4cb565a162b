import { fmtPercent, fmtProb, fmtRank } from "./format.js";
import { escapeHtml } from "./tables.js";
import type { RanksetCandidate } from "./types.js";

/**
 * Rank distribution detail for one candidate: one bar per supported rank,
 * height proportional to probability, exact value readable as text. A
 * degenerate candidate shows a single full-height bar.
 */
export function renderRankDetail(
  root: HTMLElement,
  candidate: RanksetCandidate | null,
  threshold: number,
): void {
  if (candidate === null) {
    root.innerHTML = `<p class="detail-empty">Select a candidate to inspect its rank distribution.</p>`;
    return;
  }

  const bars = candidate.support
    .map(([rank, prob]) => {
      const value = fmtProb(prob);
      return `
        <div class="rank-bar" tabindex="0" data-rank="${rank}" data-prob="${value}"
             aria-label="rank ${rank}, probability ${value}">
          <span class="rank-bar-value">${value}</span>
          <span class="rank-bar-fill" style="height:${fmtPercent(prob)}" title="rank ${rank}: ${value}"></span>
          <span class="rank-bar-rank">${rank}</span>
        </div>`;
    })
    .join("");

  const label = candidate.label === null ? candidate.candidate_id : candidate.label;
  root.innerHTML = `
    <h3 class="detail-title">${escapeHtml(label)}
      <span class="candidate-id">${escapeHtml(candidate.candidate_id)}</span>
    </h3>
    <p class="detail-meta">expected rank ${fmtRank(candidate.expected_rank)}</p>
    <div class="rank-chart" role="img" aria-label="rank probabilities for ${escapeHtml(candidate.candidate_id)}">
      ${bars}
    </div>
    <p class="detail-footnote">Ranks with probability below ${fmtProb(threshold)} are hidden.</p>`;
}
