import { beforeEach, describe, expect, it } from "vitest";
import { renderMatches, type TableOptions } from "../src/tables.js";
import { makeEntry, makeRankset, makeShortlist } from "./helpers.js";

function options(overrides: Partial<TableOptions> = {}): TableOptions {
  const rankset = makeRankset();
  return {
    merged: false,
    selectedCandidate: null,
    supports: new Map(rankset.candidates.map((c) => [c.candidate_id, c])),
    poolSize: rankset.candidates.length,
    ...overrides,
  };
}

describe("shortlist tables", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = `<div id="root"></div>`;
    root = document.getElementById("root") as HTMLElement;
  });

  it("renders a single deterministic table when humble mode is off", () => {
    const shortlist = makeShortlist({
      humble: false,
      rho: 0,
      exploit: [
        makeEntry("c1", { expected_rank: null, entropy: null, variance: null }),
        makeEntry("c2", { expected_rank: null, entropy: null, variance: null }),
        makeEntry("c3", { expected_rank: null, entropy: null, variance: null }),
      ],
      explore: [],
    });
    renderMatches(root, shortlist, options());

    const tables = root.querySelectorAll("table.matches");
    expect(tables).toHaveLength(1);
    expect(tables[0].dataset.kind).toBe("deterministic");
    const ids = [...root.querySelectorAll("tbody tr")].map((tr) => tr.getAttribute("data-candidate"));
    expect(ids).toEqual(["c1", "c2", "c3"]);
  });

  it("shows dashes for the null uncertainty fields of a plain shortlist", () => {
    const shortlist = makeShortlist({
      humble: false,
      exploit: [makeEntry("c1", { expected_rank: null, entropy: null, variance: null })],
      explore: [],
    });
    renderMatches(root, shortlist, options());
    const cells = [...root.querySelectorAll("td.col-num")].map((td) => td.textContent?.trim());
    expect(cells.slice(1)).toEqual(["–", "–", "–"]);
  });

  it("renders exploit and explore tables in humble mode", () => {
    renderMatches(root, makeShortlist(), options());

    const tables = [...root.querySelectorAll("table.matches")];
    expect(tables.map((t) => t.dataset.kind)).toEqual(["exploit", "explore"]);
    const exploitIds = [...tables[0].querySelectorAll("tbody tr")].map((tr) => tr.getAttribute("data-candidate"));
    const exploreIds = [...tables[1].querySelectorAll("tbody tr")].map((tr) => tr.getAttribute("data-candidate"));
    expect(exploitIds).toEqual(["c1", "c2"]);
    expect(exploreIds).toEqual(["c5", "c6"]);
  });

  it("renders one list with a section marker when merged", () => {
    renderMatches(root, makeShortlist(), options({ merged: true }));

    const tables = root.querySelectorAll("table.matches");
    expect(tables).toHaveLength(1);
    expect(tables[0].dataset.kind).toBe("merged");
    const rows = [...tables[0].querySelectorAll("tbody tr")];
    expect(rows).toHaveLength(5);
    expect(rows[2].className).toBe("section-break");
    expect(rows[2].textContent).toContain("High-uncertainty picks (2)");
  });

  it("draws a probability strip per row from the rank support", () => {
    renderMatches(root, makeShortlist(), options());
    const firstRow = root.querySelector(`tr[data-candidate="c1"]`) as HTMLElement;
    const bars = firstRow.querySelectorAll(".strip-bar");
    expect(bars).toHaveLength(1);
    expect(bars[0].getAttribute("title")).toBe("rank 1: 1.000");
    expect((bars[0] as HTMLElement).style.height).toBe("100.0%");
  });

  it("marks the selected candidate's row", () => {
    renderMatches(root, makeShortlist(), options({ selectedCandidate: "c2" }));
    const row = root.querySelector(`tr[data-candidate="c2"]`) as HTMLElement;
    expect(row.classList.contains("row-selected")).toBe(true);
  });

  it("escapes markup in candidate labels", () => {
    const shortlist = makeShortlist({
      exploit: [makeEntry("c1", { label: "<b>sneaky</b>" })],
      explore: [],
    });
    renderMatches(root, shortlist, options());
    expect(root.querySelector("b")).toBeNull();
    expect(root.querySelector(".candidate-link")?.textContent).toBe("<b>sneaky</b>");
  });

  it("keeps candidates selectable by keyboard via real buttons", () => {
    renderMatches(root, makeShortlist(), options());
    const link = root.querySelector(".candidate-link");
    expect(link?.tagName).toBe("BUTTON");
    expect(link?.getAttribute("data-candidate")).toBe("c1");
  });
});
