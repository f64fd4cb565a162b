/** Display formatting; numbers are shown as text so values stay inspectable. */

export function fmt3(value: number): string {
  return value.toFixed(3);
}

export function fmtProb(value: number): string {
  return value.toFixed(3);
}

/** Bar height as a CSS percentage of the chart. */
export function fmtPercent(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

export function fmtRank(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(2);
}

export function fmtOptional(value: number | null, digits = 3): string {
  return value === null ? "–" : value.toFixed(digits);
}
