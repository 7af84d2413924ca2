/** Pure DOM builders for the four linked areas. Rendering is a function
 * of (log, state) only; event handling lives in app.ts via delegation on
 * data attributes. */

import { distanceShades } from "./color.js";
import { displayedRecord, ViewState } from "./state.js";
import { BatchRecord, GradientLog } from "./types.js";

export const OVERVIEW_HEIGHT = 160;
export const STACKED_HEIGHT = 220;
export const HORIZON_HEIGHT = 120;

const GLYPHS: Record<string, string> = {
  " ": "␣", "\n": "¶", "\t": "→", "\r": "␍",
};

export function visibleChar(ch: string): string {
  return GLYPHS[ch] ?? ch;
}

function el(tag: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) node.className = className;
  return node;
}

/** Header line for the displayed record: batch number, covered character
 * offsets, and that batch's max gradient. */
export function renderBatchInfo(log: GradientLog, state: ViewState): HTMLElement {
  const info = el("div", "batch-info");
  const record = log.records[displayedRecord(state)];
  if (!record) {
    info.textContent = "no batch";
    return info;
  }
  const last = record.char_offset + record.true_labels.length - 1;
  info.textContent =
    `batch ${record.batch_index} · chars ${record.char_offset}–${last}` +
    ` · max gradient ${record.max_gradient.toPrecision(4)}` +
    ` · loss ${record.batch_loss.toFixed(4)}`;
  return info;
}

/** Area 1: one bar per record, height linear in its max gradient. */
export function renderOverview(log: GradientLog, state: ViewState,
                               height: number = OVERVIEW_HEIGHT): HTMLElement {
  const section = el("section", "overview");
  section.dataset.area = "overview";
  section.style.height = `${height}px`;
  if (log.records.length === 0) {
    const empty = el("div", "empty-state");
    empty.textContent = "no recorded batches in this log";
    section.appendChild(empty);
    return section;
  }
  const globalMax = Math.max(...log.records.map((r) => r.max_gradient)) || 1;
  log.records.forEach((record, i) => {
    const bar = el("div", "bar");
    bar.dataset.record = String(i);
    bar.style.height = `${(height * record.max_gradient) / globalMax}px`;
    if (i === state.selectedBatch) bar.classList.add("selected");
    if (i === state.hoveredBatch) bar.classList.add("hovered");
    bar.title = `batch ${record.batch_index}: max ${record.max_gradient.toPrecision(3)}`;
    section.appendChild(bar);
  });
  return section;
}

/** Area 2: true labels over predictions, colored by correctness. */
export function renderLabels(record: BatchRecord, state: ViewState): HTMLElement {
  const section = el("section", "labels");
  section.dataset.area = "labels";
  const highlit = state.hoveredSegment?.origin ?? null;
  for (let t = 0; t < record.true_labels.length; t++) {
    const pair = el("div", "label-pair");
    pair.dataset.origin = String(t);
    if (t === highlit) pair.classList.add("origin-highlight");
    const truth = el("span", "true-label");
    truth.textContent = visibleChar(record.true_labels[t]);
    const predicted = el("span", "predicted-label");
    predicted.textContent = visibleChar(record.predicted_labels[t]);
    predicted.classList.add(
      record.true_labels[t] === record.predicted_labels[t]
        ? "correct" : "incorrect");
    pair.append(truth, predicted);
    section.appendChild(pair);
  }
  return section;
}

/** Area 3: per-step stacked bars; the bottom (darkest) segment is the
 * gradient born at that step, lighter segments come from origins up to
 * `horizon` steps later. Heights are normalized to the tallest stack of
 * the displayed record. */
export function renderStacked(record: BatchRecord, horizon: number,
                              state: ViewState,
                              height: number = STACKED_HEIGHT): HTMLElement {
  const section = el("section", "stacked");
  section.dataset.area = "stacked";
  section.style.height = `${height}px`;
  const n = record.true_labels.length;

  const stackSum = (j: number): number => {
    let sum = 0;
    for (let d = 0; d <= horizon && j + d < n; d++) {
      const row = record.magnitudes[j + d];
      if (row && d < row.length) sum += row[d];
    }
    return sum;
  };
  let tallest = 0;
  for (let j = 0; j < n; j++) tallest = Math.max(tallest, stackSum(j));
  const scale = tallest > 0 ? height / tallest : 0;

  const shades = distanceShades(horizon);
  const hovered = state.hoveredSegment;
  for (let j = 0; j < n; j++) {
    const column = el("div", "step");
    column.dataset.step = String(j);
    for (let d = 0; d <= horizon && j + d < n; d++) {
      const t = j + d;
      const row = record.magnitudes[t];
      if (!row || d >= row.length) continue;
      const segment = el("div", "segment");
      segment.dataset.origin = String(t);
      segment.dataset.distance = String(d);
      segment.dataset.value = String(row[d]);
      segment.style.height = `${row[d] * scale}px`;
      segment.style.background = shades[d];
      if (hovered) {
        segment.classList.add(
          t === hovered.origin ? "origin-highlight" : "dimmed");
      }
      column.appendChild(segment);
    }
    section.appendChild(column);
  }
  return section;
}

/** Area 4: the hovered origin's magnitudes by step j ascending, rescaled
 * to their own maximum -- the gradient horizon. Empty without a hover. */
export function renderHorizon(record: BatchRecord, state: ViewState,
                              height: number = HORIZON_HEIGHT): HTMLElement {
  const section = el("section", "horizon");
  section.dataset.area = "horizon";
  section.style.height = `${height}px`;
  const hovered = state.hoveredSegment;
  if (!hovered) {
    section.classList.add("empty");
    return section;
  }
  const t = hovered.origin;
  const row = record.magnitudes[t] ?? [];
  const peak = Math.max(...row, 0) || 1;
  for (let d = row.length - 1; d >= 0; d--) {
    const bar = el("div", "hbar");
    bar.dataset.step = String(t - d);
    bar.dataset.value = String(row[d]);
    bar.style.height = `${(height * row[d]) / peak}px`;
    section.appendChild(bar);
  }
  const caption = el("div", "horizon-caption");
  caption.textContent =
    `gradient horizon of origin ${t} ('${visibleChar(record.true_labels[t])}')`;
  section.appendChild(caption);
  return section;
}

/** Compose all four areas plus the header. */
export function renderApp(log: GradientLog, state: ViewState): HTMLElement {
  const root = el("div", "explorer");
  root.appendChild(renderBatchInfo(log, state));
  root.appendChild(renderOverview(log, state));
  const record = log.records[displayedRecord(state)];
  if (record) {
    root.appendChild(renderLabels(record, state));
    root.appendChild(renderStacked(record, log.meta.horizon, state));
    root.appendChild(renderHorizon(record, state));
  }
  return root;
}
