/** View state and its pure transitions: hover previews, click selects. */

import { GradientLog } from "./types.js";

export interface SegmentRef {
  origin: number;
  distance: number;
}

export interface ViewState {
  selectedBatch: number;
  hoveredBatch: number | null;
  hoveredSegment: SegmentRef | null;
}

export function initialState(): ViewState {
  return { selectedBatch: 0, hoveredBatch: null, hoveredSegment: null };
}

/** The record index areas 2-4 display: hover preview wins, else selection. */
export function displayedRecord(state: ViewState): number {
  return state.hoveredBatch ?? state.selectedBatch;
}

export function hoverBatch(state: ViewState, index: number | null): ViewState {
  if (index === state.hoveredBatch) return state;
  // leaving or switching batches invalidates any segment hover
  return { ...state, hoveredBatch: index, hoveredSegment: null };
}

export function selectBatch(state: ViewState, index: number): ViewState {
  return { ...state, selectedBatch: index };
}

export function hoverSegment(state: ViewState,
                             segment: SegmentRef | null): ViewState {
  return { ...state, hoveredSegment: segment };
}

/** Clamp the state to a loaded log (selection valid, hover in domain). */
export function sanitize(state: ViewState, log: GradientLog): ViewState {
  const count = log.records.length;
  let next = state;
  if (next.selectedBatch < 0 || next.selectedBatch >= count) {
    next = { ...next, selectedBatch: 0 };
  }
  if (next.hoveredBatch !== null &&
      (next.hoveredBatch < 0 || next.hoveredBatch >= count)) {
    next = { ...next, hoveredBatch: null };
  }
  if (next.hoveredSegment !== null) {
    const record = log.records[displayedRecord(next)];
    const { origin, distance } = next.hoveredSegment;
    const valid = record !== undefined &&
      origin >= 0 && origin < record.magnitudes.length &&
      distance >= 0 && distance < record.magnitudes[origin].length;
    if (!valid) next = { ...next, hoveredSegment: null };
  }
  return next;
}
