/** The served-log contract: a log serialized by the training engine
 * (test/real_log.json, 4 records at horizon 5) must parse and render. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { initialState } from "../src/state.js";
import { parseLog } from "../src/types.js";
import { renderApp } from "../src/views.js";

const here = dirname(fileURLToPath(import.meta.url));
const doc = JSON.parse(readFileSync(join(here, "real_log.json"), "utf-8"));

describe("engine-serialized log", () => {
  it("passes schema validation", () => {
    const log = parseLog(doc);
    expect(log.schema_version).toBe(1);
    expect(log.records).toHaveLength(4);
    expect(log.meta.horizon).toBe(5);
  });

  it("has ragged origin-major magnitudes", () => {
    const log = parseLog(doc);
    const record = log.records[0];
    record.magnitudes.forEach((row, t) => {
      expect(row).toHaveLength(Math.min(log.meta.horizon, t) + 1);
    });
  });

  it("renders all areas with the right cardinalities", () => {
    const log = parseLog(doc);
    const root = renderApp(log, initialState());
    expect(root.querySelectorAll(".overview .bar")).toHaveLength(4);
    expect(root.querySelectorAll(".label-pair"))
      .toHaveLength(log.meta.batch_size);
    const entries = log.records[0].magnitudes
      .reduce((sum, row) => sum + row.length, 0);
    expect(root.querySelectorAll(".stacked .segment")).toHaveLength(entries);
  });
});
