import { BatchRecord, GradientLog } from "../src/types.js";

/** Ragged magnitude table for n origins: entry [t][d] for d <= min(k, t). */
function magnitudes(n: number, k: number,
                    value: (t: number, d: number) => number): number[][] {
  const rows: number[][] = [];
  for (let t = 0; t < n; t++) {
    const row: number[] = [];
    for (let d = 0; d <= Math.min(k, t); d++) row.push(value(t, d));
    rows.push(row);
  }
  return rows;
}

export function record(batchIndex: number, n: number, k: number,
                       scale: number,
                       predicted?: string): BatchRecord {
  const mags = magnitudes(n, k, (t, d) => scale * (t + 1) * Math.pow(0.5, d));
  return {
    batch_index: batchIndex,
    char_offset: batchIndex * n,
    true_labels: "ab\n\tc".repeat(Math.ceil(n / 5)).slice(0, n),
    predicted_labels: (predicted ?? "ax\n\tc".repeat(Math.ceil(n / 5))).slice(0, n),
    magnitudes: mags,
    max_gradient: Math.max(...mags.flat()),
    batch_loss: 2.5,
  };
}

/** Four records with hand-computable magnitudes: per-record max gradients
 * are scale * n with scales 1, 4, 2, 0.5 and n = 5, k = 2. */
export function syntheticLog(): GradientLog {
  const n = 5;
  const k = 2;
  return {
    schema_version: 1,
    meta: {
      hidden_size: 4,
      batch_size: n,
      horizon: k,
      record_interval: 10,
      vocab: "\t\nabcx",
      optimizer: "adagrad",
      learning_rate: 0.1,
      init_scale: 0.01,
      seed: 0,
      corpus_id: "test",
    },
    records: [
      record(0, n, k, 1.0),
      record(10, n, k, 4.0),
      record(20, n, k, 2.0),
      record(30, n, k, 0.5),
    ],
  };
}

export function totalMagnitudeEntries(recordIndex: number,
                                      log: GradientLog): number {
  return log.records[recordIndex].magnitudes
    .reduce((sum, row) => sum + row.length, 0);
}
