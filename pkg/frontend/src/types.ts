/** Gradient-log schema (version 1) as served at /api/log. */

export const SCHEMA_VERSION = 1;

export interface RunMeta {
  hidden_size: number;
  batch_size: number;
  horizon: number;
  record_interval: number;
  vocab: string;
  optimizer: string;
  learning_rate: number;
  init_scale: number;
  seed: number;
  corpus_id: string;
}

export interface BatchRecord {
  batch_index: number;
  char_offset: number;
  true_labels: string;
  predicted_labels: string;
  /** magnitudes[t][d]: origin t's contribution at step j = t - d. */
  magnitudes: number[][];
  max_gradient: number;
  batch_loss: number;
}

export interface GradientLog {
  schema_version: number;
  meta: RunMeta;
  records: BatchRecord[];
}

export class LogError extends Error {}

const META_FIELDS: (keyof RunMeta)[] = [
  "hidden_size", "batch_size", "horizon", "record_interval", "vocab",
  "optimizer", "learning_rate", "init_scale", "seed", "corpus_id",
];
const RECORD_FIELDS: (keyof BatchRecord)[] = [
  "batch_index", "char_offset", "true_labels", "predicted_labels",
  "magnitudes", "max_gradient", "batch_loss",
];

/** Structural validation of a parsed /api/log document. */
export function parseLog(doc: unknown): GradientLog {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new LogError("log must be a JSON object");
  }
  const top = doc as Record<string, unknown>;
  if (top.schema_version !== SCHEMA_VERSION) {
    throw new LogError(
      `unsupported schema_version ${JSON.stringify(top.schema_version)}, ` +
      `expected ${SCHEMA_VERSION}`);
  }
  const meta = top.meta as Record<string, unknown> | undefined;
  if (typeof meta !== "object" || meta === null) {
    throw new LogError("meta: missing or not an object");
  }
  for (const field of META_FIELDS) {
    if (!(field in meta)) throw new LogError(`meta.${field}: missing`);
  }
  if (!Array.isArray(top.records)) {
    throw new LogError("records: missing or not an array");
  }
  top.records.forEach((rec, i) => {
    if (typeof rec !== "object" || rec === null) {
      throw new LogError(`records[${i}]: not an object`);
    }
    for (const field of RECORD_FIELDS) {
      if (!(field in rec)) throw new LogError(`records[${i}].${field}: missing`);
    }
    const magnitudes = (rec as BatchRecord).magnitudes;
    if (!Array.isArray(magnitudes) ||
        magnitudes.some((row) => !Array.isArray(row))) {
      throw new LogError(`records[${i}].magnitudes: not an array of arrays`);
    }
  });
  return doc as GradientLog;
}

/** Stored distances for origin t: 0..min(horizon, t). */
export function distancesFor(record: BatchRecord, t: number): number {
  return record.magnitudes[t].length;
}

/** Magnitude of origin t's contribution at step j, or null if unstored. */
export function magnitudeAt(record: BatchRecord, t: number,
                            j: number): number | null {
  const d = t - j;
  if (t < 0 || t >= record.magnitudes.length) return null;
  if (d < 0 || d >= record.magnitudes[t].length) return null;
  return record.magnitudes[t][d];
}
