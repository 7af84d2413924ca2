import { Explorer, loadLog, showError } from "./app.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) return;
  try {
    const log = await loadLog("/api/log");
    new Explorer(root, log);
  } catch (err) {
    showError(root, err instanceof Error ? err.message : String(err));
  }
}

void boot();
