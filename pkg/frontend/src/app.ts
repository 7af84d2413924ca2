/** Wiring: fetch the log, hold the view state, re-render on transitions. */

import { hoverBatch, hoverSegment, initialState, sanitize, selectBatch,
         ViewState } from "./state.js";
import { GradientLog, LogError, parseLog } from "./types.js";
import { renderApp } from "./views.js";

export async function loadLog(url: string,
                              fetchFn: typeof fetch = fetch,
                              ): Promise<GradientLog> {
  let response: Response;
  try {
    response = await fetchFn(url);
  } catch (err) {
    throw new LogError(`fetch failed: ${String(err)}`);
  }
  if (!response.ok) {
    throw new LogError(`fetch failed: HTTP ${response.status}`);
  }
  let doc: unknown;
  try {
    doc = await response.json();
  } catch (err) {
    throw new LogError(`response is not valid JSON: ${String(err)}`);
  }
  return parseLog(doc);
}

export class Explorer {
  state: ViewState;

  constructor(private root: HTMLElement, private log: GradientLog) {
    this.state = sanitize(initialState(), log);
    this.bindEvents();
    this.render();
  }

  setState(next: ViewState): void {
    const sane = sanitize(next, this.log);
    if (sane === this.state) return;
    this.state = sane;
    this.render();
  }

  render(): void {
    this.root.replaceChildren(renderApp(this.log, this.state));
  }

  private bindEvents(): void {
    this.root.addEventListener("mouseover", (event) => {
      const target = event.target as HTMLElement;
      const bar = target.closest<HTMLElement>(".overview .bar");
      if (bar) {
        this.setState(hoverBatch(this.state, Number(bar.dataset.record)));
        return;
      }
      const segment = target.closest<HTMLElement>(".stacked .segment");
      if (segment) {
        this.setState(hoverSegment(this.state, {
          origin: Number(segment.dataset.origin),
          distance: Number(segment.dataset.distance),
        }));
      }
    });
    this.root.addEventListener("mouseout", (event) => {
      const target = event.target as HTMLElement;
      if (target.closest(".overview .bar")) {
        this.setState(hoverBatch(this.state, null));
      } else if (target.closest(".stacked .segment")) {
        this.setState(hoverSegment(this.state, null));
      }
    });
    this.root.addEventListener("click", (event) => {
      const bar = (event.target as HTMLElement)
        .closest<HTMLElement>(".overview .bar");
      if (bar) {
        this.setState(selectBatch(this.state, Number(bar.dataset.record)));
      }
    });
  }
}

export function showError(root: HTMLElement, message: string): void {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.textContent = message;
  root.replaceChildren(banner);
}
