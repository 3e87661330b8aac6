/** DOM rendering of search results and error panels.
 *
 * Everything shown comes verbatim from the service payload; rendering does
 * no filtering or re-ranking of its own.
 */

import type { ApiError, SearchResponse, SearchResultItem } from "./api.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderResults(container: HTMLElement, payload: SearchResponse): void {
  container.replaceChildren();
  const stats = el(
    "p",
    "stats-line",
    `${payload.stats.matched} result${payload.stats.matched === 1 ? "" : "s"} ` +
      `(retrieved ${payload.stats.retrieved} candidates in ${payload.stats.elapsed_ms} ms)`,
  );
  container.append(stats);
  if (payload.results.length === 0) {
    container.append(el("p", "no-results", "0 results"));
    return;
  }
  const list = el("div", "result-list");
  for (const result of payload.results) {
    list.append(renderCard(result));
  }
  container.append(list);
}

function renderCard(result: SearchResultItem): HTMLElement {
  const card = el("article", "result-card");

  const head = el("header", "result-head");
  head.append(el("span", "result-rank", `#${result.rank}`));
  head.append(el("span", "result-id", `change ${result.id}`));
  if (result.distance !== null) {
    head.append(el("span", "result-distance", `d = ${result.distance.toFixed(2)}`));
  }
  const copy = el("button", "copy-json", "copy as JSON");
  copy.type = "button";
  copy.addEventListener("click", () => {
    void navigator.clipboard?.writeText(JSON.stringify(result, null, 2));
  });
  head.append(copy);
  card.append(head);

  const panes = el("div", "result-panes");
  panes.append(renderPane(result.old, "old-pane", "-"));
  panes.append(renderPane(result.new, "new-pane", "+"));
  card.append(panes);

  const bindings = Object.entries(result.bindings);
  if (bindings.length > 0) {
    const table = el("table", "bindings-table");
    const body = el("tbody");
    for (const [name, text] of bindings) {
      const row = el("tr");
      row.append(el("td", "binding-name", name));
      row.append(el("td", "binding-value", text));
      body.append(row);
    }
    table.append(body);
    card.append(table);
  }
  return card;
}

function renderPane(lines: string[], className: string, sign: "-" | "+"): HTMLElement {
  const pane = el("pre", `snippet-pane ${className}`);
  if (lines.length === 0) {
    pane.append(el("span", "absent-side", "(no code on this side)"));
    return pane;
  }
  for (const line of lines) {
    const span = el("span", sign === "-" ? "line-del" : "line-ins", `${sign} ${line}\n`);
    pane.append(span);
  }
  return pane;
}

export function renderParseError(container: HTMLElement, error: ApiError): void {
  container.replaceChildren();
  const panel = el("div", "error-panel");
  panel.append(el("strong", "error-title", "Query does not parse"));
  if (error.side !== undefined && error.line !== undefined) {
    panel.append(
      el(
        "p",
        "error-location",
        `${error.side} side, line ${error.line}, column ${error.column}`,
      ),
    );
  }
  panel.append(el("p", "error-message", error.message));
  container.append(panel);
}

export function renderNetworkError(container: HTMLElement, message: string): void {
  container.replaceChildren();
  const banner = el("div", "network-banner", `Service unreachable: ${message}`);
  container.append(banner);
}
