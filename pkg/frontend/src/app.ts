/** Application wiring: form, toolbar, and one-in-flight search. */

import { getHealth, postSearch, ServiceError } from "./api.js";
import {
  canSubmit,
  insertSnippet,
  PLACEHOLDER_CATEGORIES,
  snippetFor,
  type PlaceholderCategory,
  type QueryFormState,
} from "./state.js";
import { renderNetworkError, renderParseError, renderResults } from "./render.js";

export interface AppHandles {
  root: HTMLElement;
  /** Submit the current form; resolves when rendering is done. */
  submit: () => Promise<void>;
  readState: () => QueryFormState;
}

export function initApp(root: HTMLElement, baseUrl: string): AppHandles {
  root.innerHTML = `
    <header class="topbar">
      <h1>change search</h1>
      <span id="corpus-info" class="corpus-info"></span>
    </header>
    <form id="query-form">
      <div class="editors">
        <div class="editor-box">
          <label for="old-editor">old code</label>
          <textarea id="old-editor" rows="4" spellcheck="false"></textarea>
        </div>
        <div class="editor-box">
          <label for="new-editor">new code</label>
          <textarea id="new-editor" rows="4" spellcheck="false"></textarea>
        </div>
      </div>
      <div id="toolbar" class="toolbar"></div>
      <div class="controls">
        <label>k <input id="k-input" type="number" min="1" value="5000"></label>
        <label>max results
          <input id="max-results-input" type="number" min="1" value="10"></label>
        <label><input id="exhaustive-toggle" type="checkbox"> exhaustive</label>
        <button id="submit-button" type="submit" disabled>search</button>
      </div>
    </form>
    <div id="results"></div>
  `;

  const oldEditor = root.querySelector<HTMLTextAreaElement>("#old-editor")!;
  const newEditor = root.querySelector<HTMLTextAreaElement>("#new-editor")!;
  const kInput = root.querySelector<HTMLInputElement>("#k-input")!;
  const maxResultsInput = root.querySelector<HTMLInputElement>("#max-results-input")!;
  const exhaustiveToggle = root.querySelector<HTMLInputElement>("#exhaustive-toggle")!;
  const submitButton = root.querySelector<HTMLButtonElement>("#submit-button")!;
  const results = root.querySelector<HTMLDivElement>("#results")!;
  const form = root.querySelector<HTMLFormElement>("#query-form")!;

  let focusedEditor: HTMLTextAreaElement = oldEditor;
  for (const editor of [oldEditor, newEditor]) {
    editor.addEventListener("focus", () => {
      focusedEditor = editor;
    });
    editor.addEventListener("input", refreshSubmitState);
  }

  buildToolbar();
  void showHealth();

  function readState(): QueryFormState {
    return {
      oldText: oldEditor.value,
      newText: newEditor.value,
      k: parseInt(kInput.value, 10) || 5000,
      maxResults: parseInt(maxResultsInput.value, 10) || 10,
      exhaustive: exhaustiveToggle.checked,
    };
  }

  function refreshSubmitState(): void {
    submitButton.disabled = !canSubmit(readState());
  }

  function buildToolbar(): void {
    const toolbar = root.querySelector<HTMLDivElement>("#toolbar")!;
    for (const category of PLACEHOLDER_CATEGORIES) {
      toolbar.append(toolbarButton(category, category));
      toolbar.append(toolbarButton(`${category}<n>`, "named", category));
    }
    toolbar.append(toolbarButton("<...>", "wildcard"));
    toolbar.append(toolbarButton("_", "empty"));
  }

  function toolbarButton(
    label: string,
    kind: PlaceholderCategory | "named" | "wildcard" | "empty",
    category: PlaceholderCategory = "EXPR",
  ): HTMLButtonElement {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "toolbar-button";
    button.dataset.kind = kind === "named" ? `named-${category}` : kind;
    button.textContent = label;
    button.addEventListener("click", () => {
      const snippet = snippetFor(kind, category, oldEditor.value, newEditor.value);
      const mutation = insertSnippet(
        focusedEditor.value,
        focusedEditor.selectionStart ?? focusedEditor.value.length,
        focusedEditor.selectionEnd ?? focusedEditor.value.length,
        snippet,
      );
      focusedEditor.value = mutation.text;
      focusedEditor.selectionStart = focusedEditor.selectionEnd = mutation.cursor;
      focusedEditor.focus();
      refreshSubmitState();
    });
    return button;
  }

  async function showHealth(): Promise<void> {
    const info = root.querySelector<HTMLSpanElement>("#corpus-info")!;
    try {
      const health = await getHealth(baseUrl);
      info.textContent = `${health.corpus} changes indexed`;
    } catch {
      info.textContent = "service unreachable";
    }
  }

  let inFlight: AbortController | null = null;

  async function submit(): Promise<void> {
    const state = readState();
    if (!canSubmit(state)) return;
    inFlight?.abort(); // one search at a time; resubmission cancels
    const controller = new AbortController();
    inFlight = controller;
    results.replaceChildren(
      Object.assign(document.createElement("p"), {
        className: "searching",
        textContent: "searching…",
      }),
    );
    try {
      const payload = await postSearch(
        baseUrl,
        {
          old: state.oldText.trim() === "" ? "_" : state.oldText,
          new: state.newText.trim() === "" ? "_" : state.newText,
          k: state.k,
          max_results: state.maxResults,
          ...(state.exhaustive ? { exhaustive: true } : {}),
        },
        controller.signal,
      );
      if (inFlight === controller) renderResults(results, payload);
    } catch (err) {
      if (controller.signal.aborted) return;
      if (err instanceof ServiceError && err.error.type === "QueryParseError") {
        renderParseError(results, err.error);
      } else if (err instanceof ServiceError) {
        renderNetworkError(results, err.error.message);
      } else {
        renderNetworkError(results, err instanceof Error ? err.message : String(err));
      }
    } finally {
      if (inFlight === controller) inFlight = null;
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit();
  });

  return { root, submit, readState };
}
