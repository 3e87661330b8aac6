/** Pure form-state logic, kept separate from the DOM for testing. */

import type { SearchRequest } from "./api.js";

export interface QueryFormState {
  oldText: string;
  newText: string;
  k: number;
  maxResults: number;
  exhaustive: boolean;
}

export const DEFAULT_FORM: QueryFormState = {
  oldText: "",
  newText: "",
  k: 5000,
  maxResults: 10,
  exhaustive: false,
};

/** Submission is disabled only when both editors are empty. */
export function canSubmit(state: QueryFormState): boolean {
  return state.oldText.trim() !== "" || state.newText.trim() !== "";
}

export function buildRequest(state: QueryFormState): SearchRequest {
  const request: SearchRequest = {
    // An empty editor means "no code on this side".
    old: state.oldText.trim() === "" ? "_" : state.oldText,
    new: state.newText.trim() === "" ? "_" : state.newText,
    k: state.k,
    max_results: state.maxResults,
  };
  if (state.exhaustive) request.exhaustive = true;
  return request;
}

export const PLACEHOLDER_CATEGORIES = [
  "EXPR",
  "ID",
  "LT",
  "OP",
  "binOP",
  "unOP",
] as const;

export type PlaceholderCategory = (typeof PLACEHOLDER_CATEGORIES)[number];

/**
 * Next unused index for a named placeholder of the given category, looking
 * across both editors so names stay unambiguous query-wide.
 */
export function nextPlaceholderIndex(
  category: PlaceholderCategory,
  oldText: string,
  newText: string,
): number {
  const pattern = new RegExp(`\\b${category}<(\\d+)>`, "g");
  let max = 0;
  for (const text of [oldText, newText]) {
    for (const match of text.matchAll(pattern)) {
      max = Math.max(max, parseInt(match[1], 10));
    }
  }
  return max + 1;
}

export interface EditorMutation {
  text: string;
  cursor: number;
}

/** Insert a snippet at the cursor, returning the new text and cursor. */
export function insertSnippet(
  text: string,
  selectionStart: number,
  selectionEnd: number,
  snippet: string,
): EditorMutation {
  const before = text.slice(0, selectionStart);
  const after = text.slice(selectionEnd);
  return { text: before + snippet + after, cursor: selectionStart + snippet.length };
}

export function snippetFor(
  kind: PlaceholderCategory | "named" | "wildcard" | "empty",
  category: PlaceholderCategory,
  oldText: string,
  newText: string,
): string {
  switch (kind) {
    case "wildcard":
      return "<...>";
    case "empty":
      return "_";
    case "named":
      return `${category}<${nextPlaceholderIndex(category, oldText, newText)}>`;
    default:
      return kind;
  }
}
