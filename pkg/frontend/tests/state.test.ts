import { describe, expect, it } from "vitest";

import {
  buildRequest,
  canSubmit,
  DEFAULT_FORM,
  insertSnippet,
  nextPlaceholderIndex,
  PLACEHOLDER_CATEGORIES,
  snippetFor,
} from "../src/state.js";

describe("canSubmit", () => {
  it("is disabled only when both editors are empty", () => {
    expect(canSubmit({ ...DEFAULT_FORM })).toBe(false);
    expect(canSubmit({ ...DEFAULT_FORM, oldText: "  \n " })).toBe(false);
    expect(canSubmit({ ...DEFAULT_FORM, oldText: "x = 1;" })).toBe(true);
    expect(canSubmit({ ...DEFAULT_FORM, newText: "_" })).toBe(true);
  });
});

describe("buildRequest", () => {
  it("maps empty editors to the empty marker", () => {
    const request = buildRequest({ ...DEFAULT_FORM, oldText: "evt.trig();" });
    expect(request.old).toBe("evt.trig();");
    expect(request.new).toBe("_");
    expect(request.k).toBe(5000);
    expect(request.max_results).toBe(10);
    expect(request.exhaustive).toBeUndefined();
  });

  it("includes the exhaustive flag when toggled", () => {
    const request = buildRequest({ ...DEFAULT_FORM, oldText: "x;", exhaustive: true });
    expect(request.exhaustive).toBe(true);
  });
});

describe("nextPlaceholderIndex", () => {
  it("starts at 1 and looks across both editors", () => {
    expect(nextPlaceholderIndex("EXPR", "", "")).toBe(1);
    expect(nextPlaceholderIndex("EXPR", "EXPR<1> + EXPR<4>", "EXPR<2>")).toBe(5);
    expect(nextPlaceholderIndex("ID", "EXPR<9>", "")).toBe(1); // per category
  });

  it("does not confuse binOP with OP", () => {
    expect(nextPlaceholderIndex("OP", "x binOP<3> y", "")).toBe(1);
    expect(nextPlaceholderIndex("binOP", "x binOP<3> y", "")).toBe(4);
  });
});

describe("insertSnippet", () => {
  it("inserts at the cursor and moves it", () => {
    const mutation = insertSnippet("run();", 4, 4, "EXPR");
    expect(mutation.text).toBe("run(EXPR);");
    expect(mutation.cursor).toBe(8);
  });

  it("replaces a selection", () => {
    const mutation = insertSnippet("run(old);", 4, 7, "<...>");
    expect(mutation.text).toBe("run(<...>);");
  });
});

describe("snippetFor", () => {
  it("covers all six categories plus wildcard and empty", () => {
    expect(PLACEHOLDER_CATEGORIES).toEqual(["EXPR", "ID", "LT", "OP", "binOP", "unOP"]);
    for (const category of PLACEHOLDER_CATEGORIES) {
      expect(snippetFor(category, category, "", "")).toBe(category);
    }
    expect(snippetFor("wildcard", "EXPR", "", "")).toBe("<...>");
    expect(snippetFor("empty", "EXPR", "", "")).toBe("_");
    expect(snippetFor("named", "EXPR", "EXPR<2>", "")).toBe("EXPR<3>");
  });
});
