import * as fs from "node:fs";
import * as path from "node:path";
import { beforeEach, describe, expect, it } from "vitest";

import { InteractionIndexer } from "../src/indexer.js";
import { WEBSP_INDEX_ATTR, normalize } from "../src/locators.js";
import { isInteractive } from "../src/predicate.js";
import {
  fixtureHtml,
  mountPage,
  presetSiteState,
  resetPage,
  runFixtureBehaviors,
} from "./helpers.js";

beforeEach(resetPage);

function markerFor(el: Element): string {
  return (
    el.getAttribute("data-testid") ||
    el.getAttribute("id") ||
    normalize(el.textContent).slice(0, 40)
  );
}

describe("interaction indexer", () => {
  it("assigns document-order indices starting at zero", () => {
    mountPage(`<html><body>
      <button id="a">A</button><p>text</p>
      <button id="b">B</button><button id="c">C</button>
    </body></html>`);
    const indexer = new InteractionIndexer(document);
    expect(indexer.runOnce()).toBe(3);
    expect(["a", "b", "c"].map((id) =>
      document.getElementById(id)!.getAttribute(WEBSP_INDEX_ATTR)
    )).toEqual(["0", "1", "2"]);
  });

  it("re-indexes after insertion: new element takes 1, old 1 moves to 2", async () => {
    mountPage(`<html><body>
      <button id="a">A</button><button id="b">B</button>
    </body></html>`);
    const indexer = new InteractionIndexer(document);
    indexer.observe();
    const inserted = document.createElement("button");
    inserted.id = "mid";
    document.body.insertBefore(inserted, document.getElementById("b"));
    await Promise.resolve(); // microtask-scheduled re-index
    await Promise.resolve();
    expect(document.getElementById("mid")!.getAttribute(WEBSP_INDEX_ATTR)).toBe("1");
    expect(document.getElementById("b")!.getAttribute(WEBSP_INDEX_ATTR)).toBe("2");
    indexer.disconnect();
  });

  it("two consecutive passes produce identical assignments", () => {
    presetSiteState("site-c", {});
    mountPage(fixtureHtml("site-c/index.html"));
    runFixtureBehaviors("site-c");
    const indexer = new InteractionIndexer(document);
    indexer.runOnce();
    const first = indexer.assignment().map((a) => [a.index, markerFor(a.el)]);
    indexer.runOnce();
    const second = indexer.assignment().map((a) => [a.index, markerFor(a.el)]);
    expect(second).toEqual(first);
  });

  it("counts shadow-root elements at their host position", () => {
    presetSiteState("site-a", { auth: true });
    mountPage(fixtureHtml("site-a/settings.html"));
    runFixtureBehaviors("site-a");
    const indexer = new InteractionIndexer(document);
    indexer.runOnce();
    const markers = indexer.assignment().map((a) => markerFor(a.el));
    expect(markers.indexOf("email-toggle")).toBeGreaterThan(
      markers.indexOf("account-menu"));
    expect(markers.indexOf("promo-toggle")).toBe(
      markers.indexOf("email-toggle") + 1);
  });
});

describe("agreement with the engine's normative assignment", () => {
  const expectedDir = path.join(__dirname, "expected");
  const cases = fs.readdirSync(expectedDir).filter((f) => f.endsWith(".json"));

  it("has expected assignments generated", () => {
    expect(cases.length).toBeGreaterThanOrEqual(5);
  });

  for (const filename of cases) {
    it(`matches the engine on ${filename}`, () => {
      const expected = JSON.parse(
        fs.readFileSync(path.join(expectedDir, filename), "utf-8"));
      resetPage();
      if (expected.auth) presetSiteState(expected.site_id, { auth: true });
      mountPage(fixtureHtml(expected.page));
      runFixtureBehaviors(expected.site_id);
      const indexer = new InteractionIndexer(document);
      const count = indexer.runOnce();
      expect(count).toBe(expected.count);
      const got = indexer.assignment().map((entry) => ({
        index: entry.index,
        tag: entry.tag,
        marker: markerFor(entry.el),
      }));
      expect(got).toEqual(expected.assignment);
      for (const entry of indexer.assignment()) {
        expect(isInteractive(entry.el)).toBe(true);
      }
    });
  }
});
