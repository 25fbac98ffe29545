/** Test utilities: mounting fixture pages in jsdom with hydrated declarative
 * shadow roots and the shared data-fx behavior script. */

import * as fs from "node:fs";
import * as path from "node:path";

const DATA_DIR = path.join(__dirname, "..", "..", "src", "webstate",
  "fixtures", "data");

export function fixtureHtml(relPath: string): string {
  return fs.readFileSync(path.join(DATA_DIR, "sites", relPath), "utf-8");
}

export function fixturesJs(): string {
  return fs.readFileSync(path.join(DATA_DIR, "fixtures.js"), "utf-8");
}

/** Replace the document content and hydrate <template shadowrootmode=...>
 * into real shadow roots (jsdom does not do this automatically). */
export function mountPage(html: string): void {
  document.open();
  document.write(html);
  document.close();
  hydrateDeclarativeShadowRoots(document.documentElement);
}

export function hydrateDeclarativeShadowRoots(root: Element): void {
  for (const template of Array.from(
    root.querySelectorAll("template[shadowrootmode]")
  ) as HTMLTemplateElement[]) {
    const host = template.parentElement;
    if (!host) continue;
    const mode = template.getAttribute("shadowrootmode") === "closed"
      ? "closed" : "open";
    const shadow = host.attachShadow({ mode });
    shadow.append(template.content.cloneNode(true));
    template.remove();
    hydrateDeclarativeShadowRoots(shadow as unknown as Element);
  }
}

/** Run the shared fixture behavior script exactly as the fixture server
 * injects it (site id global + indirect eval in the page context). */
export function runFixtureBehaviors(siteId: string): void {
  (window as unknown as Record<string, unknown>).__FX_SITE_ID = siteId;
  (window as unknown as Record<string, unknown>).__FX_PREFIX = "";
  // indirect eval so the script sees the jsdom globals
  (0, eval)(fixturesJs());
}

export function presetSiteState(siteId: string, state: Record<string, unknown>): void {
  localStorage.setItem(`fx-state:${siteId}`, JSON.stringify(state));
}

export function resetPage(): void {
  localStorage.clear();
  document.open();
  document.write("<html><head></head><body></body></html>");
  document.close();
}

/** Trusted-looking gesture: pointerdown + mousedown + click, composed so
 * shadow targets stay visible to listeners above the root. */
export function userClick(el: Element): void {
  for (const type of ["pointerdown", "mousedown", "click"]) {
    el.dispatchEvent(new MouseEvent(type, { bubbles: true, composed: true }));
  }
}

export function typeInto(el: HTMLInputElement, value: string): void {
  el.value = value;
  el.dispatchEvent(new InputEvent("input", { bubbles: true, composed: true }));
}

export const TINY_PNG_DATA_URL =
  "data:image/png;base64,iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJ" +
  "AAAADUlEQVR42mP8z8BQDwAEhQGAhKmMIQAAAABJRU5ErkJggg==";
