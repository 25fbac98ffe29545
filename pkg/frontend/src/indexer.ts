/**
 * Deterministic interaction index: after every observed DOM mutation batch,
 * all interactive elements get data-websp-index assigned in rendered-DOM
 * order starting at 0. Identical algorithm to the replay engine's
 * build_interaction_index — that module owns the normative definition.
 */

import { WEBSP_INDEX_ATTR } from "./locators.js";
import { isInteractive, walkComposed } from "./predicate.js";

export class InteractionIndexer {
  private observer: MutationObserver | null = null;
  private scheduled = false;

  constructor(private readonly doc: Document) {}

  /** Single full re-index pass; returns the count of indexed elements. */
  runOnce(): number {
    let count = 0;
    const root = this.doc.documentElement;
    if (!root) return 0;
    walkComposed(root, (el) => {
      if (isInteractive(el)) {
        el.setAttribute(WEBSP_INDEX_ATTR, String(count));
        count += 1;
      }
    });
    return count;
  }

  /** Assignment snapshot in index order, for tests and audits. */
  assignment(): Array<{ index: number; tag: string; el: Element }> {
    const out: Array<{ index: number; tag: string; el: Element }> = [];
    const root = this.doc.documentElement;
    if (!root) return out;
    walkComposed(root, (el) => {
      const raw = el.getAttribute(WEBSP_INDEX_ATTR);
      if (raw !== null) {
        out.push({ index: parseInt(raw, 10), tag: el.tagName.toLowerCase(), el });
      }
    });
    out.sort((a, b) => a.index - b.index);
    return out;
  }

  /** Re-index on every mutation batch (own attribute writes excluded). */
  observe(): void {
    this.runOnce();
    this.observer = new MutationObserver((records) => {
      const relevant = records.some(
        (record) =>
          record.type !== "attributes" ||
          record.attributeName !== WEBSP_INDEX_ATTR
      );
      if (relevant) this.schedule();
    });
    this.observer.observe(this.doc.documentElement, {
      subtree: true,
      childList: true,
      attributes: true,
      characterData: true,
    });
  }

  disconnect(): void {
    this.observer?.disconnect();
    this.observer = null;
  }

  private schedule(): void {
    if (this.scheduled) return;
    this.scheduled = true;
    queueMicrotask(() => {
      this.scheduled = false;
      this.runOnce();
    });
  }
}
