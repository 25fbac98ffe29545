/**
 * Locator-bundle extraction at event time: every re-identification handle the
 * replay engine's cascading fallback can consume. The css path is annotated
 * with ::shadow markers at shadow-root boundaries; the xpath is positional
 * and empty for shadow content (document XPath cannot cross those
 * boundaries).
 */

import { ElementState, LocatorBundle } from "./protocol.js";
import { sha256Hex } from "./sha256.js";

export const STABLE_ATTRS = ["data-testid", "id", "name", "aria-label", "href"];
export const ARIA_ATTRS = [
  "role", "aria-checked", "aria-pressed", "aria-selected", "aria-label",
  "aria-expanded",
];
export const WEBSP_INDEX_ATTR = "data-websp-index";
export const OUTER_HTML_EXCERPT_LIMIT = 2048;

export function normalize(text: string | null | undefined): string {
  return (text || "").split(/\s+/).filter(Boolean).join(" ");
}

export function cssPath(el: Element): string {
  const segments: string[] = [];
  let current: Element | null = el;
  while (current) {
    const tag = current.tagName.toLowerCase();
    const parent: Element | null = current.parentElement;
    let segment = tag;
    if (parent) {
      const sameTag = Array.from(parent.children).filter(
        (c) => c.tagName === current!.tagName
      );
      if (sameTag.length > 1) {
        segment += `:nth-of-type(${sameTag.indexOf(current) + 1})`;
      }
    }
    segments.unshift(segment);
    if (!parent) {
      const root = current.getRootNode();
      if (root instanceof ShadowRoot) {
        return `${cssPath(root.host)}::shadow ${segments.join(" > ")}`;
      }
      break;
    }
    current = parent;
  }
  return segments.join(" > ");
}

export function xPath(el: Element): string {
  if (el.getRootNode() instanceof ShadowRoot) return "";
  const steps: string[] = [];
  let current: Element | null = el;
  while (current) {
    let index = 1;
    let sibling = current.previousElementSibling;
    while (sibling) {
      if (sibling.tagName === current.tagName) index += 1;
      sibling = sibling.previousElementSibling;
    }
    steps.unshift(`${current.tagName.toLowerCase()}[${index}]`);
    current = current.parentElement;
  }
  return "/" + steps.join("/");
}

export function labelText(el: Element): string {
  const tag = el.tagName.toLowerCase();
  if (["input", "select", "textarea"].includes(tag)) {
    const id = el.getAttribute("id");
    if (id) {
      const root = el.getRootNode() as ParentNode;
      const label = root.querySelector?.(`label[for="${id}"]`);
      if (label) return normalize(label.textContent);
    }
    const wrapping = el.closest("label");
    return wrapping ? normalize(wrapping.textContent) : "";
  }
  return normalize(el.textContent);
}

export function siblingText(el: Element): string {
  let node: Node | null = el.previousSibling;
  while (node) {
    const text = normalize(node.textContent);
    if (text) return text;
    node = node.previousSibling;
  }
  node = el.nextSibling;
  while (node) {
    const text = normalize(node.textContent);
    if (text) return text;
    node = node.nextSibling;
  }
  return "";
}

export function detectState(el: Element): ElementState | null {
  const ariaSources: Array<[string, ElementState["source"]]> = [
    ["aria-checked", "aria_checked"],
    ["aria-pressed", "aria_pressed"],
    ["aria-selected", "aria_selected"],
  ];
  for (const [attr, source] of ariaSources) {
    const value = el.getAttribute(attr);
    if (value === "true" || value === "false") {
      return { value: value === "true" ? "ON" : "OFF", source };
    }
  }
  if (el instanceof HTMLInputElement && ["checkbox", "radio"].includes(el.type)) {
    return { value: el.checked ? "ON" : "OFF", source: "native_checked" };
  }
  const classes = (el.getAttribute("class") || "").split(/\s+/);
  if (classes.includes("a-switch-active")) {
    return { value: "ON", source: "css_class_heuristic" };
  }
  if (classes.includes("a-disabled")) {
    return { value: "OFF", source: "css_class_heuristic" };
  }
  return null;
}

/**
 * Resolve the true target through composedPath so shadow-DOM interactions
 * keep their inner element rather than retargeting to the host.
 */
export function targetFromComposedPath(event: Event): Element | null {
  const path = event.composedPath ? event.composedPath() : [];
  for (const entry of path) {
    if (entry instanceof Element) return entry;
  }
  return event.target instanceof Element ? event.target : null;
}

/** Walk up the composed tree to the nearest interactive element, if any. */
export function interactiveAncestor(
  el: Element,
  isInteractive: (candidate: Element) => boolean
): Element | null {
  let current: Element | null = el;
  while (current) {
    if (isInteractive(current)) return current;
    const parent: Element | null = current.parentElement;
    if (parent) {
      current = parent;
    } else {
      const root = current.getRootNode();
      current = root instanceof ShadowRoot ? root.host : null;
    }
  }
  return null;
}

export function extractLocatorBundle(el: Element): LocatorBundle {
  const connected = el.isConnected;
  const stable: Record<string, string> = {};
  const aria: Record<string, string> = {};
  if (connected) {
    for (const attr of STABLE_ATTRS) {
      const value = el.getAttribute(attr);
      if (value) stable[attr] = value;
    }
    for (const attr of ARIA_ATTRS) {
      const value = el.getAttribute(attr);
      if (value !== null) aria[attr] = value;
    }
  }
  const outer = connected ? el.outerHTML : "";
  const webspRaw = el.getAttribute(WEBSP_INDEX_ATTR);
  const websp = webspRaw !== null && /^\d+$/.test(webspRaw)
    ? parseInt(webspRaw, 10) : null;
  const parent = el.parentElement;
  return {
    stable_attrs: stable,
    tag_name: el.tagName.toLowerCase(),
    outer_html_digest: sha256Hex(outer),
    outer_html_excerpt: outer.slice(0, OUTER_HTML_EXCERPT_LIMIT),
    // a detached target degrades to tag_name + websp_index only
    css_path: connected ? cssPath(el) : "",
    xpath: connected ? xPath(el) : "",
    label_text: connected ? labelText(el) || null : null,
    sibling_text: connected ? siblingText(el) || null : null,
    parent_text: connected && parent
      ? normalize(parent.textContent).slice(0, 200) || null : null,
    aria_attrs: aria,
    websp_index: websp,
  };
}
