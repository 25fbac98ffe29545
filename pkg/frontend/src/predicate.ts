/**
 * Normative interactive-element predicate. Must match the replay engine's
 * resolver byte-for-byte in effect: native interactive tags (a[href], button,
 * input, select, textarea, summary), tabindex >= 0, the interactive ARIA
 * roles, and contenteditable elements.
 */

export const INTERACTIVE_ROLES = new Set([
  "button", "link", "checkbox", "switch", "radio", "menuitem", "tab", "option",
]);

const NATIVE_TAGS = new Set(["button", "input", "select", "textarea", "summary"]);

export function isInteractive(el: Element): boolean {
  const tag = el.tagName.toLowerCase();
  if (tag === "a") return !!el.getAttribute("href");
  if (NATIVE_TAGS.has(tag)) return true;
  const tabindex = el.getAttribute("tabindex");
  if (tabindex !== null) {
    const parsed = parseInt(tabindex, 10);
    if (!Number.isNaN(parsed) && parsed >= 0) return true;
  }
  const role = (el.getAttribute("role") || "").toLowerCase();
  if (INTERACTIVE_ROLES.has(role)) return true;
  const editable = el.getAttribute("contenteditable");
  if (editable !== null && (editable === "" || editable.toLowerCase() === "true")) {
    return true;
  }
  return false;
}

function isRendered(el: Element): boolean {
  const view = el.ownerDocument?.defaultView;
  if (!view) return true;
  return view.getComputedStyle(el).display !== "none";
}

/**
 * Rendered-order traversal that descends open shadow roots at their host
 * position and skips display:none subtrees.
 */
export function walkComposed(root: Element, visit: (el: Element) => void): void {
  if (!isRendered(root)) return;
  visit(root);
  const scope: ParentNode = root.shadowRoot ?? root;
  for (const child of Array.from(scope.children)) {
    walkComposed(child, visit);
  }
}
