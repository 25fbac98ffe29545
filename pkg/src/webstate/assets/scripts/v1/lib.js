/* Shared helpers for injected page scripts. Loaded ahead of the operation
 * scripts by the WebDriver backend. The interactive-element predicate is the
 * normative one and must match the engine and the recorder exactly. */
window.__ws = (function () {
  "use strict";
  var INTERACTIVE_ROLES = ["button", "link", "checkbox", "switch", "radio",
    "menuitem", "tab", "option"];

  function isInteractive(el) {
    if (!el || el.nodeType !== 1) return false;
    var tag = el.tagName.toLowerCase();
    if (tag === "a") return el.hasAttribute("href") && !!el.getAttribute("href");
    if (["button", "input", "select", "textarea", "summary"].indexOf(tag) >= 0)
      return true;
    var tabindex = el.getAttribute("tabindex");
    if (tabindex !== null && !isNaN(parseInt(tabindex, 10))
        && parseInt(tabindex, 10) >= 0) return true;
    var role = (el.getAttribute("role") || "").toLowerCase();
    if (INTERACTIVE_ROLES.indexOf(role) >= 0) return true;
    var ce = el.getAttribute("contenteditable");
    if (ce !== null && (ce === "" || ce.toLowerCase() === "true")) return true;
    return false;
  }

  function isRendered(el) {
    var style = window.getComputedStyle(el);
    return style.display !== "none";
  }

  /* rendered-order traversal descending open shadow roots at the host */
  function walkComposed(root, visit) {
    if (root.nodeType === 1 && !isRendered(root)) return;
    visit(root);
    var scope = root.shadowRoot ? root.shadowRoot : root;
    var child = scope.firstElementChild;
    while (child) {
      walkComposed(child, visit);
      child = child.nextElementSibling;
    }
  }

  function normalize(text) {
    return (text || "").split(/\s+/).filter(Boolean).join(" ");
  }

  function labelText(el) {
    var tag = el.tagName.toLowerCase();
    if (["input", "select", "textarea"].indexOf(tag) >= 0) {
      if (el.id) {
        var root = el.getRootNode ? el.getRootNode() : document;
        var label = root.querySelector('label[for="' + el.id + '"]');
        if (label) return normalize(label.textContent);
      }
      var closest = el.closest ? el.closest("label") : null;
      return closest ? normalize(closest.textContent) : "";
    }
    return normalize(el.textContent);
  }

  function siblingText(el) {
    var node = el.previousSibling;
    while (node) {
      var text = normalize(node.textContent);
      if (text) return text;
      node = node.previousSibling;
    }
    node = el.nextSibling;
    while (node) {
      var text2 = normalize(node.textContent);
      if (text2) return text2;
      node = node.nextSibling;
    }
    return "";
  }

  function cssPath(el) {
    var segments = [];
    var current = el;
    while (current && current.nodeType === 1) {
      var tag = current.tagName.toLowerCase();
      var parent = current.parentElement;
      var seg = tag;
      if (parent) {
        var same = Array.prototype.filter.call(parent.children, function (c) {
          return c.tagName === current.tagName;
        });
        if (same.length > 1)
          seg += ":nth-of-type(" + (same.indexOf(current) + 1) + ")";
      }
      segments.unshift(seg);
      if (!parent) {
        var root = current.getRootNode ? current.getRootNode() : null;
        if (root && root.host)
          return cssPath(root.host) + "::shadow " + segments.join(" > ");
        break;
      }
      current = parent;
    }
    return segments.join(" > ");
  }

  function xPath(el) {
    var root = el.getRootNode ? el.getRootNode() : document;
    if (root && root.host) return "";  // document XPath cannot cross shadow roots
    var steps = [];
    var current = el;
    while (current && current.nodeType === 1) {
      var tag = current.tagName.toLowerCase();
      var index = 1;
      var sib = current.previousElementSibling;
      while (sib) {
        if (sib.tagName === current.tagName) index += 1;
        sib = sib.previousElementSibling;
      }
      steps.unshift(tag + "[" + index + "]");
      current = current.parentElement;
    }
    return "/" + steps.join("/");
  }

  return {
    isInteractive: isInteractive,
    walkComposed: walkComposed,
    normalize: normalize,
    labelText: labelText,
    siblingText: siblingText,
    cssPath: cssPath,
    xPath: xPath,
  };
})();
