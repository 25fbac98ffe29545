/* Page-wide interactive element detection: geometry, text, and popup
 * membership for Set-of-Marks observations. Marks each element with a
 * transient data-ws-det handle id and returns the element descriptors. */
(function () {
  "use strict";
  var ws = window.__ws;
  var out = [];
  var modals = [];
  ws.walkComposed(document.documentElement, function (el) {
    if (el.nodeType === 1 && el.hasAttribute
        && el.hasAttribute("data-fx-modal")
        && window.getComputedStyle(el).display !== "none") modals.push(el);
  });
  var topModal = modals.length ? modals[modals.length - 1] : null;
  var seq = 0;
  ws.walkComposed(document.documentElement, function (el) {
    if (el.nodeType !== 1 || !ws.isInteractive(el)) return;
    var rect = el.getBoundingClientRect();
    if (rect.width <= 0 || rect.height <= 0) return;
    if (rect.bottom <= 0 || rect.right <= 0
        || rect.top >= window.innerHeight || rect.left >= window.innerWidth)
      return;
    var inPopup = !!(topModal && topModal.contains(el));
    if (topModal && !inPopup && topModal.hasAttribute("data-fx-backdrop"))
      return;
    el.setAttribute("data-ws-det", String(seq));
    out.push({
      det: seq,
      tag: el.tagName.toLowerCase(),
      text: ws.normalize(el.textContent) || ws.labelText(el)
        || el.getAttribute("aria-label") || el.value || "",
      rect: [Math.round(rect.left), Math.round(rect.top),
             Math.round(rect.width), Math.round(rect.height)],
      in_popup: inPopup,
    });
    seq += 1;
  });
  return out;
})();
