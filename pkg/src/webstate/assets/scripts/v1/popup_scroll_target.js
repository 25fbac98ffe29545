/* Scrollable node inside the topmost open modal; the modal itself when no
 * descendant scrolls; null when no modal is open. */
(function () {
  "use strict";
  var ws = window.__ws;
  var modals = [];
  ws.walkComposed(document.documentElement, function (el) {
    if (el.nodeType === 1 && el.hasAttribute
        && el.hasAttribute("data-fx-modal")
        && window.getComputedStyle(el).display !== "none") modals.push(el);
  });
  if (!modals.length) {
    /* generic fallback: any fixed-position overlay with high z-index */
    var all = document.querySelectorAll("*");
    for (var i = 0; i < all.length; i++) {
      var style = window.getComputedStyle(all[i]);
      if (style.position === "fixed" && parseInt(style.zIndex || "0", 10) > 10
          && all[i].getBoundingClientRect().height > 100)
        modals.push(all[i]);
    }
  }
  if (!modals.length) return null;
  var modal = modals[modals.length - 1];
  var hit = null;
  ws.walkComposed(modal, function (el) {
    if (hit || el.nodeType !== 1) return;
    var style = window.getComputedStyle(el);
    var overflowY = style.overflowY || style.overflow;
    if ((overflowY === "auto" || overflowY === "scroll")
        && el.scrollHeight > el.clientHeight) hit = el;
  });
  return hit || modal;
})();
