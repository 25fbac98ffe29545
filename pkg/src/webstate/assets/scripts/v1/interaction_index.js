/* Assigns 0-based data-websp-index over the rendered DOM (open shadow roots
 * included at their host position) using the normative interactive predicate.
 * Returns the element count. Deterministic on an unchanged DOM. */
(function () {
  "use strict";
  var count = 0;
  window.__ws.walkComposed(document.documentElement, function (el) {
    if (el.nodeType === 1 && window.__ws.isInteractive(el)) {
      el.setAttribute("data-websp-index", String(count));
      count += 1;
    }
  });
  return count;
})();
