/* Walks the element stack at (arguments[0], arguments[1]) top-down and
 * returns the first scrollable candidate: computed overflow auto/scroll and
 * content larger than the client box; null means the document scroller. */
(function () {
  "use strict";
  var stack = document.elementsFromPoint(arguments[0], arguments[1]) || [];
  for (var i = 0; i < stack.length; i++) {
    var el = stack[i];
    var style = window.getComputedStyle(el);
    var overflowY = style.overflowY || style.overflow;
    if ((overflowY === "auto" || overflowY === "scroll")
        && el.scrollHeight > el.clientHeight) return el;
  }
  return null;
})();
