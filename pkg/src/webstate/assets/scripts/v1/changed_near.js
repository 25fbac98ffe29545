/* arguments: element, sinceSeq. True when a recorded mutation since sinceSeq
 * touched the element, its composed subtree, or one of its shadow hosts. */
(function () {
  "use strict";
  var el = arguments[0];
  var since = arguments[1];
  var probe = window.__wsProbe;
  if (!probe) return false;
  function hosts(node) {
    var out = [];
    var root = node.getRootNode ? node.getRootNode() : null;
    while (root && root.host) {
      out.push(root.host);
      root = root.host.getRootNode ? root.host.getRootNode() : null;
    }
    return out;
  }
  var hostChain = hosts(el);
  for (var i = 0; i < probe.events.length; i++) {
    var entry = probe.events[i];
    if (entry.seq <= since) continue;
    var target = entry.target;
    if (!target) continue;
    if (target === el || el.contains(target)
        || hostChain.indexOf(target) >= 0) return true;
  }
  return false;
})();
