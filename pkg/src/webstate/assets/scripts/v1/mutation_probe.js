/* Installs (once) a composed-tree MutationObserver feeding counters used for
 * interaction-registered signals; returns the current token. */
(function () {
  "use strict";
  if (!window.__wsProbe) {
    var probe = { seq: 0, events: [] };
    var observer = new MutationObserver(function (records) {
      records.forEach(function (record) {
        probe.seq += 1;
        if (record.target && record.target.nodeType === 1
            && record.attributeName !== "data-websp-index"
            && record.attributeName !== "data-ws-det")
          probe.events.push({ seq: probe.seq, target: record.target });
        if (probe.events.length > 2048) probe.events.splice(0, 1024);
      });
    });
    observer.observe(document.documentElement,
      { subtree: true, childList: true, attributes: true,
        characterData: true });
    window.__wsProbe = probe;
  }
  return { seq: window.__wsProbe.seq, url: window.location.href,
           focus: document.activeElement === document.body ? ""
             : (document.activeElement || {}).tagName || "" };
})();
