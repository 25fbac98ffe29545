"use strict";
(() => {
  // src/sha256.ts
  var K = new Uint32Array([
    1116352408,
    1899447441,
    3049323471,
    3921009573,
    961987163,
    1508970993,
    2453635748,
    2870763221,
    3624381080,
    310598401,
    607225278,
    1426881987,
    1925078388,
    2162078206,
    2614888103,
    3248222580,
    3835390401,
    4022224774,
    264347078,
    604807628,
    770255983,
    1249150122,
    1555081692,
    1996064986,
    2554220882,
    2821834349,
    2952996808,
    3210313671,
    3336571891,
    3584528711,
    113926993,
    338241895,
    666307205,
    773529912,
    1294757372,
    1396182291,
    1695183700,
    1986661051,
    2177026350,
    2456956037,
    2730485921,
    2820302411,
    3259730800,
    3345764771,
    3516065817,
    3600352804,
    4094571909,
    275423344,
    430227734,
    506948616,
    659060556,
    883997877,
    958139571,
    1322822218,
    1537002063,
    1747873779,
    1955562222,
    2024104815,
    2227730452,
    2361852424,
    2428436474,
    2756734187,
    3204031479,
    3329325298
  ]);
  function rotr(x, n) {
    return x >>> n | x << 32 - n;
  }
  function sha256Hex(input) {
    const bytes = new TextEncoder().encode(input);
    const bitLength = bytes.length * 8;
    const padded = new Uint8Array((bytes.length + 8 >> 6) + 1 << 6);
    padded.set(bytes);
    padded[bytes.length] = 128;
    const view = new DataView(padded.buffer);
    view.setUint32(padded.length - 4, bitLength >>> 0);
    view.setUint32(padded.length - 8, Math.floor(bitLength / 4294967296));
    const h = new Uint32Array([
      1779033703,
      3144134277,
      1013904242,
      2773480762,
      1359893119,
      2600822924,
      528734635,
      1541459225
    ]);
    const w = new Uint32Array(64);
    for (let offset = 0; offset < padded.length; offset += 64) {
      for (let i = 0; i < 16; i++) w[i] = view.getUint32(offset + i * 4);
      for (let i = 16; i < 64; i++) {
        const s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ w[i - 15] >>> 3;
        const s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ w[i - 2] >>> 10;
        w[i] = w[i - 16] + s0 + w[i - 7] + s1 >>> 0;
      }
      let [a, b, c, d, e, f, g, hh] = h;
      for (let i = 0; i < 64; i++) {
        const s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
        const ch = e & f ^ ~e & g;
        const t1 = hh + s1 + ch + K[i] + w[i] >>> 0;
        const s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
        const maj = a & b ^ a & c ^ b & c;
        const t2 = s0 + maj >>> 0;
        hh = g;
        g = f;
        f = e;
        e = d + t1 >>> 0;
        d = c;
        c = b;
        b = a;
        a = t1 + t2 >>> 0;
      }
      h[0] = h[0] + a >>> 0;
      h[1] = h[1] + b >>> 0;
      h[2] = h[2] + c >>> 0;
      h[3] = h[3] + d >>> 0;
      h[4] = h[4] + e >>> 0;
      h[5] = h[5] + f >>> 0;
      h[6] = h[6] + g >>> 0;
      h[7] = h[7] + hh >>> 0;
    }
    return Array.from(h, (x) => x.toString(16).padStart(8, "0")).join("");
  }

  // src/locators.ts
  var STABLE_ATTRS = ["data-testid", "id", "name", "aria-label", "href"];
  var ARIA_ATTRS = [
    "role",
    "aria-checked",
    "aria-pressed",
    "aria-selected",
    "aria-label",
    "aria-expanded"
  ];
  var WEBSP_INDEX_ATTR = "data-websp-index";
  var OUTER_HTML_EXCERPT_LIMIT = 2048;
  function normalize(text) {
    return (text || "").split(/\s+/).filter(Boolean).join(" ");
  }
  function cssPath(el) {
    const segments = [];
    let current = el;
    while (current) {
      const tag = current.tagName.toLowerCase();
      const parent = current.parentElement;
      let segment = tag;
      if (parent) {
        const sameTag = Array.from(parent.children).filter(
          (c) => c.tagName === current.tagName
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
  function xPath(el) {
    if (el.getRootNode() instanceof ShadowRoot) return "";
    const steps = [];
    let current = el;
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
  function labelText(el) {
    const tag = el.tagName.toLowerCase();
    if (["input", "select", "textarea"].includes(tag)) {
      const id = el.getAttribute("id");
      if (id) {
        const root = el.getRootNode();
        const label = root.querySelector?.(`label[for="${id}"]`);
        if (label) return normalize(label.textContent);
      }
      const wrapping = el.closest("label");
      return wrapping ? normalize(wrapping.textContent) : "";
    }
    return normalize(el.textContent);
  }
  function siblingText(el) {
    let node = el.previousSibling;
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
  function detectState(el) {
    const ariaSources = [
      ["aria-checked", "aria_checked"],
      ["aria-pressed", "aria_pressed"],
      ["aria-selected", "aria_selected"]
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
  function targetFromComposedPath(event) {
    const path = event.composedPath ? event.composedPath() : [];
    for (const entry of path) {
      if (entry instanceof Element) return entry;
    }
    return event.target instanceof Element ? event.target : null;
  }
  function interactiveAncestor(el, isInteractive2) {
    let current = el;
    while (current) {
      if (isInteractive2(current)) return current;
      const parent = current.parentElement;
      if (parent) {
        current = parent;
      } else {
        const root = current.getRootNode();
        current = root instanceof ShadowRoot ? root.host : null;
      }
    }
    return null;
  }
  function extractLocatorBundle(el) {
    const connected = el.isConnected;
    const stable = {};
    const aria = {};
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
    const websp = webspRaw !== null && /^\d+$/.test(webspRaw) ? parseInt(webspRaw, 10) : null;
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
      parent_text: connected && parent ? normalize(parent.textContent).slice(0, 200) || null : null,
      aria_attrs: aria,
      websp_index: websp
    };
  }

  // src/predicate.ts
  var INTERACTIVE_ROLES = /* @__PURE__ */ new Set([
    "button",
    "link",
    "checkbox",
    "switch",
    "radio",
    "menuitem",
    "tab",
    "option"
  ]);
  var NATIVE_TAGS = /* @__PURE__ */ new Set(["button", "input", "select", "textarea", "summary"]);
  function isInteractive(el) {
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
  function isRendered(el) {
    const view = el.ownerDocument?.defaultView;
    if (!view) return true;
    return view.getComputedStyle(el).display !== "none";
  }
  function walkComposed(root, visit) {
    if (!isRendered(root)) return;
    visit(root);
    const scope = root.shadowRoot ?? root;
    for (const child of Array.from(scope.children)) {
      walkComposed(child, visit);
    }
  }

  // src/capture.ts
  var GESTURE_DEDUP_MS = 50;
  var INPUT_DEBOUNCE_MS = 300;
  var GESTURE_EVENTS = ["click", "mousedown", "pointerdown"];
  var GESTURE_PRIORITY = {
    click: 3,
    pointerdown: 2,
    mousedown: 1
  };
  function frameHopsFor(win) {
    try {
      if (win.top === win) return [];
    } catch {
    }
    let selector = null;
    let index = 0;
    try {
      const frameElement = win.frameElement;
      if (frameElement) {
        const id = frameElement.getAttribute("id");
        selector = id ? `#${id}` : null;
        const parentDoc = frameElement.ownerDocument;
        const frames = Array.from(parentDoc.querySelectorAll("iframe"));
        index = frames.indexOf(frameElement);
      }
    } catch {
      selector = null;
      index = -1;
    }
    return [{
      origin: win.location.origin,
      frame_selector: selector,
      index_in_parent: index
    }];
  }
  function overrideEventPrototype(win) {
    const proto = win.Event.prototype;
    const marker = "__webspWrapped";
    const anyProto = proto;
    if (anyProto[marker]) return;
    anyProto[marker] = true;
    for (const method of ["stopPropagation", "stopImmediatePropagation"]) {
      const original = proto[method];
      Object.defineProperty(proto, method, {
        value: function wrapped(...args) {
          this.__webspSuppressed = true;
          return original.apply(this, args);
        },
        configurable: true,
        writable: true
      });
    }
  }
  var GestureCapture = class {
    constructor(win, send, dedupMs = GESTURE_DEDUP_MS) {
      this.win = win;
      this.send = send;
      this.dedupMs = dedupMs;
      this.pending = /* @__PURE__ */ new Map();
      this.inputTimers = /* @__PURE__ */ new Map();
      this.installed = false;
      this.listeners = [];
    }
    install() {
      if (this.installed) return;
      this.installed = true;
      overrideEventPrototype(this.win);
      for (const type of GESTURE_EVENTS) {
        const listener = (event) => this.onGesture(type, event);
        this.listeners.push([type, listener]);
        this.win.addEventListener(type, listener, { capture: true, passive: true });
      }
      const inputListener = (event) => this.onInput(event);
      this.listeners.push(["input", inputListener]);
      this.win.addEventListener(
        "input",
        inputListener,
        { capture: true, passive: true }
      );
    }
    uninstall() {
      for (const [type, listener] of this.listeners) {
        this.win.removeEventListener(type, listener, { capture: true });
      }
      this.listeners = [];
      this.installed = false;
    }
    /** Flush all pending gestures immediately (used when recording stops). */
    flush() {
      for (const pending of Array.from(this.pending.values())) {
        clearTimeout(pending.timer);
        this.emitGesture(pending);
      }
      this.pending.clear();
    }
    onGesture(type, event) {
      const raw = targetFromComposedPath(event);
      if (!raw) return;
      const target = interactiveAncestor(raw, isInteractive) ?? raw;
      const existing = this.pending.get(target);
      if (existing) {
        if (GESTURE_PRIORITY[type] > GESTURE_PRIORITY[existing.best]) {
          existing.best = type;
        }
        return;
      }
      const pending = {
        target,
        best: type,
        locator: extractLocatorBundle(target),
        state: detectState(target),
        timer: setTimeout(() => {
          this.pending.delete(target);
          this.emitGesture(pending);
        }, this.dedupMs)
      };
      this.pending.set(target, pending);
    }
    emitGesture(pending) {
      this.send({
        event_type: pending.best,
        frame_path: frameHopsFor(this.win),
        locator: pending.locator,
        state_before: pending.state,
        typed_text: null
      });
    }
    onInput(event) {
      const target = event.target;
      if (!(target instanceof Element)) return;
      const existing = this.inputTimers.get(target);
      if (existing) clearTimeout(existing);
      this.inputTimers.set(
        target,
        setTimeout(() => {
          this.inputTimers.delete(target);
          const value = target instanceof HTMLInputElement || target instanceof HTMLTextAreaElement ? target.value : target.textContent || "";
          this.send({
            event_type: "input",
            frame_path: frameHopsFor(this.win),
            locator: extractLocatorBundle(target),
            state_before: detectState(target),
            typed_text: value
          });
        }, INPUT_DEBOUNCE_MS)
      );
    }
  };

  // src/indexer.ts
  var InteractionIndexer = class {
    constructor(doc) {
      this.doc = doc;
      this.observer = null;
      this.scheduled = false;
    }
    /** Single full re-index pass; returns the count of indexed elements. */
    runOnce() {
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
    assignment() {
      const out = [];
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
    observe() {
      this.runOnce();
      this.observer = new MutationObserver((records) => {
        const relevant = records.some(
          (record) => record.type !== "attributes" || record.attributeName !== WEBSP_INDEX_ATTR
        );
        if (relevant) this.schedule();
      });
      this.observer.observe(this.doc.documentElement, {
        subtree: true,
        childList: true,
        attributes: true,
        characterData: true
      });
    }
    disconnect() {
      this.observer?.disconnect();
      this.observer = null;
    }
    schedule() {
      if (this.scheduled) return;
      this.scheduled = true;
      queueMicrotask(() => {
        this.scheduled = false;
        this.runOnce();
      });
    }
  };

  // src/content.ts
  var indexer = new InteractionIndexer(document);
  indexer.observe();
  var capture = new GestureCapture(window, (event) => {
    void chrome.runtime.sendMessage({ type: "event", payload: event });
  });
  capture.install();
})();
