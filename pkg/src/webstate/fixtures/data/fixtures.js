/* Client-side interpreter for the declarative data-fx-* fixture vocabulary.
 * Injected by the fixture server so the same pages behave identically in a
 * real browser; persistent site state lives in localStorage under
 * fx-state:<site-id>. The in-process engine implements the same semantics
 * natively. */
(function () {
  "use strict";
  var SITE = window.__FX_SITE_ID || "site";
  var KEY = "fx-state:" + SITE;
  var ACTIVE = "a-switch-active";
  var DISABLED = "a-disabled";

  function loadState() {
    try { return JSON.parse(localStorage.getItem(KEY) || "{}"); }
    catch (e) { return {}; }
  }
  function saveState(state) { localStorage.setItem(KEY, JSON.stringify(state)); }
  function bumpLoad() {
    var state = loadState();
    state.__loads = (state.__loads || 0) + 1;
    saveState(state);
    return state.__loads;
  }

  function allNodes(root) {
    var out = [];
    (function walk(node) {
      out.push(node);
      var scope = node.shadowRoot || node;
      var children = scope.children || [];
      for (var i = 0; i < children.length; i++) walk(children[i]);
    })(root);
    return out;
  }

  function toggleKind(el) {
    var kind = el.getAttribute("data-fx-toggle");
    if (kind) return kind;
    if (el.tagName === "INPUT") return "checked";
    return "aria-checked";
  }
  function readVisual(el) {
    var kind = toggleKind(el);
    if (kind === "checked") return el.checked ? "ON" : "OFF";
    if (kind === "class") return el.classList.contains(ACTIVE) ? "ON" : "OFF";
    return el.getAttribute(kind) === "true" ? "ON" : "OFF";
  }
  function writeVisual(el, state) {
    var kind = toggleKind(el);
    if (kind === "checked") el.checked = state === "ON";
    else if (kind === "class") el.classList.toggle(ACTIVE, state === "ON");
    else el.setAttribute(kind, state === "ON" ? "true" : "false");
  }

  var drafts = {};
  var hasSave = false;

  function recordChange(el, value) {
    var key = el.getAttribute("data-fx-state-key");
    if (!key) return;
    if (hasSave) {
      drafts[key] = value;
      allNodes(document.documentElement).forEach(function (n) {
        if (n.hasAttribute && n.hasAttribute("data-fx-save"))
          n.classList.remove(DISABLED);
      });
    } else {
      var state = loadState();
      state[key] = value;
      saveState(state);
    }
  }

  function hydrate() {
    var loads = bumpLoad();
    var state = loadState();
    var nodes = allNodes(document.documentElement);
    hasSave = nodes.some(function (n) {
      return n.hasAttribute && n.hasAttribute("data-fx-save");
    });
    var authed = !!state.auth;
    var jitter = document.body.getAttribute("data-fx-rerender-jitter");
    if (jitter) {
      var pads = loads % (parseInt(jitter, 10) + 1);
      for (var p = 0; p < pads; p++) {
        var pad = document.createElement("div");
        pad.className = "fx-pad";
        document.body.insertBefore(pad, document.body.firstChild);
      }
    }
    nodes.forEach(function (el) {
      if (!el.hasAttribute) return;
      if (el.hasAttribute("data-fx-rerender")) {
        var nonce = "n" + loads;
        el.getAttribute("data-fx-rerender").split(/\s+/).forEach(function (attr) {
          if (attr === "text") el.textContent = el.textContent.trim() + " " + nonce;
          else if (el.hasAttribute(attr))
            el.setAttribute(attr, el.getAttribute(attr) + "-" + nonce);
        });
      }
      if (el.hasAttribute("data-fx-auth-marker") && !authed) el.remove();
      if (el.hasAttribute("data-fx-requires-auth") && !authed)
        el.style.display = "none";
      if (el.hasAttribute("data-fx-auth-prompt") && authed)
        el.style.display = "none";
      if (el.hasAttribute("data-fx-modal") && !el.hasAttribute("data-fx-open"))
        el.style.display = "none";
      if (el.hasAttribute("data-fx-reveal-target")) el.style.display = "none";
      if (el.hasAttribute("data-fx-save")) el.classList.add(DISABLED);
      var key = el.getAttribute && el.getAttribute("data-fx-state-key");
      if (key) {
        var committed = state.hasOwnProperty(key) ? state[key]
          : (el.getAttribute("data-fx-default") || "ON");
        if (el.tagName === "INPUT" && el.type === "radio")
          el.checked = committed === el.value;
        else if (el.tagName === "INPUT" && el.type !== "checkbox")
          el.value = committed;
        else writeVisual(el, committed);
      }
    });
  }

  function findById(id) {
    var hit = null;
    allNodes(document.documentElement).forEach(function (n) {
      if (n.id === id) hit = n;
    });
    return hit;
  }

  function onActivate(el) {
    if (el.hasAttribute("data-fx-stuck")) {
      el.setAttribute("data-fx-stuck-count",
        String(1 + Number(el.getAttribute("data-fx-stuck-count") || 0)));
      return true;
    }
    if (el.hasAttribute("data-fx-state-key")) {
      if (el.tagName === "INPUT" && el.type === "radio")
        recordChange(el, el.value);
      else if (!(el.tagName === "INPUT" && el.type !== "checkbox")) {
        var next = el.tagName === "INPUT" ? (el.checked ? "ON" : "OFF")
          : (readVisual(el) === "ON" ? "OFF" : "ON");
        if (el.tagName !== "INPUT") writeVisual(el, next);
        recordChange(el, next);
      }
    }
    if (el.hasAttribute("data-fx-save") && !el.classList.contains(DISABLED)) {
      var state = loadState();
      Object.keys(drafts).forEach(function (k) { state[k] = drafts[k]; });
      saveState(state);
      drafts = {};
      el.classList.add(DISABLED);
    }
    if (el.hasAttribute("data-fx-append-on-click")) {
      var extra = document.createElement("div");
      extra.className = "fx-appended";
      document.body.appendChild(extra);
      el.setAttribute("data-fx-clicks",
        String(1 + Number(el.getAttribute("data-fx-clicks") || 0)));
    }
    if (el.hasAttribute("data-fx-modal-open")) {
      var modal = findById(el.getAttribute("data-fx-modal-open"));
      if (modal) modal.style.display = "";
      el.setAttribute("aria-expanded", "true");
    }
    if (el.hasAttribute("data-fx-modal-close")) {
      var enclosing = el.closest("[data-fx-modal]");
      if (enclosing) enclosing.style.display = "none";
    }
    if (el.hasAttribute("data-fx-reveal")) {
      var target = findById(el.getAttribute("data-fx-reveal"));
      if (target) {
        var hidden = target.style.display === "none";
        target.style.display = hidden ? "" : "none";
        el.setAttribute("aria-expanded", hidden ? "true" : "false");
      }
    }
    if (el.hasAttribute("data-fx-login-submit")) {
      var user = document.querySelector('input[name="username"]');
      var pass = document.querySelector('input[name="password"]');
      if (user && pass && user.value && pass.value) {
        var s = loadState(); s.auth = true; saveState(s);
        window.location.href = window.__FX_PREFIX
          + (el.getAttribute("data-fx-nav") || "/");
        return true;
      }
    }
    if (el.hasAttribute("data-fx-approve-login")) {
      var s2 = loadState(); s2.auth = true; saveState(s2);
      window.close();
      return true;
    }
    if (el.hasAttribute("data-fx-signout")) {
      var s3 = loadState(); s3.auth = false; saveState(s3);
      window.location.href = window.__FX_PREFIX + "/";
      return true;
    }
    if (el.hasAttribute("data-fx-nav")) {
      window.location.href = el.getAttribute("data-fx-nav");
      return true;
    }
    if (el.hasAttribute("data-fx-popup")) {
      window.open(el.getAttribute("data-fx-popup"), "_blank",
        "width=480,height=640");
      return true;
    }
    return false;
  }

  function behaviorTarget(event) {
    var path = event.composedPath ? event.composedPath() : [event.target];
    for (var i = 0; i < path.length; i++) {
      var el = path[i];
      if (el && el.hasAttribute) return el;
    }
    return null;
  }

  document.addEventListener("click", function (event) {
    var el = behaviorTarget(event);
    if (!el) return;
    if (el.hasAttribute("data-fx-pointer-only")) return;
    onActivate(el);
  }, true);

  document.addEventListener("pointerdown", function (event) {
    var el = behaviorTarget(event);
    if (el && el.hasAttribute("data-fx-pointer-only")) onActivate(el);
  }, true);

  document.addEventListener("input", function (event) {
    var el = event.target;
    if (el && el.hasAttribute && el.hasAttribute("data-fx-state-key")
        && el.tagName === "INPUT" && el.type !== "checkbox"
        && el.type !== "radio")
      recordChange(el, el.value);
  }, true);

  hydrate();
})();
