"use strict";
(() => {
  // src/popup.ts
  function el(id) {
    return document.getElementById(id);
  }
  async function send(message) {
    return chrome.runtime.sendMessage(message);
  }
  async function refresh() {
    const reply = await send({ type: "status" });
    el("status").textContent = reply.status;
    el("count").textContent = String(reply.event_count);
    const warnings = el("warnings");
    warnings.textContent = reply.screenshot_warnings ? `${reply.screenshot_warnings} screenshot(s) throttled` : "";
    const nameField = el("name");
    if (document.activeElement !== nameField) nameField.value = reply.name;
  }
  function flash(text) {
    el("message").textContent = text;
  }
  el("start").addEventListener("click", async () => {
    const [tab] = await chrome.tabs.query({ active: true, currentWindow: true });
    await send({ type: "control", payload: {
      action: "name",
      name: el("name").value
    } });
    await send({ type: "control", payload: { action: "start" } });
    flash(tab?.url ? `recording ${tab.url}` : "recording");
    await refresh();
  });
  el("stop").addEventListener("click", async () => {
    await send({ type: "control", payload: { action: "stop" } });
    flash("stopped");
    await refresh();
  });
  el("name").addEventListener("change", async (event) => {
    const name = event.target.value;
    await send({ type: "control", payload: { action: "name", name } });
  });
  el("export").addEventListener("click", async () => {
    const reply = await send({ type: "export" });
    flash(reply.error ? reply.error : `exported ${reply.filename}`);
  });
  void refresh();
  setInterval(() => void refresh(), 500);
})();
