/** Popup control surface: start/stop/name/export plus a live event count. */
import { StatusReply } from "./protocol.js";

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function send(message: unknown): Promise<unknown> {
  return chrome.runtime.sendMessage(message);
}

async function refresh(): Promise<void> {
  const reply = (await send({ type: "status" })) as StatusReply;
  el<HTMLSpanElement>("status").textContent = reply.status;
  el<HTMLSpanElement>("count").textContent = String(reply.event_count);
  const warnings = el<HTMLSpanElement>("warnings");
  warnings.textContent = reply.screenshot_warnings
    ? `${reply.screenshot_warnings} screenshot(s) throttled`
    : "";
  const nameField = el<HTMLInputElement>("name");
  if (document.activeElement !== nameField) nameField.value = reply.name;
}

function flash(text: string): void {
  el<HTMLSpanElement>("message").textContent = text;
}

el<HTMLButtonElement>("start").addEventListener("click", async () => {
  const [tab] = await chrome.tabs.query({ active: true, currentWindow: true });
  await send({ type: "control", payload: { action: "name",
    name: el<HTMLInputElement>("name").value } });
  await send({ type: "control", payload: { action: "start" } });
  flash(tab?.url ? `recording ${tab.url}` : "recording");
  await refresh();
});

el<HTMLButtonElement>("stop").addEventListener("click", async () => {
  await send({ type: "control", payload: { action: "stop" } });
  flash("stopped");
  await refresh();
});

el<HTMLInputElement>("name").addEventListener("change", async (event) => {
  const name = (event.target as HTMLInputElement).value;
  await send({ type: "control", payload: { action: "name", name } });
});

el<HTMLButtonElement>("export").addEventListener("click", async () => {
  const reply = (await send({ type: "export" })) as { error?: string;
    filename?: string };
  flash(reply.error ? reply.error : `exported ${reply.filename}`);
});

void refresh();
setInterval(() => void refresh(), 500);
