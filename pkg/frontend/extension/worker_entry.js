// src/protocol.ts
var EVENT_TYPES = ["click", "mousedown", "pointerdown", "input", "key"];
function validateTrace(trace) {
  const problems = [];
  if (!trace.name) problems.push("/name: name must be a non-empty string");
  if (!/^https?:\/\/[^/]+/.test(trace.start_url)) {
    problems.push("/start_url: start_url must be an absolute URL");
  }
  let lastSeq = null;
  trace.events.forEach((event, i) => {
    const base = `/events/${i}`;
    if (!EVENT_TYPES.includes(event.event_type)) {
      problems.push(`${base}/event_type: unknown event_type ${event.event_type}`);
    }
    if (lastSeq !== null && event.seq <= lastSeq) {
      problems.push(`${base}/seq: seq ${event.seq} not strictly increasing`);
    }
    lastSeq = event.seq;
    if (event.typed_text !== null !== (event.event_type === "input")) {
      problems.push(`${base}/typed_text: present exactly for input events`);
    }
    const loc = event.locator;
    const hasHandle = Object.keys(loc.stable_attrs).length > 0 || loc.css_path.length > 0 || loc.xpath.length > 0 || loc.websp_index !== null;
    if (!hasHandle) problems.push(`${base}/locator: no usable locator handle`);
    if (loc.css_path.startsWith("::shadow") || loc.css_path.endsWith("::shadow")) {
      problems.push(`${base}/locator/css_path: shadow marker at path edge`);
    }
    if (event.state_before) {
      const unknown = event.state_before.value === "UNKNOWN";
      if (unknown !== (event.state_before.source === "none")) {
        problems.push(`${base}/state_before: UNKNOWN exactly when source is none`);
      }
    }
  });
  return problems;
}
function traceToJson(trace) {
  const ordered = {
    name: trace.name,
    created_at: trace.created_at,
    start_url: trace.start_url,
    events: trace.events.map((event) => ({
      seq: event.seq,
      event_type: event.event_type,
      frame_path: event.frame_path.map((hop) => ({
        origin: hop.origin,
        frame_selector: hop.frame_selector,
        index_in_parent: hop.index_in_parent
      })),
      locator: {
        stable_attrs: sortedRecord(event.locator.stable_attrs),
        tag_name: event.locator.tag_name,
        outer_html_digest: event.locator.outer_html_digest,
        outer_html_excerpt: event.locator.outer_html_excerpt,
        css_path: event.locator.css_path,
        xpath: event.locator.xpath,
        label_text: event.locator.label_text,
        sibling_text: event.locator.sibling_text,
        parent_text: event.locator.parent_text,
        aria_attrs: sortedRecord(event.locator.aria_attrs),
        websp_index: event.locator.websp_index
      },
      state_before: event.state_before,
      typed_text: event.typed_text,
      timestamp_ms: event.timestamp_ms,
      screenshot_ref: event.screenshot_ref
    })),
    screenshots_dir: trace.screenshots_dir
  };
  return JSON.stringify(ordered, null, 2) + "\n";
}
function sortedRecord(record) {
  const out = {};
  for (const key of Object.keys(record).sort()) out[key] = record[key];
  return out;
}

// src/background.ts
var RecorderWorker = class {
  constructor(deps) {
    this.deps = deps;
    this.status = "idle";
    this.name = "recording";
    this.startUrl = "";
    this.events = [];
    this.screenshotWarnings = 0;
    this.screenshots = /* @__PURE__ */ new Map();
    this.nextSeq = 1;
  }
  async handleMessage(message, senderUrl) {
    switch (message.type) {
      case "event":
        return this.onEvent(message.payload, senderUrl);
      case "status":
        return this.statusReply();
      case "control": {
        const { action, name } = message.payload;
        if (action === "start") return this.start(senderUrl ?? "");
        if (action === "stop") return this.stop();
        if (action === "name") {
          this.name = (name || "recording").trim() || "recording";
          return this.statusReply();
        }
        return this.statusReply();
      }
      case "export":
        return this.exportTrace();
    }
  }
  statusReply() {
    return {
      status: this.status,
      name: this.name,
      event_count: this.events.length,
      screenshot_warnings: this.screenshotWarnings
    };
  }
  start(tabUrl) {
    this.status = "recording";
    this.startUrl = tabUrl || this.startUrl || "https://example.invalid/";
    this.events = [];
    this.screenshots.clear();
    this.screenshotWarnings = 0;
    this.nextSeq = 1;
    return this.statusReply();
  }
  stop() {
    if (this.status === "recording") this.status = "stopped";
    return this.statusReply();
  }
  async onEvent(payload, senderUrl) {
    if (this.status !== "recording") return this.statusReply();
    if (!this.startUrl && senderUrl) this.startUrl = senderUrl;
    const seq = this.nextSeq++;
    const event = {
      seq,
      event_type: payload.event_type,
      frame_path: payload.frame_path,
      locator: payload.locator,
      state_before: payload.state_before,
      typed_text: payload.typed_text,
      timestamp_ms: Math.round(this.deps.now()),
      screenshot_ref: null
    };
    try {
      const dataUrl = await this.deps.captureScreenshot();
      event.screenshot_ref = `${this.name}_screenshots/${seq}.png`;
      this.screenshots.set(seq, dataUrl);
    } catch {
      this.screenshotWarnings += 1;
    }
    this.events.push(event);
    return this.statusReply();
  }
  buildTrace() {
    return {
      name: this.name,
      created_at: Math.round(this.deps.now()),
      start_url: this.startUrl,
      events: this.events.map((event) => ({
        ...event,
        screenshot_ref: event.screenshot_ref ? `${this.name}_screenshots/${event.seq}.png` : null
      })),
      screenshots_dir: this.screenshots.size ? `${this.name}_screenshots` : null
    };
  }
  async exportTrace() {
    if (this.status === "recording") {
      return { error: "stop the recording before exporting" };
    }
    const trace = this.buildTrace();
    const problems = validateTrace(trace);
    if (problems.length) {
      return { error: `trace failed validation: ${problems.join("; ")}` };
    }
    const json = traceToJson(trace);
    const filename = `${this.name}.json`;
    const dataUrl = "data:application/json;base64," + bytesToBase64(new TextEncoder().encode(json));
    await this.deps.download(filename, dataUrl);
    const shots = [];
    for (const [seq, shot] of this.screenshots) {
      const shotName = `${this.name}_screenshots/${seq}.png`;
      await this.deps.download(shotName, shot);
      shots.push({ filename: shotName, dataUrl: shot });
    }
    return { filename, trace, screenshots: shots };
  }
};
function bytesToBase64(bytes) {
  let binary = "";
  for (const b of bytes) binary += String.fromCharCode(b);
  return globalThis.btoa(binary);
}

// src/worker_entry.ts
var worker = new RecorderWorker({
  captureScreenshot: () => chrome.tabs.captureVisibleTab(),
  download: async (filename, url) => {
    await chrome.downloads.download({ url, filename });
  },
  now: () => Date.now()
});
chrome.runtime.onMessage.addListener((message, sender, sendResponse) => {
  const senderUrl = sender.tab?.url ?? sender.url;
  worker.handleMessage(message, senderUrl).then((reply) => sendResponse(reply)).catch((error) => sendResponse({ error: String(error) }));
  return true;
});
