/**
 * Service-worker recording session. Content scripts in every frame post
 * captured events here; the worker serializes them by arrival and assigns
 * seq numbers, so ordering is total even across frames. Export produces the
 * canonical trace JSON plus the captured screenshot files.
 */

import {
  CapturedEvent,
  Message,
  RecordedEvent,
  RecorderStatus,
  SessionTrace,
  StatusReply,
  traceToJson,
  validateTrace,
} from "./protocol.js";

export interface WorkerDeps {
  /** Visible-viewport screenshot as a data URL; may reject when throttled. */
  captureScreenshot(): Promise<string>;
  download(filename: string, dataUrl: string): Promise<void>;
  now(): number;
}

export interface ExportResult {
  filename: string;
  trace: SessionTrace;
  screenshots: Array<{ filename: string; dataUrl: string }>;
}

export class RecorderWorker {
  status: RecorderStatus = "idle";
  name = "recording";
  startUrl = "";
  events: RecordedEvent[] = [];
  screenshotWarnings = 0;
  private screenshots = new Map<number, string>();
  private nextSeq = 1;

  constructor(private readonly deps: WorkerDeps) {}

  async handleMessage(message: Message, senderUrl?: string): Promise<unknown> {
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

  statusReply(): StatusReply {
    return {
      status: this.status,
      name: this.name,
      event_count: this.events.length,
      screenshot_warnings: this.screenshotWarnings,
    };
  }

  start(tabUrl: string): StatusReply {
    this.status = "recording";
    this.startUrl = tabUrl || this.startUrl || "https://example.invalid/";
    this.events = [];
    this.screenshots.clear();
    this.screenshotWarnings = 0;
    this.nextSeq = 1;
    return this.statusReply();
  }

  stop(): StatusReply {
    if (this.status === "recording") this.status = "stopped";
    return this.statusReply();
  }

  private async onEvent(
    payload: CapturedEvent,
    senderUrl?: string
  ): Promise<StatusReply> {
    if (this.status !== "recording") return this.statusReply();
    if (!this.startUrl && senderUrl) this.startUrl = senderUrl;
    const seq = this.nextSeq++;
    const event: RecordedEvent = {
      seq,
      event_type: payload.event_type,
      frame_path: payload.frame_path,
      locator: payload.locator,
      state_before: payload.state_before,
      typed_text: payload.typed_text,
      timestamp_ms: Math.round(this.deps.now()),
      screenshot_ref: null,
    };
    try {
      const dataUrl = await this.deps.captureScreenshot();
      event.screenshot_ref = `${this.name}_screenshots/${seq}.png`;
      this.screenshots.set(seq, dataUrl);
    } catch {
      // capture throttled by the browser: keep the event, count a warning
      this.screenshotWarnings += 1;
    }
    this.events.push(event);
    return this.statusReply();
  }

  buildTrace(): SessionTrace {
    return {
      name: this.name,
      created_at: Math.round(this.deps.now()),
      start_url: this.startUrl,
      events: this.events.map((event) => ({
        ...event,
        screenshot_ref: event.screenshot_ref
          ? `${this.name}_screenshots/${event.seq}.png`
          : null,
      })),
      screenshots_dir: this.screenshots.size
        ? `${this.name}_screenshots`
        : null,
    };
  }

  async exportTrace(): Promise<ExportResult | { error: string }> {
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
    const dataUrl =
      "data:application/json;base64," +
      bytesToBase64(new TextEncoder().encode(json));
    await this.deps.download(filename, dataUrl);
    const shots: ExportResult["screenshots"] = [];
    for (const [seq, shot] of this.screenshots) {
      const shotName = `${this.name}_screenshots/${seq}.png`;
      await this.deps.download(shotName, shot);
      shots.push({ filename: shotName, dataUrl: shot });
    }
    return { filename, trace, screenshots: shots };
  }
}

function bytesToBase64(bytes: Uint8Array): string {
  let binary = "";
  for (const b of bytes) binary += String.fromCharCode(b);
  // btoa exists in both worker and window contexts
  return (globalThis as unknown as { btoa(s: string): string }).btoa(binary);
}
