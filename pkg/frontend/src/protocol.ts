/**
 * Wire formats shared with the replay engine: the trace file schema and the
 * content-script <-> service-worker message protocol. Field names and key
 * order follow the canonical JSON schema exactly.
 */

export interface LocatorBundle {
  stable_attrs: Record<string, string>;
  tag_name: string;
  outer_html_digest: string;
  outer_html_excerpt: string;
  css_path: string;
  xpath: string;
  label_text: string | null;
  sibling_text: string | null;
  parent_text: string | null;
  aria_attrs: Record<string, string>;
  websp_index: number | null;
}

export interface FrameHop {
  origin: string;
  frame_selector: string | null;
  index_in_parent: number;
}

export interface ElementState {
  value: "ON" | "OFF" | "UNKNOWN";
  source:
    | "aria_checked"
    | "aria_pressed"
    | "aria_selected"
    | "native_checked"
    | "css_class_heuristic"
    | "none";
}

export type EventType = "click" | "mousedown" | "pointerdown" | "input" | "key";

export interface RecordedEvent {
  seq: number;
  event_type: EventType;
  frame_path: FrameHop[];
  locator: LocatorBundle;
  state_before: ElementState | null;
  typed_text: string | null;
  timestamp_ms: number;
  screenshot_ref: string | null;
}

export interface SessionTrace {
  name: string;
  created_at: number;
  start_url: string;
  events: RecordedEvent[];
  screenshots_dir: string | null;
}

/** Event as captured in a frame, before the worker assigns seq/timestamps. */
export interface CapturedEvent {
  event_type: EventType;
  frame_path: FrameHop[];
  locator: LocatorBundle;
  state_before: ElementState | null;
  typed_text: string | null;
}

export type RecorderStatus = "idle" | "recording" | "stopped";

export type Message =
  | { type: "event"; payload: CapturedEvent }
  | { type: "status"; payload?: undefined }
  | { type: "control"; payload: { action: "start" | "stop" | "name"; name?: string } }
  | { type: "export"; payload?: undefined };

export interface StatusReply {
  status: RecorderStatus;
  name: string;
  event_count: number;
  screenshot_warnings: number;
}

const EVENT_TYPES: EventType[] = ["click", "mousedown", "pointerdown", "input", "key"];

/** Schema/invariant checks mirroring the engine's validator; returns a list
 * of "<json-pointer>: <message>" strings, empty when the trace is valid. */
export function validateTrace(trace: SessionTrace): string[] {
  const problems: string[] = [];
  if (!trace.name) problems.push("/name: name must be a non-empty string");
  if (!/^https?:\/\/[^/]+/.test(trace.start_url)) {
    problems.push("/start_url: start_url must be an absolute URL");
  }
  let lastSeq: number | null = null;
  trace.events.forEach((event, i) => {
    const base = `/events/${i}`;
    if (!EVENT_TYPES.includes(event.event_type)) {
      problems.push(`${base}/event_type: unknown event_type ${event.event_type}`);
    }
    if (lastSeq !== null && event.seq <= lastSeq) {
      problems.push(`${base}/seq: seq ${event.seq} not strictly increasing`);
    }
    lastSeq = event.seq;
    if ((event.typed_text !== null) !== (event.event_type === "input")) {
      problems.push(`${base}/typed_text: present exactly for input events`);
    }
    const loc = event.locator;
    const hasHandle =
      Object.keys(loc.stable_attrs).length > 0 ||
      loc.css_path.length > 0 ||
      loc.xpath.length > 0 ||
      loc.websp_index !== null;
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

/** Canonical key order used when exporting, matching the engine writer. */
export function traceToJson(trace: SessionTrace): string {
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
        index_in_parent: hop.index_in_parent,
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
        websp_index: event.locator.websp_index,
      },
      state_before: event.state_before,
      typed_text: event.typed_text,
      timestamp_ms: event.timestamp_ms,
      screenshot_ref: event.screenshot_ref,
    })),
    screenshots_dir: trace.screenshots_dir,
  };
  return JSON.stringify(ordered, null, 2) + "\n";
}

function sortedRecord(record: Record<string, string>): Record<string, string> {
  const out: Record<string, string> = {};
  for (const key of Object.keys(record).sort()) out[key] = record[key];
  return out;
}
