/**
 * Event capture for one frame. Listeners ride the capture phase on the
 * window, ahead of page handlers, and the Event.prototype suppression
 * methods are wrapped so pages that stop propagation cannot hide
 * interactions. One gesture produces one recorded event: click/mousedown/
 * pointerdown on the same target within the dedup window collapse into a
 * single canonical event, preferring click.
 */

import {
  detectState,
  extractLocatorBundle,
  interactiveAncestor,
  targetFromComposedPath,
} from "./locators.js";
import { isInteractive } from "./predicate.js";
import { CapturedEvent, EventType, FrameHop } from "./protocol.js";

export const GESTURE_DEDUP_MS = 50;
export const INPUT_DEBOUNCE_MS = 300;

const GESTURE_EVENTS: EventType[] = ["click", "mousedown", "pointerdown"];
// one canonical event per gesture, preferring click over the pointer preludes
const GESTURE_PRIORITY: Record<string, number> = {
  click: 3,
  pointerdown: 2,
  mousedown: 1,
};

interface PendingGesture {
  target: Element;
  best: EventType;
  timer: ReturnType<typeof setTimeout>;
  // snapshot from the first event of the gesture: page handlers may mutate
  // the element (or detach it) before the dedup window closes
  locator: ReturnType<typeof extractLocatorBundle>;
  state: ReturnType<typeof detectState>;
}

export type SendEvent = (event: CapturedEvent) => void;

export function frameHopsFor(win: Window): FrameHop[] {
  try {
    if (win.top === win) return [];
  } catch {
    // cross-origin top access denied: degraded one-hop path below
  }
  let selector: string | null = null;
  let index = 0;
  try {
    const frameElement = win.frameElement as Element | null;
    if (frameElement) {
      const id = frameElement.getAttribute("id");
      selector = id ? `#${id}` : null;
      const parentDoc = frameElement.ownerDocument;
      const frames = Array.from(parentDoc.querySelectorAll("iframe"));
      index = frames.indexOf(frameElement as HTMLIFrameElement);
    }
  } catch {
    selector = null;
    index = -1;
  }
  return [{
    origin: win.location.origin,
    frame_selector: selector,
    index_in_parent: index,
  }];
}

/**
 * Wrap the Event.prototype suppression methods so interactions remain
 * observable even on pages that aggressively stop propagation. The wrapped
 * methods still run; the capture listener has seen the event by then because
 * it rides the window capture phase.
 */
export function overrideEventPrototype(win: Window): void {
  const proto = (win as unknown as { Event: { prototype: Event } }).Event.prototype;
  const marker = "__webspWrapped";
  const anyProto = proto as unknown as Record<string, unknown>;
  if (anyProto[marker]) return;
  anyProto[marker] = true;
  for (const method of ["stopPropagation", "stopImmediatePropagation"] as const) {
    const original = proto[method];
    Object.defineProperty(proto, method, {
      value: function wrapped(this: Event, ...args: unknown[]) {
        (this as unknown as Record<string, unknown>).__webspSuppressed = true;
        return (original as (...a: unknown[]) => unknown).apply(this, args);
      },
      configurable: true,
      writable: true,
    });
  }
}

export class GestureCapture {
  private pending = new Map<Element, PendingGesture>();
  private inputTimers = new Map<Element, ReturnType<typeof setTimeout>>();
  private installed = false;
  private listeners: Array<[string, EventListener]> = [];

  constructor(
    private readonly win: Window,
    private readonly send: SendEvent,
    private readonly dedupMs: number = GESTURE_DEDUP_MS
  ) {}

  install(): void {
    if (this.installed) return;
    this.installed = true;
    overrideEventPrototype(this.win);
    for (const type of GESTURE_EVENTS) {
      const listener = (event: Event) => this.onGesture(type, event);
      this.listeners.push([type, listener]);
      this.win.addEventListener(type, listener, { capture: true, passive: true });
    }
    const inputListener = (event: Event) => this.onInput(event);
    this.listeners.push(["input", inputListener]);
    this.win.addEventListener("input", inputListener,
      { capture: true, passive: true });
  }

  uninstall(): void {
    for (const [type, listener] of this.listeners) {
      this.win.removeEventListener(type, listener, { capture: true });
    }
    this.listeners = [];
    this.installed = false;
  }

  /** Flush all pending gestures immediately (used when recording stops). */
  flush(): void {
    for (const pending of Array.from(this.pending.values())) {
      clearTimeout(pending.timer);
      this.emitGesture(pending);
    }
    this.pending.clear();
  }

  private onGesture(type: EventType, event: Event): void {
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
    const pending: PendingGesture = {
      target,
      best: type,
      locator: extractLocatorBundle(target),
      state: detectState(target),
      timer: setTimeout(() => {
        this.pending.delete(target);
        this.emitGesture(pending);
      }, this.dedupMs),
    };
    this.pending.set(target, pending);
  }

  private emitGesture(pending: PendingGesture): void {
    this.send({
      event_type: pending.best,
      frame_path: frameHopsFor(this.win),
      locator: pending.locator,
      state_before: pending.state,
      typed_text: null,
    });
  }

  private onInput(event: Event): void {
    const target = event.target;
    if (!(target instanceof Element)) return;
    const existing = this.inputTimers.get(target);
    if (existing) clearTimeout(existing);
    this.inputTimers.set(
      target,
      setTimeout(() => {
        this.inputTimers.delete(target);
        const value =
          target instanceof HTMLInputElement ||
          target instanceof HTMLTextAreaElement
            ? target.value
            : target.textContent || "";
        this.send({
          event_type: "input",
          frame_path: frameHopsFor(this.win),
          locator: extractLocatorBundle(target),
          state_before: detectState(target),
          typed_text: value,
        });
      }, INPUT_DEBOUNCE_MS)
    );
  }
}
