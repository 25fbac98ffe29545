import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { GestureCapture, frameHopsFor, overrideEventPrototype }
  from "../src/capture.js";
import { CapturedEvent } from "../src/protocol.js";
import { fixtureHtml, mountPage, resetPage, typeInto, userClick }
  from "./helpers.js";

let events: CapturedEvent[];
let capture: GestureCapture;

beforeEach(() => {
  resetPage();
  vi.useFakeTimers();
  events = [];
  capture = new GestureCapture(window, (event) => events.push(event));
  capture.install();
});

afterEach(() => {
  capture.uninstall();
  vi.useRealTimers();
});

describe("gesture capture", () => {
  it("collapses pointerdown+mousedown+click into one click event", () => {
    mountPage('<html><body><button data-testid="b">B</button></body></html>');
    userClick(document.querySelector("button")!);
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1);
    expect(events[0].event_type).toBe("click");
    expect(events[0].locator.stable_attrs["data-testid"]).toBe("b");
  });

  it("keeps pointerdown when no click ever arrives", () => {
    mountPage('<html><body><button>B</button></body></html>');
    document.querySelector("button")!.dispatchEvent(
      new MouseEvent("pointerdown", { bubbles: true, composed: true }));
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1);
    expect(events[0].event_type).toBe("pointerdown");
  });

  it("separate gestures on different targets are separate events", () => {
    mountPage('<html><body><button id="a">A</button>' +
      '<button id="b">B</button></body></html>');
    userClick(document.getElementById("a")!);
    userClick(document.getElementById("b")!);
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(2);
  });

  it("captures clicks even when the page stops propagation", () => {
    mountPage('<html><body><button id="hostile">H</button></body></html>');
    const button = document.getElementById("hostile")!;
    button.addEventListener("click", (event) => {
      event.stopImmediatePropagation();
      event.stopPropagation();
    });
    userClick(button);
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1);
    expect(events[0].locator.stable_attrs["id"]).toBe("hostile");
  });

  it("resolves shadow targets through the composed path", () => {
    mountPage(fixtureHtml("site-a/settings.html"));
    const host = document.querySelector("notify-email")!;
    const inner = host.shadowRoot!.querySelector("button")!;
    userClick(inner);
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1);
    const bundle = events[0].locator;
    expect(bundle.stable_attrs["data-testid"]).toBe("email-toggle");
    expect(bundle.css_path.split("::shadow")).toHaveLength(2);
    expect(events[0].state_before).toEqual(
      { value: "ON", source: "aria_checked" });
  });

  it("retargets decoration clicks to the interactive ancestor", () => {
    mountPage('<html><body><button data-testid="outer">' +
      "<span>inner decoration</span></button></body></html>");
    userClick(document.querySelector("span")!);
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1);
    expect(events[0].locator.tag_name).toBe("button");
  });

  it("debounces input events into one with the final text", () => {
    mountPage('<html><body><input id="q" type="text"></body></html>');
    const input = document.getElementById("q") as HTMLInputElement;
    typeInto(input, "h");
    typeInto(input, "he");
    typeInto(input, "hello");
    vi.advanceTimersByTime(400);
    const typed = events.filter((e) => e.event_type === "input");
    expect(typed).toHaveLength(1);
    expect(typed[0].typed_text).toBe("hello");
  });

  it("top frame has an empty frame path", () => {
    expect(frameHopsFor(window)).toEqual([]);
  });

  it("prototype override is idempotent and keeps suppression working", () => {
    overrideEventPrototype(window);
    overrideEventPrototype(window);
    mountPage('<html><body><button>B</button></body></html>');
    const seen: string[] = [];
    const button = document.querySelector("button")!;
    button.addEventListener("click", (e) => {
      seen.push("first");
      e.stopImmediatePropagation();
    });
    button.addEventListener("click", () => seen.push("second"));
    userClick(button);
    expect(seen).toEqual(["first"]); // page semantics preserved
    vi.advanceTimersByTime(60);
    expect(events).toHaveLength(1); // but the recorder still saw it
  });

  it("flush emits pending gestures immediately", () => {
    mountPage('<html><body><button>B</button></body></html>');
    document.querySelector("button")!.dispatchEvent(
      new MouseEvent("mousedown", { bubbles: true, composed: true }));
    capture.flush();
    expect(events).toHaveLength(1);
    expect(events[0].event_type).toBe("mousedown");
  });
});
