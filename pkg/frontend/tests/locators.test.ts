import { beforeEach, describe, expect, it } from "vitest";

import {
  cssPath,
  detectState,
  extractLocatorBundle,
  labelText,
  siblingText,
  xPath,
} from "../src/locators.js";
import { sha256Hex } from "../src/sha256.js";
import { fixtureHtml, mountPage, resetPage } from "./helpers.js";

beforeEach(resetPage);

describe("sha256", () => {
  it("matches known vectors", () => {
    expect(sha256Hex("")).toBe(
      "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    expect(sha256Hex("abc")).toBe(
      "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    expect(sha256Hex("a".repeat(200))).toBe(sha256Hex("a".repeat(200)));
    expect(sha256Hex("a".repeat(200))).not.toBe(sha256Hex("a".repeat(201)));
  });
});

describe("locator bundle extraction", () => {
  it("captures authored data-testid in stable attrs", () => {
    mountPage('<html><body><button data-testid="save">Save</button></body></html>');
    const bundle = extractLocatorBundle(document.querySelector("button")!);
    expect(bundle.stable_attrs["data-testid"]).toBe("save");
    expect(bundle.tag_name).toBe("button");
    expect(bundle.label_text).toBe("Save");
    expect(bundle.xpath).toBe("/html[1]/body[1]/button[1]");
  });

  it("captures aria-label on unlabeled icon buttons", () => {
    mountPage('<html><body><button aria-label="Close"></button></body></html>');
    const bundle = extractLocatorBundle(document.querySelector("button")!);
    expect(bundle.stable_attrs["aria-label"]).toBe("Close");
    expect(bundle.aria_attrs["aria-label"]).toBe("Close");
  });

  it("marks exactly one shadow boundary on the fixture shadow toggle", () => {
    mountPage(fixtureHtml("site-a/settings.html"));
    const host = document.querySelector("notify-email")!;
    const button = host.shadowRoot!.querySelector("button")!;
    const bundle = extractLocatorBundle(button);
    const markers = bundle.css_path.split("::shadow").length - 1;
    expect(markers).toBe(1);
    expect(bundle.css_path.startsWith("html")).toBe(true);
    expect(bundle.xpath).toBe(""); // document xpath cannot cross the boundary
    expect(bundle.stable_attrs["data-testid"]).toBe("email-toggle");
  });

  it("digest covers the full outer html, excerpt capped at 2048", () => {
    const filler = "x".repeat(5000);
    mountPage(`<html><body><button data-long="${filler}">b</button></body></html>`);
    const button = document.querySelector("button")!;
    const bundle = extractLocatorBundle(button);
    expect(bundle.outer_html_digest).toBe(sha256Hex(button.outerHTML));
    expect(bundle.outer_html_excerpt.length).toBe(2048);
  });

  it("degrades to tag name for detached targets", () => {
    const orphan = document.createElement("button");
    orphan.setAttribute("data-websp-index", "7");
    const bundle = extractLocatorBundle(orphan);
    expect(bundle.css_path).toBe("");
    expect(bundle.stable_attrs).toEqual({});
    expect(bundle.websp_index).toBe(7);
    expect(bundle.tag_name).toBe("button");
  });

  it("derives label, sibling and parent text", () => {
    mountPage(`<html><body><div>
      <label for="q">Search query</label>
      <input id="q" type="text">
    </div></body></html>`);
    const input = document.querySelector("input")!;
    expect(labelText(input)).toBe("Search query");
    expect(siblingText(input)).toBe("Search query");
    const bundle = extractLocatorBundle(input);
    expect(bundle.parent_text).toBe("Search query");
  });

  it("css paths disambiguate same-tag siblings", () => {
    mountPage(`<html><body>
      <button>One</button><button>Two</button>
    </body></html>`);
    const second = document.querySelectorAll("button")[1];
    expect(cssPath(second)).toBe("html > body > button:nth-of-type(2)");
    expect(xPath(second)).toBe("/html[1]/body[1]/button[2]");
  });
});

describe("state detection", () => {
  it("reads aria-checked first", () => {
    mountPage('<html><body><button role="switch" aria-checked="true" ' +
      'class="a-disabled">t</button></body></html>');
    expect(detectState(document.querySelector("button")!)).toEqual(
      { value: "ON", source: "aria_checked" });
  });

  it("falls back to native checked then css classes", () => {
    mountPage('<html><body><input type="checkbox" checked>' +
      '<span class="a-switch-active">s</span><p>p</p></body></html>');
    expect(detectState(document.querySelector("input")!)).toEqual(
      { value: "ON", source: "native_checked" });
    expect(detectState(document.querySelector("span")!)).toEqual(
      { value: "ON", source: "css_class_heuristic" });
    expect(detectState(document.querySelector("p")!)).toBeNull();
  });
});
