"""Rasterizes fixture pages to PNG for trajectory artifacts and judging.

The drawing is schematic (boxes and text), but deterministic: identical DOM
state and scroll position always produce byte-identical PNGs, which the
image-annotation tests rely on.
"""

import io

from PIL import Image, ImageDraw

from . import behaviors
from .nodes import visible_rect

_THEMES = {
    "light": {"bg": (255, 255, 255), "fg": (20, 20, 20), "border": (160, 160, 160),
              "widget": (232, 232, 232), "link": (26, 13, 171),
              "panel": (248, 248, 248)},
    "dark": {"bg": (30, 30, 34), "fg": (225, 225, 225), "border": (110, 110, 110),
             "widget": (60, 60, 66), "link": (138, 180, 248),
             "panel": (44, 44, 50)},
}

_WIDGET_TAGS = {"button", "input", "select", "textarea", "summary", "option"}


def render_png(doc, scroll_y, viewport, scheme, iter_rendered) -> bytes:
    theme = _THEMES.get(scheme, _THEMES["light"])
    image = Image.new("RGB", viewport, theme["bg"])
    draw = ImageDraw.Draw(image)

    flow, overlays = [], []
    for node in iter_rendered(doc.root):
        box = visible_rect(node, scroll_y, viewport)
        if box is None:
            continue
        chain = [node] + [a for a in node.ancestors() if a.tag != "#shadow"]
        chain_fixed = any(n.style.position in ("fixed", "absolute") for n in chain)
        (overlays if chain_fixed else flow).append((node, box))
    overlays.sort(key=lambda item: item[0].style.z_index)

    for node, box in flow + overlays:
        _paint(draw, node, box, theme)

    out = io.BytesIO()
    image.save(out, format="PNG")
    return out.getvalue()


def _paint(draw, node, box, theme):
    x, y, w, h = box.as_tuple()
    if "data-fx-overlay" in node.attrs:
        return  # transparent pointer-intercepting layer: nothing to paint
    if "data-fx-modal" in node.attrs:
        draw.rectangle([x, y, x + w - 1, y + h - 1],
                       fill=theme["panel"], outline=theme["border"])
        return
    if node.tag in _WIDGET_TAGS or node.attrs.get("role") in (
            "button", "switch", "checkbox", "radio"):
        fill = theme["widget"]
        if behaviors.ACTIVE_CLASS in node.classes or node.checked \
                or node.attrs.get("aria-checked") == "true" \
                or node.attrs.get("aria-pressed") == "true":
            fill = (120, 200, 120)  # active state reads green in both themes
        draw.rectangle([x, y, x + w - 1, y + h - 1],
                       fill=fill, outline=theme["border"])
        label = node.full_text() or node.attrs.get("aria-label", "") or node.value
        if label:
            draw.text((x + 4, y + 4), label[:60], fill=theme["fg"])
        return
    text = node.own_text()
    if text:
        color = theme["link"] if node.tag == "a" else theme["fg"]
        draw.text((x + 4, y + 2), text[:90], fill=color)
