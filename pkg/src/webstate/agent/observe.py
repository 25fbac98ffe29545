"""Observations: shadow-aware interactive-element detection plus numbered
Set-of-Marks bounding boxes drawn over the viewport screenshot.

Box colors come from a >=8-color palette through a seeded RNG so dark or
same-colored page backgrounds cannot hide every box, adjacent labels never
share a color, and a fixed seed reproduces byte-identical images.
"""

import io
import json
import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from PIL import Image, ImageDraw

from ..browser import BrowserSession, TabInfo

logger = logging.getLogger(__name__)

SOM_PALETTE: Tuple[Tuple[int, int, int], ...] = (
    (214, 39, 40),    # red
    (31, 119, 180),   # blue
    (44, 160, 44),    # green
    (255, 127, 14),   # orange
    (148, 103, 189),  # purple
    (23, 190, 207),   # teal
    (227, 119, 194),  # magenta
    (140, 86, 75),    # brown
    (188, 189, 34),   # olive
    (82, 84, 163),    # navy
)


@dataclass
class ObservedElement:
    label: int
    tag: str
    text: str
    rect: Tuple[int, int, int, int]
    in_popup: bool
    handle: object = None
    color: Tuple[int, int, int] = (0, 0, 0)

    def to_json(self) -> dict:
        return {"label": self.label, "tag": self.tag, "text": self.text,
                "rect": list(self.rect), "in_popup": self.in_popup}


@dataclass
class Observation:
    step: int
    url: str
    screenshot_png: bytes
    elements: List[ObservedElement] = field(default_factory=list)
    tabs: List[TabInfo] = field(default_factory=list)

    def element_by_label(self, label: int) -> Optional[ObservedElement]:
        for element in self.elements:
            if element.label == label:
                return element
        return None

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "url": self.url,
            "elements": [e.to_json() for e in self.elements],
            "tabs": [{"title": t.title, "url": t.url, "active": t.active}
                     for t in self.tabs],
        }

    def text_summary(self) -> str:
        lines = [f"[{e.label}] <{e.tag}> {e.text}"
                 + (" (in popup)" if e.in_popup else "")
                 for e in self.elements]
        return "\n".join(lines)


def detect_interactive_elements(session: BrowserSession):
    """Page-wide detection including open shadow roots and modal contents;
    an injection failure degrades to an empty list with a warning."""
    try:
        return session.detect_interactives()
    except Exception as exc:
        logger.warning("element detection script failed: %s", exc)
        return []


def assign_colors(count: int, seed: int) -> List[Tuple[int, int, int]]:
    """Seeded random palette assignment; consecutive labels always differ."""
    rng = random.Random(seed)
    colors: List[Tuple[int, int, int]] = []
    previous: Optional[Tuple[int, int, int]] = None
    for _ in range(count):
        options = [c for c in SOM_PALETTE if c != previous]
        choice = rng.choice(options)
        colors.append(choice)
        previous = choice
    return colors


def annotate_som(screenshot_png: bytes, detected, seed: int = 0
                 ) -> Tuple[bytes, List[ObservedElement]]:
    """Draw numbered boxes (labels at the top-left corner) over a screenshot.

    Returns the annotated PNG and the labeled elements, labels contiguous
    0..N-1 in detection order. Zero elements returns the screenshot unmodified.
    """
    elements = [
        ObservedElement(label=i, tag=d.tag, text=d.text, rect=tuple(d.rect),
                        in_popup=d.in_popup, handle=d.handle)
        for i, d in enumerate(detected)
    ]
    if not elements:
        return screenshot_png, []
    image = Image.open(io.BytesIO(screenshot_png)).convert("RGB")
    draw = ImageDraw.Draw(image)
    colors = assign_colors(len(elements), seed)
    for element, color in zip(elements, colors):
        element.color = color
        x, y, w, h = element.rect
        draw.rectangle([x, y, x + w - 1, y + h - 1], outline=color, width=2)
        tag = f"{element.label}"
        tw = 7 * len(tag) + 6
        draw.rectangle([x, y, x + tw, y + 14], fill=color)
        draw.text((x + 3, y + 2), tag, fill=(255, 255, 255))
    out = io.BytesIO()
    image.save(out, format="PNG")
    return out.getvalue(), elements


def observe(session: BrowserSession, step: int, seed: int = 0) -> Observation:
    detected = detect_interactive_elements(session)
    raw = session.screenshot()
    annotated, elements = annotate_som(raw, detected, seed=seed + step)
    return Observation(
        step=step,
        url=session.current_url(),
        screenshot_png=annotated,
        elements=elements,
        tabs=session.tabs(),
    )


def save_observation(observation: Observation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(observation.to_json(), fh, indent=2)
        fh.write("\n")
