"""Interpretation of the declarative ``data-fx-*`` fixture attributes.

The vocabulary (shared with fixtures.js for real-browser serving):

  data-fx-state-key      element bound to a persistent site-state key
  data-fx-toggle         visual encoding: aria-checked|aria-pressed|
                         aria-selected|checked|class (a-switch-active)
  data-fx-default        committed default when the store has no value
  data-fx-save           commit button; carries a-disabled when nothing is dirty
  data-fx-stuck          swallows clicks entirely
  data-fx-pointer-only   reacts to pointerdown instead of click
  data-fx-nav            click navigates the window to this path/URL
  data-fx-popup          click opens a popup window at the given URL
  data-fx-approve-login  (popup) commit auth for data-fx-site and close window
  data-fx-login-submit   commit auth when username+password are filled, then nav
  data-fx-signout        clear auth and navigate home
  data-fx-modal-open     reveal the modal with the given id (sets aria-expanded)
  data-fx-modal-close    hide the nearest enclosing [data-fx-modal]
  data-fx-reveal         toggle visibility of the element with the given id
  data-fx-requires-auth  hidden unless authenticated (auth prompt shown instead)
  data-fx-auth-marker    removed from the page unless authenticated
  data-fx-rerender       space-separated attrs rewritten with a per-load nonce
  data-fx-rerender-jitter (body) insert load-dependent dummy siblings
  data-fx-submit-flag    (form) records a page flag when actually submitted
  data-fx-append-on-click appends a text node to body (mutation source)
  data-fx-overlay        visual-only overlay; intercepts hit-tests by geometry
"""

from typing import Optional

from .nodes import Document, DomNode

ACTIVE_CLASS = "a-switch-active"
DISABLED_CLASS = "a-disabled"


class PageContext:
    """Everything a behavior handler may touch for one loaded page."""

    def __init__(self, session, window, document: Document, site_id: str,
                 store, load_count: int):
        self.session = session
        self.window = window
        self.document = document
        self.site_id = site_id
        self.store = store
        self.load_count = load_count
        self.has_save = False

    @property
    def drafts(self) -> dict:
        return self.document.flags.setdefault("drafts", {})

    def absolute(self, path: str) -> str:
        if path.startswith("http"):
            return path
        return self.document.origin + path


# -- style helpers -----------------------------------------------------------


def set_hidden(node: DomNode, hidden: bool) -> None:
    style = node.attrs.get("style", "")
    parts = [p for p in style.split(";") if p.strip()
             and not p.strip().startswith("display")]
    if hidden:
        parts.append("display:none")
    node.set_attr("style", ";".join(parts))


def is_hidden(node: DomNode) -> bool:
    return node.style.display == "none"


# -- logical element state -----------------------------------------------------


def toggle_kind(node: DomNode) -> str:
    kind = node.attrs.get("data-fx-toggle")
    if kind:
        return kind
    if node.tag == "input" and node.attrs.get("type") in ("checkbox", "radio"):
        return "checked"
    return "aria-checked"


def read_visual_state(node: DomNode) -> str:
    kind = toggle_kind(node)
    if kind == "checked":
        return "ON" if node.checked else "OFF"
    if kind == "class":
        return "ON" if ACTIVE_CLASS in node.classes else "OFF"
    return "ON" if node.attrs.get(kind) == "true" else "OFF"


def write_visual_state(node: DomNode, state: str) -> None:
    kind = toggle_kind(node)
    if kind == "checked":
        node.set_checked(state == "ON")
    elif kind == "class":
        if state == "ON":
            node.add_class(ACTIVE_CLASS)
        else:
            node.remove_class(ACTIVE_CLASS)
    else:
        node.set_attr(kind, "true" if state == "ON" else "false")


# -- hydration -----------------------------------------------------------------


def hydrate(ctx: PageContext) -> None:
    doc = ctx.document
    all_nodes = list(doc.root.iter_composed(include_closed_shadow=True))
    ctx.has_save = any("data-fx-save" in n.attrs for n in all_nodes)
    authed = bool(ctx.store.get(ctx.site_id, "auth", False))

    for node in all_nodes:
        attrs = node.attrs
        if "data-fx-rerender" in attrs:
            _apply_nonce(node, ctx.load_count)
        if "data-fx-auth-marker" in attrs and not authed:
            node.remove()
        if "data-fx-requires-auth" in attrs and not authed:
            set_hidden(node, True)
        if "data-fx-auth-prompt" in attrs and authed:
            set_hidden(node, True)
        if "data-fx-modal" in attrs and "data-fx-open" not in attrs:
            set_hidden(node, True)
        if "data-fx-reveal-target" in attrs:
            set_hidden(node, True)
        if "data-fx-save" in attrs:
            node.add_class(DISABLED_CLASS)

    body = doc.body()
    jitter = body.attrs.get("data-fx-rerender-jitter")
    if jitter:
        for i in range(ctx.load_count % (int(jitter) + 1)):
            pad = DomNode("div", {"class": "fx-pad"})
            first = body.children[0] if body.children else None
            if first is not None:
                body.insert_before(pad, first)
            else:
                body.append(pad)

    for node in all_nodes:
        key = node.attrs.get("data-fx-state-key")
        if not key or not node.is_connected():
            continue
        committed = ctx.store.get(ctx.site_id, key,
                                  node.attrs.get("data-fx-default", "ON"))
        if node.tag == "input" and node.attrs.get("type") == "radio":
            node.set_checked(committed == node.attrs.get("value"))
        elif node.tag == "input" and node.attrs.get("type", "text") == "text":
            node.set_value(str(committed))
        else:
            write_visual_state(node, committed)

    doc.mutations.clear()
    doc.mutation_seq = 0


def _apply_nonce(node: DomNode, load_count: int) -> None:
    nonce = f"n{load_count}"
    targets = node.attrs.get("data-fx-rerender", "").split()
    for attr in targets:
        if attr == "text":
            for child in node.children:
                if hasattr(child, "text"):
                    child.text = f"{child.text.strip()} {nonce}"
            continue
        base = node.attrs.get(attr)
        if base is not None:
            node.set_attr(attr, f"{base}-{nonce}")


# -- event dispatch --------------------------------------------------------------


def dispatch(ctx: PageContext, target: DomNode, event_type: str) -> None:
    """Bubble an event from target through its composed ancestors, running
    fixture behaviors and browser default actions."""
    if "data-fx-stuck" in target.attrs:
        # broken control: the page registers the click but state never moves
        count = int(target.attrs.get("data-fx-stuck-count", "0")) + 1
        target.set_attr("data-fx-stuck-count", str(count))
        return
    chain = [target] + list(target.ancestors())
    if event_type == "click":
        _default_click_state(ctx, target)
    for node in chain:
        _run_behaviors(ctx, node, target, event_type)
    if event_type == "click":
        _default_navigation(ctx, target)


def _default_click_state(ctx: PageContext, target: DomNode) -> None:
    if target.tag == "input" and target.attrs.get("type") == "checkbox":
        target.set_checked(not target.checked)
    elif target.tag == "input" and target.attrs.get("type") == "radio":
        name = target.attrs.get("name")
        if name:
            for other in ctx.document.root.iter_composed(include_closed_shadow=True):
                if other is not target and other.tag == "input" \
                        and other.attrs.get("name") == name:
                    other.set_checked(False)
        target.set_checked(True)


def _default_navigation(ctx: PageContext, target: DomNode) -> None:
    if target.tag == "a" and target.attrs.get("href") not in (None, "", "#") \
            and "data-fx-nav" not in target.attrs:
        ctx.session.navigate_window(ctx.window, ctx.absolute(target.attrs["href"]))


def _run_behaviors(ctx: PageContext, node: DomNode, target: DomNode,
                   event_type: str) -> None:
    attrs = node.attrs
    pointer_only = "data-fx-pointer-only" in attrs
    trigger = "pointerdown" if pointer_only else "click"

    if event_type == trigger:
        if "data-fx-state-key" in attrs and node is target:
            _handle_stateful_interaction(ctx, node)
        if "data-fx-save" in attrs:
            _commit_drafts(ctx, node)
        if "data-fx-append-on-click" in attrs:
            extra = DomNode("div", {"class": "fx-appended"})
            ctx.document.body().append(extra)
            clicks = int(node.attrs.get("data-fx-clicks", "0")) + 1
            node.set_attr("data-fx-clicks", str(clicks))
        if "data-fx-modal-open" in attrs:
            _show_by_id(ctx, attrs["data-fx-modal-open"], False)
            node.set_attr("aria-expanded", "true")
        if "data-fx-modal-close" in attrs:
            modal = _enclosing(node, "data-fx-modal")
            if modal is not None:
                set_hidden(modal, True)
        if "data-fx-reveal" in attrs:
            hidden_now = _toggle_by_id(ctx, attrs["data-fx-reveal"])
            node.set_attr("aria-expanded", "false" if hidden_now else "true")
        if "data-fx-login-submit" in attrs:
            _handle_login(ctx, node)
        if "data-fx-approve-login" in attrs:
            site = attrs.get("data-fx-site", ctx.site_id)
            ctx.store.set(site, "auth", True)
            ctx.session.close_window(ctx.window)
        if "data-fx-signout" in attrs:
            ctx.store.set(ctx.site_id, "auth", False)
            ctx.session.navigate_window(ctx.window, ctx.absolute("/"))
        if "data-fx-nav" in attrs:
            ctx.session.navigate_window(ctx.window, ctx.absolute(attrs["data-fx-nav"]))
        if "data-fx-popup" in attrs:
            ctx.session.open_window(ctx.absolute(attrs["data-fx-popup"]))
        if node.tag == "button" and attrs.get("type") == "submit" and node is target:
            form = _enclosing(node, None, tag="form")
            if form is not None and "data-fx-submit-flag" in form.attrs:
                ctx.document.flags[form.attrs["data-fx-submit-flag"]] = True
                form.set_attr("data-fx-submitted", "true")

    if event_type == "input" and node is target and "data-fx-state-key" in attrs:
        _record_state_change(ctx, node, node.value)


def _handle_stateful_interaction(ctx: PageContext, node: DomNode) -> None:
    if node.tag == "input" and node.attrs.get("type") == "radio":
        _record_state_change(ctx, node, node.attrs.get("value", ""))
        return
    if node.tag == "input" and node.attrs.get("type", "text") == "text":
        return  # text inputs change via input events, not clicks
    if toggle_kind(node) == "checked":
        new_state = "ON" if node.checked else "OFF"  # default action already ran
    else:
        new_state = "OFF" if read_visual_state(node) == "ON" else "ON"
        write_visual_state(node, new_state)
    _record_state_change(ctx, node, new_state)


def _record_state_change(ctx: PageContext, node: DomNode, value) -> None:
    key = node.attrs.get("data-fx-state-key")
    if not key:
        return
    if ctx.has_save:
        ctx.drafts[key] = value
        for other in ctx.document.root.iter_composed(include_closed_shadow=True):
            if "data-fx-save" in other.attrs:
                other.remove_class(DISABLED_CLASS)
    else:
        ctx.store.set(ctx.site_id, key, value)


def _commit_drafts(ctx: PageContext, save_button: DomNode) -> None:
    if DISABLED_CLASS in save_button.classes:
        return  # nothing dirty; disabled commit buttons are inert
    for key, value in ctx.drafts.items():
        ctx.store.set(ctx.site_id, key, value)
    ctx.drafts.clear()
    save_button.add_class(DISABLED_CLASS)


def _handle_login(ctx: PageContext, node: DomNode) -> None:
    doc_nodes = ctx.document.root.iter_composed(include_closed_shadow=True)
    fields = {n.attrs.get("name"): n for n in doc_nodes if n.tag == "input"}
    user = fields.get("username")
    password = fields.get("password")
    if user is not None and password is not None and user.value and password.value:
        ctx.store.set(ctx.site_id, "auth", True)
        ctx.session.navigate_window(ctx.window,
                                    ctx.absolute(node.attrs.get("data-fx-nav", "/")))


def _show_by_id(ctx: PageContext, ident: str, hidden: bool) -> None:
    for node in ctx.document.root.iter_composed(include_closed_shadow=True):
        if node.attrs.get("id") == ident:
            set_hidden(node, hidden)


def _toggle_by_id(ctx: PageContext, ident: str) -> bool:
    for node in ctx.document.root.iter_composed(include_closed_shadow=True):
        if node.attrs.get("id") == ident:
            now_hidden = not is_hidden(node)
            set_hidden(node, now_hidden)
            return now_hidden
    return True


def _enclosing(node: DomNode, attr: Optional[str], tag: Optional[str] = None
               ) -> Optional[DomNode]:
    for candidate in [node] + list(node.ancestors()):
        if candidate.tag == "#shadow":
            continue
        if attr is not None and attr in candidate.attrs:
            return candidate
        if tag is not None and candidate.tag == tag:
            return candidate
    return None
