/* Full info snapshot for one element (arguments[0]). */
(function () {
  "use strict";
  var el = arguments[0];
  var ws = window.__ws;
  var attrs = {};
  for (var i = 0; i < el.attributes.length; i++)
    attrs[el.attributes[i].name] = el.attributes[i].value;
  var rect = el.getBoundingClientRect();
  var visible = rect.width > 0 && rect.height > 0 && rect.bottom > 0
    && rect.right > 0 && rect.top < window.innerHeight
    && rect.left < window.innerWidth;
  var parent = el.parentElement;
  return {
    tag: el.tagName.toLowerCase(),
    attrs: attrs,
    text: ws.normalize(el.textContent),
    label_text: ws.labelText(el),
    sibling_text: ws.siblingText(el),
    parent_text: parent ? ws.normalize(parent.textContent).slice(0, 200) : "",
    value: el.value !== undefined ? String(el.value) : "",
    checked: !!el.checked,
    css_path: ws.cssPath(el),
    xpath: ws.xPath(el),
    outer_html: el.outerHTML,
    rect: visible ? [Math.round(rect.left), Math.round(rect.top),
                     Math.round(rect.width), Math.round(rect.height)] : null,
  };
})();
