/** Content script (runs in every frame): keeps the interaction index fresh
 * and streams captured gestures to the service worker. */
import { GestureCapture } from "./capture.js";
import { InteractionIndexer } from "./indexer.js";

const indexer = new InteractionIndexer(document);
indexer.observe();

const capture = new GestureCapture(window, (event) => {
  void chrome.runtime.sendMessage({ type: "event", payload: event });
});
capture.install();
