/** MV3 service-worker entry: wires RecorderWorker to the extension APIs. */
import { RecorderWorker } from "./background.js";
import { Message } from "./protocol.js";

const worker = new RecorderWorker({
  captureScreenshot: () => chrome.tabs.captureVisibleTab(),
  download: async (filename, url) => {
    await chrome.downloads.download({ url, filename });
  },
  now: () => Date.now(),
});

chrome.runtime.onMessage.addListener((message, sender, sendResponse) => {
  const senderUrl = sender.tab?.url ?? sender.url;
  worker
    .handleMessage(message as Message, senderUrl)
    .then((reply) => sendResponse(reply))
    .catch((error) => sendResponse({ error: String(error) }));
  return true; // async response
});
