"""Model-backend clients: a generic HTTP chat-completions client plus the
deterministic mock used as the offline test oracle.

Credentials come from environment variables only:

    WEBSTATE_MODEL_ENDPOINT   chat-completions URL
    WEBSTATE_MODEL_API_KEY    bearer token
    WEBSTATE_MODEL_NAME       model identifier

Payloads are lists of parts: {"type": "text", "text": ...} or
{"type": "image", "png": <bytes>}.
"""

import base64
import os
from typing import Dict, List, Optional

import requests

ENDPOINT_VAR = "WEBSTATE_MODEL_ENDPOINT"
API_KEY_VAR = "WEBSTATE_MODEL_API_KEY"
MODEL_VAR = "WEBSTATE_MODEL_NAME"


class ModelClientError(Exception):
    pass


class ModelClient:
    """send() returns the model's raw text reply for one multimodal request."""

    model_id = "abstract"

    def send(self, system_prompt: str, payload: List[dict],
             metadata: Optional[Dict] = None) -> str:
        raise NotImplementedError


class HttpChatClient(ModelClient):
    """Chat-completions over HTTP; images are inlined as data URLs.

    Generation settings (temperature, reasoning effort) are passed through
    unchanged and recorded by callers in run metadata; nothing is enforced
    here.
    """

    def __init__(self, endpoint: Optional[str] = None,
                 api_key: Optional[str] = None, model: Optional[str] = None,
                 temperature: float = 1.0, timeout_s: float = 120.0,
                 extra_options: Optional[Dict] = None):
        self.endpoint = endpoint or os.environ.get(ENDPOINT_VAR, "")
        self.api_key = api_key or os.environ.get(API_KEY_VAR, "")
        self.model_id = model or os.environ.get(MODEL_VAR, "")
        self.temperature = temperature
        self.timeout_s = timeout_s
        self.extra_options = extra_options or {}
        if not self.endpoint or not self.model_id:
            raise ModelClientError(
                f"model endpoint/name not configured; set {ENDPOINT_VAR} and "
                f"{MODEL_VAR} (and {API_KEY_VAR})")

    def send(self, system_prompt: str, payload: List[dict],
             metadata: Optional[Dict] = None) -> str:
        content = []
        for part in payload:
            if part.get("type") == "image":
                encoded = base64.b64encode(part["png"]).decode("ascii")
                content.append({
                    "type": "image_url",
                    "image_url": {"url": f"data:image/png;base64,{encoded}"},
                })
            else:
                content.append({"type": "text", "text": part.get("text", "")})
        body = {
            "model": self.model_id,
            "temperature": self.temperature,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": content},
            ],
        }
        body.update(self.extra_options)
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        response = requests.post(self.endpoint, json=body, headers=headers,
                                 timeout=self.timeout_s)
        if response.status_code != 200:
            raise ModelClientError(
                f"model endpoint returned {response.status_code}: "
                f"{response.text[:500]}")
        data = response.json()
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise ModelClientError(f"unexpected response shape: {exc}") from exc


class StaticClient(ModelClient):
    """Replays canned replies in order; cycles on exhaustion. Test helper."""

    def __init__(self, replies: List[str], model_id: str = "static"):
        self.replies = list(replies)
        self.model_id = model_id
        self.calls = 0

    def send(self, system_prompt, payload, metadata=None) -> str:
        reply = self.replies[self.calls % len(self.replies)]
        self.calls += 1
        return reply


class FailingClient(ModelClient):
    """Always raises; exercises client-error vote handling."""

    def __init__(self, model_id: str = "failing"):
        self.model_id = model_id
        self.calls = 0

    def send(self, system_prompt, payload, metadata=None) -> str:
        self.calls += 1
        raise ModelClientError("simulated client failure")
