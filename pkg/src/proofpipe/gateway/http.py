"""Live chat-completion HTTP backend.

Speaks the common chat-completion wire format: POST a JSON body with a
model name, a ``messages`` array of ``{role, content}``, ``temperature``,
``max_tokens``, and optional ``seed``; read back ``choices[0].message.content``
plus a ``usage`` block with prompt/completion token counts. Auth is a
bearer token read from an environment variable named in the backend
config, so secrets never live in config files.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import requests

from ..errors import BackendRejectedError, BackendUnreachableError
from .types import BackendReply, CompletionRequest

_RETRYABLE_STATUS = {408, 429, 500, 502, 503, 504}


@dataclass(frozen=True)
class HttpBackendConfig:
    url: str
    model: str
    api_key_env: str | None = None
    timeout_s: float = 120.0


class HttpBackend:
    def __init__(self, config: HttpBackendConfig):
        self.config = config

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.config.api_key_env:
            token = os.environ.get(self.config.api_key_env, "")
            if not token:
                raise BackendRejectedError(
                    f"auth env var {self.config.api_key_env!r} is unset or empty"
                )
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def serve(self, request: CompletionRequest) -> BackendReply:
        body: dict = {
            "model": self.config.model,
            "messages": [{"role": m.role, "content": m.text} for m in request.messages],
            "temperature": request.sampling.temperature,
            "max_tokens": request.sampling.max_output_tokens,
        }
        if request.sampling.seed is not None:
            body["seed"] = request.sampling.seed

        started = time.monotonic()
        try:
            response = requests.post(
                self.config.url,
                json=body,
                headers=self._headers(),
                timeout=self.config.timeout_s,
            )
        except requests.RequestException as exc:
            raise BackendUnreachableError(f"transport failure: {exc}") from exc
        latency_ms = int((time.monotonic() - started) * 1000)

        if response.status_code in _RETRYABLE_STATUS:
            raise BackendUnreachableError(
                f"retryable status {response.status_code} from {self.config.url}"
            )
        if response.status_code != 200:
            raise BackendRejectedError(
                f"status {response.status_code} from {self.config.url}: "
                f"{response.text[:200]}"
            )

        try:
            data = response.json()
            content = data["choices"][0]["message"]["content"]
            usage = data.get("usage", {})
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise BackendRejectedError(f"malformed completion response: {exc}") from exc

        return BackendReply(
            text=content,
            prompt_tokens=usage.get("prompt_tokens"),
            output_tokens=usage.get("completion_tokens"),
            latency_ms=latency_ms,
        )
