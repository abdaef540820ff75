"""Request/response types for the completion gateway."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Protocol, runtime_checkable

from ..errors import RequestInvalidError

ROLES = ("system", "user", "assistant")

# Response cap used for RL-style sampling when a caller does not override it.
DEFAULT_MAX_OUTPUT_TOKENS = 50_000

DEFAULT_TEMPERATURE = 1.0


@dataclass(frozen=True)
class Message:
    role: str
    text: str


@dataclass(frozen=True)
class Sampling:
    temperature: float = DEFAULT_TEMPERATURE
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS
    seed: int | None = None


@dataclass(frozen=True)
class CompletionRequest:
    """One completion call against a registered backend.

    ``tags`` are free-form key/value pairs used for tracing and for mock
    script matching; they never reach live backends' request bodies.
    """

    backend_id: str
    messages: tuple[Message, ...]
    sampling: Sampling = Sampling()
    tags: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.backend_id:
            raise RequestInvalidError("backend_id must be non-empty")
        if not self.messages:
            raise RequestInvalidError("messages must be non-empty")
        for msg in self.messages:
            if msg.role not in ROLES:
                raise RequestInvalidError(
                    f"message role {msg.role!r} not in {ROLES}"
                )
        if self.sampling.max_output_tokens < 1:
            raise RequestInvalidError("max_output_tokens must be >= 1")
        if self.sampling.temperature < 0:
            raise RequestInvalidError("temperature must be >= 0")

    def joined_text(self) -> str:
        return "\n".join(m.text for m in self.messages)


def request(
    backend_id: str,
    messages: list[tuple[str, str]] | list[Message],
    *,
    temperature: float = DEFAULT_TEMPERATURE,
    max_output_tokens: int = DEFAULT_MAX_OUTPUT_TOKENS,
    seed: int | None = None,
    tags: Mapping[str, str] | None = None,
) -> CompletionRequest:
    """Convenience constructor accepting ``(role, text)`` pairs."""
    msgs = tuple(
        m if isinstance(m, Message) else Message(role=m[0], text=m[1])
        for m in messages
    )
    return CompletionRequest(
        backend_id=backend_id,
        messages=msgs,
        sampling=Sampling(temperature, max_output_tokens, seed),
        tags=dict(tags or {}),
    )


@dataclass(frozen=True)
class CompletionResult:
    text: str
    prompt_tokens: int
    output_tokens: int
    truncated: bool
    latency_ms: int
    cache_hit: bool = False

    def payload(self) -> dict:
        """Everything except delivery metadata; the unit of cache identity."""
        return {
            "text": self.text,
            "prompt_tokens": self.prompt_tokens,
            "output_tokens": self.output_tokens,
            "truncated": self.truncated,
            "latency_ms": self.latency_ms,
        }


@dataclass(frozen=True)
class BackendReply:
    """Raw reply from a backend before the gateway normalizes it.

    Token counts are optional: when absent the gateway derives them from
    the deterministic counter and applies the request's output cap. When
    present (a live server's usage block, or a scripted override) they are
    treated as attested and the reply text is left untouched.
    """

    text: str
    prompt_tokens: int | None = None
    output_tokens: int | None = None
    latency_ms: int = 0


@runtime_checkable
class Backend(Protocol):
    def serve(self, request: CompletionRequest) -> BackendReply: ...
