"""Scripted mock backends.

A :class:`MockScript` is an ordered list of rules. Each rule matches on
request tags and/or message substrings and yields canned replies. A rule
may carry several responses consumed in arrival order (repeating the last
or cycling), which is how tests script evolving behavior such as a
verifier that objects twice and then approves.

Determinism contract: the same script, seed, and request *sequence*
produce a byte-identical reply sequence. Rules with a single response are
pure functions of the request; multi-response rules advance an internal
cursor per matched call, so scripts that use them should be driven
serially if byte-level reproducibility matters.

Reply text supports three placeholders, all pure functions of the script
seed and the request, so they are safe under concurrency:

  ``{seed}``      the request's sampling seed (empty string when unseeded)
  ``{tag:KEY}``   the value of request tag KEY (empty when absent)
  ``{digest8}``   first 8 hex chars of a content digest of the messages
  ``{rand:N}``    deterministic pseudo-random int in [0, N) derived from
                  the script seed and the request content
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..errors import BackendRejectedError
from .types import BackendReply, CompletionRequest

_PLACEHOLDER = re.compile(r"\{(seed|digest8|tag:[^{}]+|rand:\d+)\}")


@dataclass(frozen=True)
class CannedReply:
    text: str
    prompt_tokens: int | None = None
    output_tokens: int | None = None
    latency_ms: int = 0


@dataclass(frozen=True)
class RuleMatch:
    """All listed conditions must hold; an empty match accepts everything."""

    tags: dict[str, str] = field(default_factory=dict)
    contains: tuple[str, ...] = ()

    def matches(self, request: CompletionRequest) -> bool:
        for key, value in self.tags.items():
            if request.tags.get(key) != value:
                return False
        if self.contains:
            text = request.joined_text()
            if not all(needle in text for needle in self.contains):
                return False
        return True


@dataclass
class MockRule:
    match: RuleMatch
    responses: list[CannedReply]
    repeat: str = "last"  # or "cycle"
    _cursor: int = field(default=0, repr=False)

    def next_reply(self) -> CannedReply:
        if self._cursor < len(self.responses):
            reply = self.responses[self._cursor]
            self._cursor += 1
            return reply
        if self.repeat == "cycle":
            reply = self.responses[self._cursor % len(self.responses)]
            self._cursor += 1
            return reply
        return self.responses[-1]


@dataclass
class MockScript:
    rules: list[MockRule] = field(default_factory=list)
    default: CannedReply | None = None
    seed: int = 0

    @classmethod
    def from_dict(cls, raw: dict) -> "MockScript":
        rules = []
        for entry in raw.get("rules", []):
            match_raw = entry.get("match", {})
            match = RuleMatch(
                tags=dict(match_raw.get("tags", {})),
                contains=tuple(
                    [match_raw["contains"]]
                    if isinstance(match_raw.get("contains"), str)
                    else match_raw.get("contains", [])
                ),
            )
            responses = [
                CannedReply(
                    text=r["text"],
                    prompt_tokens=r.get("prompt_tokens"),
                    output_tokens=r.get("output_tokens"),
                    latency_ms=r.get("latency_ms", 0),
                )
                for r in entry["responses"]
            ]
            rules.append(
                MockRule(match=match, responses=responses, repeat=entry.get("repeat", "last"))
            )
        default = None
        if "default" in raw:
            d = raw["default"]
            default = CannedReply(
                text=d["text"],
                prompt_tokens=d.get("prompt_tokens"),
                output_tokens=d.get("output_tokens"),
                latency_ms=d.get("latency_ms", 0),
            )
        return cls(rules=rules, default=default, seed=raw.get("seed", 0))

    @classmethod
    def load(cls, path: str | Path) -> "MockScript":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _render_placeholders(text: str, script_seed: int, request: CompletionRequest) -> str:
    if "{" not in text:
        return text

    def replace(match: re.Match) -> str:
        token = match.group(1)
        if token == "seed":
            seed = request.sampling.seed
            return "" if seed is None else str(seed)
        if token == "digest8":
            return _content_digest(request)[:8]
        if token.startswith("tag:"):
            return request.tags.get(token[4:], "")
        if token.startswith("rand:"):
            modulus = int(token[5:])
            basis = f"{script_seed}:{_content_digest(request)}"
            value = int.from_bytes(
                hashlib.sha256(basis.encode("utf-8")).digest()[:8], "big"
            )
            return str(value % max(1, modulus))
        return match.group(0)

    return _PLACEHOLDER.sub(replace, text)


def _content_digest(request: CompletionRequest) -> str:
    basis = "\x1e".join(f"{m.role}\x1f{m.text}" for m in request.messages)
    return hashlib.sha256(basis.encode("utf-8")).hexdigest()


class MockBackend:
    """Backend serving a :class:`MockScript`.

    Rule-cursor updates happen under a lock; rendering is pure, so
    single-response scripts are deterministic under any interleaving.
    """

    def __init__(self, script: MockScript):
        self.script = script
        self._lock = threading.Lock()

    def serve(self, request: CompletionRequest) -> BackendReply:
        reply = None
        for rule in self.script.rules:
            if rule.match.matches(request):
                with self._lock:
                    reply = rule.next_reply()
                break
        if reply is None:
            reply = self.script.default
        if reply is None:
            raise BackendRejectedError(
                f"mock script has no rule matching request tags={dict(request.tags)}"
            )
        return BackendReply(
            text=_render_placeholders(reply.text, self.script.seed, request),
            prompt_tokens=reply.prompt_tokens,
            output_tokens=reply.output_tokens,
            latency_ms=reply.latency_ms,
        )


class CallableBackend:
    """Backend delegating to a plain function; handy for bespoke test logic."""

    def __init__(self, fn: Callable[[CompletionRequest], BackendReply | str]):
        self._fn = fn

    def serve(self, request: CompletionRequest) -> BackendReply:
        reply = self._fn(request)
        if isinstance(reply, str):
            return BackendReply(text=reply)
        return reply
