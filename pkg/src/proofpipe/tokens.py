"""Deterministic approximate token counter.

Every ledger in the package (completion results, scaffold traces, filter
floors) is denominated in the same frozen unit so that token totals are
reproducible bit-for-bit across runs and machines.

The rule: each whitespace-delimited word costs ``ceil(len(word) / 4)``
tokens, i.e. one token for the word plus one more per additional four
non-whitespace characters. The count is monotone in the number of words
and the empty string costs zero. The rule is an approximation of real
tokenizers, not a reimplementation of any of them; it exists to make
token accounting deterministic, and it must never change once results
have been recorded against it.
"""

from __future__ import annotations

import re

_WORD = re.compile(r"\S+")


def count_tokens(text: str) -> int:
    """Count tokens in ``text`` under the frozen word/4-chars rule."""
    total = 0
    for match in _WORD.finditer(text):
        total += (len(match.group()) + 3) // 4
    return total


def truncate_to_tokens(text: str, max_tokens: int) -> tuple[str, int, bool]:
    """Cut ``text`` so it costs at most ``max_tokens`` tokens.

    Returns ``(text, count, truncated)``. When truncation happens the
    returned prefix costs exactly ``max_tokens`` under :func:`count_tokens`;
    a word on the boundary is cut at a four-character multiple so the
    partial word accounts for precisely the remaining budget.
    """
    if max_tokens < 0:
        raise ValueError("max_tokens must be nonnegative")
    total = count_tokens(text)
    if total <= max_tokens:
        return text, total, False

    used = 0
    end = 0
    for match in _WORD.finditer(text):
        word_cost = (len(match.group()) + 3) // 4
        if used + word_cost <= max_tokens:
            used += word_cost
            end = match.end()
            if used == max_tokens:
                break
        else:
            remaining = max_tokens - used
            if remaining > 0:
                # word_cost > remaining implies len(word) > remaining * 4,
                # so this prefix is proper and costs exactly `remaining`.
                end = match.start() + remaining * 4
                used = max_tokens
            break
    return text[:end], used, True
