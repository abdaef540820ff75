"""Named seed derivation.

All randomness in a run flows from one root seed through named
derivations, so any module can be re-run in isolation and reproduce its
part of a larger run exactly.
"""

from __future__ import annotations

import hashlib


def derive_seed(root: int, *parts: str | int) -> int:
    """Derive a child seed from ``root`` and a named path.

    Stable across processes and platforms; returns a nonnegative 63-bit
    integer suitable for ``random.Random`` and request sampling seeds.
    """
    label = "/".join(str(p) for p in (root, *parts))
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
