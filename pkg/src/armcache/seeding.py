"""Deterministic child-seed derivation for independent RNG streams."""

import hashlib
import random


def child_seed(*parts) -> int:
    """Derive a stable 64-bit seed from a tuple of labels/ints.

    Uses sha256 so results are identical across platforms and Python
    hash randomization settings.
    """
    key = "/".join(str(p) for p in parts)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def child_rng(*parts) -> random.Random:
    return random.Random(child_seed(*parts))
