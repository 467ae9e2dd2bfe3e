"""Fixed-capacity cache with LRU and correlation-aware (ARM) replacement.

The ARM policy shields items related to the incoming one: the eviction
victim is chosen by LRU over the residual set (cached items not related
to the new item), falling back to plain LRU when the residual is empty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .mining import RelatedIndex

POLICY_LRU = "lru"
POLICY_ARM = "arm"


@dataclass(frozen=True)
class CacheSlot:
    item: int
    last_touch: float


@dataclass(frozen=True)
class EvictionRecord:
    evicted: int | None
    slot_index: int


class Cache:
    __slots__ = ("capacity", "_items", "_touch", "_pos")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("cache capacity must be >= 1")
        self.capacity = capacity
        self._items: list[int] = []
        self._touch: list[float] = []
        self._pos: dict[int, int] = {}  # item -> slot index

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, item: int) -> bool:
        return item in self._pos

    @property
    def slots(self) -> list[CacheSlot]:
        return [CacheSlot(i, t) for i, t in zip(self._items, self._touch)]

    def items(self) -> set[int]:
        return set(self._items)

    def lookup(self, item: int, now: float) -> bool:
        """True iff item is cached; a hit refreshes its last-touch time."""
        idx = self._pos.get(item)
        if idx is None:
            return False
        self._touch[idx] = now
        return True


def residual_set(cache: Cache, related_to_d: frozenset[int] | set[int]) -> set[int]:
    """Cached items left after removing those related to the incoming item."""
    return {i for i in cache._items if i not in related_to_d}


def lru_victim(cache: Cache, candidates: set[int]) -> int:
    """Slot index of the least recently used candidate; ties go to the
    lower slot index.  Candidates must be nonempty and all cached."""
    assert candidates, "lru_victim requires a nonempty candidate set"
    best = -1
    best_touch = None
    for idx, item in enumerate(cache._items):
        if item in candidates:
            t = cache._touch[idx]
            if best_touch is None or t < best_touch:
                best = idx
                best_touch = t
    assert best >= 0, "lru_victim candidates must all be cached"
    return best


def place_item(
    cache: Cache,
    item: int,
    index: RelatedIndex,
    now: float,
    policy: str,
) -> EvictionRecord:
    """Insert a not-yet-cached item, evicting per the selected policy."""
    assert item not in cache._pos, "place_item requires an uncached item"
    items = cache._items
    if len(items) < cache.capacity:
        items.append(item)
        cache._touch.append(now)
        cache._pos[item] = len(items) - 1
        return EvictionRecord(None, len(items) - 1)

    touch = cache._touch
    if policy == POLICY_ARM:
        related = index.get(item)
        victim = -1
        best_touch = None
        if related:
            for idx, cached in enumerate(items):
                if cached in related:
                    continue
                t = touch[idx]
                if best_touch is None or t < best_touch:
                    victim = idx
                    best_touch = t
        if victim < 0:  # empty residual (or no related info): plain LRU
            victim = min(range(len(items)), key=touch.__getitem__)
    elif policy == POLICY_LRU:
        victim = min(range(len(items)), key=touch.__getitem__)
    else:
        raise ValueError(f"unknown policy {policy!r}")

    evicted = items[victim]
    del cache._pos[evicted]
    items[victim] = item
    touch[victim] = now
    cache._pos[item] = victim
    return EvictionRecord(evicted, victim)
