"""Per-node request logging and frequent-itemset mining.

Each node keeps a bounded circular log of transactions (bursts of item
requests separated by gaps larger than ``gamma``).  The log is mined
periodically with FP-Growth, and the mined itemsets are collapsed into a
per-item related-items index used by the cache replacement policy.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Transaction:
    """One closed request session: a deduplicated set of item ids."""

    items: frozenset[int]
    closed_at: float

    def __post_init__(self):
        if not self.items:
            raise ValueError("transaction must contain at least one item")


class TransactionLog:
    """Circular buffer of transactions plus the currently open session.

    A request extends the open session while the gap since the previous
    request is at most ``gamma``; a larger gap closes the session into a
    stored transaction.  When full, the oldest transaction is overwritten.
    """

    __slots__ = ("capacity", "gamma", "_entries", "_open_items", "_last_time")

    def __init__(self, capacity: int, gamma: float):
        if capacity < 1:
            raise ValueError("log capacity must be >= 1")
        if gamma < 0:
            raise ValueError("gamma must be >= 0")
        self.capacity = capacity
        self.gamma = gamma
        self._entries: deque[Transaction] = deque(maxlen=capacity)
        self._open_items: set[int] | None = None
        self._last_time = 0.0

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def open_session(self) -> tuple[set[int], float] | None:
        if self._open_items is None:
            return None
        return set(self._open_items), self._last_time

    def transactions(self) -> list[Transaction]:
        return list(self._entries)

    def log_request(self, item: int, now: float) -> None:
        if self._open_items is None:
            self._open_items = {item}
        elif now - self._last_time > self.gamma:
            self._entries.append(
                Transaction(frozenset(self._open_items), self._last_time)
            )
            self._open_items = {item}
        else:
            self._open_items.add(item)
        self._last_time = now

    def flush_session(self, now: float) -> None:
        """Close any open session so the miner never sees a partial one."""
        if self._open_items is None:
            return
        self._entries.append(Transaction(frozenset(self._open_items), self._last_time))
        self._open_items = None
        self._last_time = now


@dataclass
class FrequentItemSetTable:
    """All itemsets meeting the minimum support, with exact counts."""

    min_support: float
    total_transactions: int
    itemsets: dict[frozenset[int], int] = field(default_factory=dict)


@dataclass
class RelatedIndex:
    """Per-item sets of co-frequent items (symmetric, irreflexive)."""

    related: dict[int, frozenset[int]] = field(default_factory=dict)

    _EMPTY = frozenset()

    def get(self, item: int) -> frozenset[int]:
        return self.related.get(item, self._EMPTY)


EMPTY_INDEX = RelatedIndex()


def support_threshold(min_support: float, total: int) -> int:
    return math.ceil(min_support * total)


class _FPNode:
    __slots__ = ("item", "count", "parent", "children", "link")

    def __init__(self, item, parent):
        self.item = item
        self.count = 0
        self.parent = parent
        self.children = {}
        self.link = None


def _build_tree(weighted, threshold):
    """Build an FP-tree from (itemset, count) pairs.

    Returns the per-item support counts of frequent items and the header
    table mapping each frequent item to the head of its node-link chain.
    """
    counts = Counter()
    for items, cnt in weighted:
        for i in items:
            counts[i] += cnt
    frequent = {i: c for i, c in counts.items() if c >= threshold}
    if not frequent:
        return frequent, {}
    # Descending frequency, ties by ascending item id, for a deterministic tree.
    rank = {i: r for r, i in enumerate(sorted(frequent, key=lambda i: (-frequent[i], i)))}
    root = _FPNode(None, None)
    header: dict[int, _FPNode] = {}
    for items, cnt in weighted:
        path = sorted((i for i in items if i in rank), key=rank.__getitem__)
        node = root
        for i in path:
            child = node.children.get(i)
            if child is None:
                child = _FPNode(i, node)
                node.children[i] = child
                child.link = header.get(i)
                header[i] = child
            child.count += cnt
            node = child
    return frequent, header


def _mine(weighted, threshold, suffix, out, max_len):
    frequent, header = _build_tree(weighted, threshold)
    for item, support in frequent.items():
        itemset = suffix | {item}
        out[frozenset(itemset)] = support
        if max_len is not None and len(itemset) >= max_len:
            continue
        # Conditional pattern base: prefix paths above each occurrence.
        base = []
        node = header[item]
        while node is not None:
            path = []
            parent = node.parent
            while parent.item is not None:
                path.append(parent.item)
                parent = parent.parent
            if path:
                base.append((path, node.count))
            node = node.link
        if base:
            _mine(base, threshold, itemset, out, max_len)


def mine_frequent(
    transactions: list[Transaction], min_support: float, max_len: int | None = None
) -> FrequentItemSetTable:
    """FP-Growth mining: every nonempty itemset with support count >=
    ceil(min_support * len(transactions)), with its exact count.

    ``max_len`` restricts the result to itemsets of at most that size.  By
    downward closure the truncated family is the full family filtered by
    size, so callers needing only pairs avoid the (inherently exponential)
    full enumeration.
    """
    if not 0 < min_support <= 1:
        raise ValueError(f"min_support must be in (0, 1], got {min_support}")
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be >= 1 when given")
    total = len(transactions)
    table = FrequentItemSetTable(min_support, total)
    if total == 0:
        return table
    threshold = support_threshold(min_support, total)
    weighted = [(t.items, 1) for t in transactions]
    _mine(weighted, threshold, set(), table.itemsets, max_len)
    return table


def build_related_index(table: FrequentItemSetTable) -> RelatedIndex:
    """Collapse the mined family into per-item related sets: the union of
    all frequent itemsets containing the key, minus the key itself."""
    acc: dict[int, set[int]] = {}
    for itemset in table.itemsets:
        if len(itemset) < 2:
            continue
        for k in itemset:
            acc.setdefault(k, set()).update(itemset)
    return RelatedIndex({k: frozenset(v - {k}) for k, v in acc.items()})
