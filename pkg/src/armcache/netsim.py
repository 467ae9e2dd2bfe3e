"""Deterministic discrete-event simulation of flooding query routing.

Nodes sit on a static unit-disk topology.  A query is served locally when
possible; otherwise a TTL-bounded request flood goes out, any node holding
the item floods back a reply, and every node a reply transits caches the
item before forwarding.  A per-node seen-set keeps floods from revisiting
nodes, so they terminate on cyclic graphs.

Scheduling note: a transmission to a neighbor that has already seen (or
already has a pending delivery of) the same message id is counted in
messages_sent but not enqueued.  With a constant per-hop latency the
earliest delivery of a message id always carries the largest remaining
TTL, so the elided deliveries would all be dropped by the seen-set anyway;
observable behavior is identical and dense floods stay tractable.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .cache import Cache, place_item
from .config import SimConfig
from .metrics import MetricsSet
from .mining import EMPTY_INDEX, TransactionLog, build_related_index, mine_frequent
from .seeding import child_rng
from .workload import (
    WorkloadConfig,
    build_request_trace,
    gen_correlation_matrix,
    schedule_sessions,
)

# Static (pre-scheduled) event kinds
_EV_SESSION = 0
_EV_MINE = 2

_REQUEST = 0
_REPLY = 1

# Mining a near-empty log is meaningless and can make every subset of a
# large transaction "frequent"; wait for a few closed transactions.
MIN_MINE_TRANSACTIONS = 3


@dataclass(frozen=True)
class Topology:
    node_count: int
    positions: tuple[tuple[float, float], ...]
    field: tuple[float, float]
    radio_range: float
    adjacency: tuple[tuple[int, ...], ...]


def build_topology(node_count: int, field: tuple[float, float], radio_range: float, rng) -> Topology:
    """Uniform random placement; nodes are adjacent iff within radio range."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if radio_range < 0:
        raise ValueError("radio_range must be >= 0")
    w, h = field
    positions = tuple((rng.random() * w, rng.random() * h) for _ in range(node_count))
    adjacency = [[] for _ in range(node_count)]
    for i in range(node_count):
        xi, yi = positions[i]
        for j in range(i + 1, node_count):
            xj, yj = positions[j]
            if math.dist((xi, yi), (xj, yj)) <= radio_range:
                adjacency[i].append(j)
                adjacency[j].append(i)
    return Topology(node_count, positions, field, radio_range, tuple(tuple(a) for a in adjacency))


def assign_origins(n_items: int, node_count: int, rng) -> list[int]:
    """Uniformly assign each item one authoritative origin node."""
    if n_items < 1 or node_count < 1:
        raise ValueError("n_items and node_count must be >= 1")
    return [rng.randrange(node_count) for _ in range(n_items)]


class NodeState:
    __slots__ = ("id", "cache", "log", "related", "seen", "pending", "origin_items", "waiting")

    def __init__(self, node_id: int, cache_capacity: int, log_capacity: int, gamma: float):
        self.id = node_id
        self.cache = Cache(cache_capacity)
        self.log = TransactionLog(log_capacity, gamma)
        self.related = EMPTY_INDEX
        self.seen: set[int] = set()
        self.pending: set[int] = set()
        self.origin_items: frozenset[int] = frozenset()
        self.waiting: dict[int, deque] = {}


@dataclass(frozen=True)
class SimInputs:
    """Everything random drawn up front, shared by paired policy runs."""

    matrix: object
    topology: Topology
    origins: list[int]
    trace: list[tuple[float, int, tuple[int, ...]]]


def build_inputs(config: SimConfig) -> SimInputs:
    matrix = gen_correlation_matrix(config.catalog, child_rng(config.seed, "matrix"))
    topology = build_topology(
        config.nodes,
        (config.field_width, config.field_height),
        config.radio_range,
        child_rng(config.seed, "topology"),
    )
    origins = assign_origins(config.catalog, config.nodes, child_rng(config.seed, "origins"))
    wl = WorkloadConfig(config.catalog, config.eta, config.session_rate, config.seed)
    schedule = schedule_sessions(wl, config.nodes, config.duration)
    trace = build_request_trace(wl, matrix, schedule)
    return SimInputs(matrix, topology, origins, trace)


class SimWorld:
    def __init__(
        self,
        config: SimConfig,
        policy: str,
        inputs: SimInputs,
        collect_trace: bool = False,
    ):
        self.config = config
        self.policy = policy
        self.topology = inputs.topology
        self.adjacency = inputs.topology.adjacency
        self.latency = config.per_hop_latency
        self.initial_ttl = config.ttl
        self.clock = 0.0
        self.metrics = MetricsSet(policy, config.seed)
        self.trace: list[tuple[float, int, str, int, int]] | None = [] if collect_trace else None
        self.delivered_hops: list[int] = [] if collect_trace else None

        self.nodes = [
            NodeState(i, config.cache_capacity, config.log_capacity, config.gamma)
            for i in range(config.nodes)
        ]
        by_origin: dict[int, set[int]] = {}
        for item, node in enumerate(inputs.origins):
            by_origin.setdefault(node, set()).add(item)
        for node, items in by_origin.items():
            self.nodes[node].origin_items = frozenset(items)

        self._next_msg_id = 0
        self._node_count = config.nodes
        # Nodes holding each live msg_id in seen|pending; once a message has
        # reached every node, forwards can't enqueue anything new and only
        # the transmission counter needs updating.
        self._reached: dict[int, int] = {}

        # Static events are known up front; deliveries are generated in
        # nondecreasing time order (constant per-hop latency), so a plain
        # FIFO stays sorted and the two streams merge without a heap.
        # Ties go to the static stream, matching global insertion order.
        self._static: list[tuple[float, int, object]] = [
            (t, _EV_SESSION, (node, items)) for t, node, items in inputs.trace
        ]
        period = config.mining_period
        for k in range(1, int(config.duration / period) + 1):
            self._static.append((k * period, _EV_MINE, None))
        self._static.sort(key=lambda e: e[0])  # stable: sessions before ticks on ties
        self._deliveries: deque = deque()

    def _flood(self, from_node: int, exclude: int, kind: int, msg_id: int, who: int, item: int, ttl: int, now: float) -> None:
        adjacent = self.adjacency[from_node]
        reached = self._reached
        if reached.get(msg_id, 0) >= self._node_count:
            # exclude, when set, is the sender and hence always adjacent
            self.metrics.messages_sent += len(adjacent) - (exclude >= 0)
            return
        nodes = self.nodes
        deliver_at = now + self.latency
        sent = 0
        for nb in adjacent:
            if nb == exclude:
                continue
            sent += 1
            st = nodes[nb]
            if msg_id in st.seen or msg_id in st.pending:
                continue
            st.pending.add(msg_id)
            reached[msg_id] += 1
            self._deliveries.append((deliver_at, nb, from_node, kind, msg_id, who, item, ttl))
        self.metrics.messages_sent += sent

    def issue_query(self, node: int, item: int, now: float) -> None:
        st = self.nodes[node]
        st.log.log_request(item, now)
        hit = st.cache.lookup(item, now) or item in st.origin_items
        outcome = self.metrics.record_request(node, item, hit, now)
        if self.trace is not None:
            self.trace.append((now, node, "issue", -1, item))
        if hit:
            return
        msg_id = self._next_msg_id
        self._next_msg_id += 1
        st.seen.add(msg_id)
        self._reached[msg_id] = 1
        st.waiting.setdefault(item, deque()).append(outcome)
        self._flood(node, -1, _REQUEST, msg_id, node, item, self.initial_ttl, now)

    def handle_message(self, node: int, sender: int, kind: int, msg_id: int, who: int, item: int, ttl: int, now: float) -> None:
        """Process one delivered message (seen-set dedupe already applied)."""
        st = self.nodes[node]
        if kind == _REQUEST:
            if st.cache.lookup(item, now) or item in st.origin_items:
                reply_id = self._next_msg_id
                self._next_msg_id += 1
                st.seen.add(reply_id)
                self._reached[reply_id] = 1
                self._flood(node, -1, _REPLY, reply_id, who, item, self.initial_ttl, now)
            elif ttl > 1:
                self._flood(node, sender, _REQUEST, msg_id, who, item, ttl - 1, now)
        else:  # reply: cache first, then forward or consume
            if item not in st.origin_items and not st.cache.lookup(item, now):
                place_item(st.cache, item, st.related, now, self.policy)
            if who == node:
                q = st.waiting.get(item)
                if q:
                    outcome = q.popleft()
                    outcome.first_reply_latency = now - outcome.time
                    self.metrics.replies_delivered += 1
            elif ttl > 1:
                self._flood(node, sender, _REPLY, msg_id, who, item, ttl - 1, now)

    def _mine_all(self, now: float) -> None:
        # The related index only depends on frequent pairs: by downward
        # closure every member of a larger frequent itemset already appears
        # in a frequent pair with each other member, so mining with
        # max_len=2 yields the identical index at a fraction of the cost.
        min_support = self.config.min_support
        for st in self.nodes:
            st.log.flush_session(now)
            txs = st.log.transactions()
            if len(txs) >= MIN_MINE_TRANSACTIONS:
                st.related = build_related_index(mine_frequent(txs, min_support, max_len=2))
        self._prune_dead_messages()

    def _prune_dead_messages(self) -> None:
        """Forget message ids with no in-flight deliveries.

        A message id only propagates while one of its deliveries is queued,
        so an id absent from the delivery queue can never be flooded or
        delivered again; dropping it from the seen-sets and the reach
        counters is invisible to the protocol and keeps memory bounded by
        the in-flight window instead of the whole run.
        """
        live = {d[4] for d in self._deliveries}
        for st in self.nodes:
            st.seen &= live
        self._reached = {m: c for m, c in self._reached.items() if m in live}

    def run(self) -> MetricsSet:
        duration = self.config.duration
        nodes = self.nodes
        trace = self.trace
        static = self._static
        deliveries = self._deliveries
        handle = self.handle_message
        s_idx = 0
        n_static = len(static)
        INF = math.inf
        while True:
            s_time = static[s_idx][0] if s_idx < n_static else INF
            d_time = deliveries[0][0] if deliveries else INF
            if s_time <= d_time:
                if s_time is INF or s_time > duration:
                    break
                now, kind, payload = static[s_idx]
                s_idx += 1
                self.clock = now
                if kind == _EV_SESSION:
                    node, items = payload
                    for item in items:
                        self.issue_query(node, item, now)
                else:
                    self._mine_all(now)
            else:
                if d_time > duration:
                    break
                now, target, sender, mkind, msg_id, who, item, ttl = deliveries.popleft()
                self.clock = now
                st = nodes[target]
                st.pending.discard(msg_id)
                if msg_id in st.seen:
                    continue
                st.seen.add(msg_id)
                if trace is not None:
                    trace.append((now, target, "request" if mkind == _REQUEST else "reply", msg_id, item))
                    self.delivered_hops.append(self.initial_ttl - ttl + 1)
                handle(target, sender, mkind, msg_id, who, item, ttl, now)
        return self.metrics


def run_policy(config: SimConfig, policy: str, inputs: SimInputs | None = None, collect_trace: bool = False) -> SimWorld:
    """Build and run one world; returns it with .metrics populated."""
    if inputs is None:
        inputs = build_inputs(config)
    world = SimWorld(config, policy, inputs, collect_trace=collect_trace)
    world.run()
    return world
