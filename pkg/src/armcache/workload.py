"""Correlated request-traffic generation.

A binary correlation matrix drives per-seed candidate request sets; a
session includes each candidate independently with probability eta.
Session start times follow a per-node Poisson process.  All draws happen
in a documented fixed order (matrix row-major, candidates ascending) so
runs are reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .seeding import child_rng


@dataclass(frozen=True)
class CorrelationMatrix:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) != self.n or any(len(r) != self.n for r in self.rows):
            raise ValueError("correlation matrix must be n x n")


@dataclass(frozen=True)
class RequestSession:
    seed_item: int
    items: frozenset[int]
    issue_time: float


@dataclass(frozen=True)
class WorkloadConfig:
    n: int
    eta: float
    session_rate: float
    rng_seed: int

    def __post_init__(self):
        if not 0 <= self.eta <= 1:
            raise ValueError("eta must be in [0, 1]")
        if self.session_rate <= 0:
            raise ValueError("session_rate must be > 0")


def gen_correlation_matrix(n: int, rng) -> CorrelationMatrix:
    """Entry (i, j) is 1 iff a uniform draw r_ij >= 0.5; draws run row-major."""
    if n < 1:
        raise ValueError("catalog size must be >= 1")
    rows = tuple(
        tuple(1 if rng.random() >= 0.5 else 0 for _ in range(n)) for _ in range(n)
    )
    return CorrelationMatrix(n, rows)


def candidate_requests(matrix: CorrelationMatrix, d: int) -> set[int]:
    """{d} plus every item i whose matrix entry (i, d) is 1 (column read)."""
    cdr = {i for i in range(matrix.n) if matrix.rows[i][d] == 1}
    cdr.add(d)
    return cdr


def gen_session(
    matrix: CorrelationMatrix, d: int, eta: float, rng, now: float
) -> RequestSession:
    """Draw one session: each candidate (ascending id) joins iff its uniform
    draw is < eta.  An all-excluded draw falls back to just the seed item."""
    included = [i for i in sorted(candidate_requests(matrix, d)) if rng.random() < eta]
    if not included:
        included = [d]
    return RequestSession(d, frozenset(included), now)


def schedule_sessions(
    config: WorkloadConfig, node_count: int, duration: float
) -> list[tuple[int, int, float]]:
    """Per-node Poisson arrivals over [0, duration) with a uniform seed item
    each; returned as (node, seed_item, time) sorted by time then node.

    Each node draws from its own child generator derived from
    (rng_seed, node), so node streams are independent of node_count.
    """
    if duration <= 0:
        return []
    out = []
    for node in range(node_count):
        rng = child_rng(config.rng_seed, "arrivals", node)
        t = rng.expovariate(config.session_rate)
        while t < duration:
            out.append((node, rng.randrange(config.n), t))
            t += rng.expovariate(config.session_rate)
    out.sort(key=lambda e: (e[2], e[0]))
    return out


def build_request_trace(
    config: WorkloadConfig,
    matrix: CorrelationMatrix,
    schedule: list[tuple[int, int, float]],
) -> list[tuple[float, int, tuple[int, ...]]]:
    """Expand a schedule into concrete sessions: (time, node, items ascending).

    Session contents are drawn up front from per-node child generators so
    that paired policy runs see byte-identical request streams.
    """
    rngs = {}
    trace = []
    for node, d, t in schedule:
        rng = rngs.get(node)
        if rng is None:
            rng = rngs[node] = child_rng(config.rng_seed, "session", node)
        session = gen_session(matrix, d, config.eta, rng, t)
        trace.append((t, node, tuple(sorted(session.items))))
    return trace
