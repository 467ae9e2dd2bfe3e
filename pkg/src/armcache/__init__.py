"""armcache: association-rule-aware cache replacement in a simulated ad-hoc network."""

from .cache import Cache, CacheSlot, EvictionRecord, POLICY_ARM, POLICY_LRU, lru_victim, place_item, residual_set
from .config import SimConfig
from .metrics import MetricsSet, RequestOutcome
from .mining import (
    FrequentItemSetTable,
    RelatedIndex,
    Transaction,
    TransactionLog,
    build_related_index,
    mine_frequent,
)
from .netsim import SimWorld, Topology, assign_origins, build_inputs, build_topology, run_policy
from .workload import (
    CorrelationMatrix,
    RequestSession,
    WorkloadConfig,
    candidate_requests,
    gen_correlation_matrix,
    gen_session,
    schedule_sessions,
)

__all__ = [
    "Cache", "CacheSlot", "EvictionRecord", "POLICY_ARM", "POLICY_LRU",
    "lru_victim", "place_item", "residual_set",
    "SimConfig", "MetricsSet", "RequestOutcome",
    "FrequentItemSetTable", "RelatedIndex", "Transaction", "TransactionLog",
    "build_related_index", "mine_frequent",
    "SimWorld", "Topology", "assign_origins", "build_inputs", "build_topology", "run_policy",
    "CorrelationMatrix", "RequestSession", "WorkloadConfig",
    "candidate_requests", "gen_correlation_matrix", "gen_session", "schedule_sessions",
]
