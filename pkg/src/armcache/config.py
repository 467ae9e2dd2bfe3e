"""Experiment configuration and its default parameter values."""

from __future__ import annotations

from dataclasses import dataclass, fields

POLICIES = ("lru", "arm", "both")


@dataclass
class SimConfig:
    nodes: int = 10
    field_width: float = 500.0
    field_height: float = 500.0
    radio_range: float = 250.0
    catalog: int = 100
    cache_capacity: int = 10
    min_support: float = 0.8
    eta: float = 0.8
    gamma: float = 0.5
    ttl: int = 8
    mining_period: float = 100.0
    log_capacity: int = 50
    session_rate: float = 0.1
    per_hop_latency: float = 0.01
    duration: float = 5000.0
    seed: int = 1
    seeds: int = 1
    policy: str = "both"
    out: str = "out"

    def validate(self) -> None:
        if self.nodes < 1:
            raise ValueError("nodes must be >= 1")
        if self.field_width <= 0 or self.field_height <= 0:
            raise ValueError("field dimensions must be > 0")
        if self.radio_range < 0:
            raise ValueError("radio_range must be >= 0")
        if self.catalog < 1:
            raise ValueError("catalog must be >= 1")
        if self.cache_capacity < 1:
            raise ValueError("cache_capacity must be >= 1")
        if not 0 < self.min_support <= 1:
            raise ValueError("min_support must be in (0, 1]")
        if not 0 < self.eta <= 1:
            raise ValueError("eta must be in (0, 1]")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.ttl < 1:
            raise ValueError("ttl must be >= 1")
        if self.mining_period <= 0:
            raise ValueError("mining_period must be > 0")
        if self.log_capacity < 1:
            raise ValueError("log_capacity must be >= 1")
        if self.session_rate <= 0:
            raise ValueError("session_rate must be > 0")
        if self.per_hop_latency <= 0:
            raise ValueError("per_hop_latency must be > 0")
        if self.duration <= 0:
            raise ValueError("duration must be > 0")
        if self.seeds < 1:
            raise ValueError("seeds must be >= 1")
        if self.policy not in POLICIES:
            raise ValueError(f"policy must be one of {POLICIES}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


CONFIG_FIELDS = {f.name: f.type for f in fields(SimConfig)}
