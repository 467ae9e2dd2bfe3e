"""Per-request outcome accumulation and CSV serialization."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

CSV_HEADER = "index,time,node,item,hit,cum_hit_ratio,policy,seed"


@dataclass(slots=True)
class RequestOutcome:
    index: int
    time: float
    node: int
    item: int
    hit: bool
    first_reply_latency: float | None = None


@dataclass
class MetricsSet:
    policy: str
    seed: int
    outcomes: list[RequestOutcome] = field(default_factory=list)
    messages_sent: int = 0
    replies_delivered: int = 0
    hits: int = 0

    def record_request(self, node: int, item: int, hit: bool, time: float) -> RequestOutcome:
        out = RequestOutcome(len(self.outcomes) + 1, time, node, item, hit)
        self.outcomes.append(out)
        if hit:
            self.hits += 1
        return out

    @property
    def total_requests(self) -> int:
        return len(self.outcomes)

    @property
    def misses(self) -> int:
        return len(self.outcomes) - self.hits

    def cumulative_hit_ratio(self) -> list[float]:
        ratios = []
        hits = 0
        for k, out in enumerate(self.outcomes, start=1):
            if out.hit:
                hits += 1
            ratios.append(hits / k)
        return ratios

    def final_hit_ratio(self) -> float:
        if not self.outcomes:
            return 0.0
        return self.hits / len(self.outcomes)

    def mean_first_reply_latency(self) -> float | None:
        lats = [o.first_reply_latency for o in self.outcomes if o.first_reply_latency is not None]
        if not lats:
            return None
        return sum(lats) / len(lats)

    def write_csv(self, path) -> None:
        try:
            with open(path, "w", encoding="ascii", newline="") as fh:
                fh.write(CSV_HEADER + "\n")
                hits = 0
                for k, o in enumerate(self.outcomes, start=1):
                    if o.hit:
                        hits += 1
                    fh.write(
                        f"{k},{o.time:.6f},{o.node},{o.item},"
                        f"{1 if o.hit else 0},{hits / k:.6f},{self.policy},{self.seed}\n"
                    )
        except OSError as exc:
            raise OSError(f"cannot write metrics CSV {path}: {exc}") from exc


def load_csv(path) -> list[dict]:
    """Read a metrics CSV back into row dicts; raises ValueError naming the
    offending file and line on any schema violation."""
    rows = []
    expected = CSV_HEADER.split(",")
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise ValueError(f"{path}:1: bad header {header!r}")
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != len(expected):
                raise ValueError(f"{path}:{lineno}: expected {len(expected)} fields")
            try:
                rows.append(
                    {
                        "index": int(raw[0]),
                        "time": float(raw[1]),
                        "node": int(raw[2]),
                        "item": int(raw[3]),
                        "hit": int(raw[4]),
                        "cum_hit_ratio": float(raw[5]),
                        "policy": raw[6],
                        "seed": int(raw[7]),
                    }
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return rows
