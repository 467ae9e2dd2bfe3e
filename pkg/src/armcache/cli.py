"""Experiment runner CLI.

`armcache run` executes seeded simulations for one or both policies and
writes one metrics CSV per run; `armcache summarize` aggregates CSVs into
a per-policy comparison table.  Exit codes: 0 success, 1 runtime failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import statistics
import sys
from dataclasses import dataclass, fields

from .config import POLICIES, SimConfig
from .metrics import load_csv
from .netsim import build_inputs, run_policy

_FLOAT_FIELDS = {
    "field_width", "field_height", "radio_range", "min_support", "eta",
    "gamma", "mining_period", "session_rate", "per_hop_latency", "duration",
}
_INT_FIELDS = {"nodes", "catalog", "cache_capacity", "ttl", "log_capacity", "seed", "seeds"}
_STR_FIELDS = {"policy", "out"}


@dataclass
class SummaryRow:
    policy: str
    seed: int
    final_hit_ratio: float
    total_requests: int
    total_messages: int
    mean_first_reply_latency: float | None


def _build_run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="armcache run",
        description="Run the cache-replacement comparison simulation.",
    )
    p.add_argument("--config", metavar="FILE", help="flat key = value config file")
    defaults = SimConfig()
    for f in fields(SimConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.name in _FLOAT_FIELDS:
            p.add_argument(flag, type=float, default=None, help=f"default {getattr(defaults, f.name)}")
        elif f.name in _INT_FIELDS:
            p.add_argument(flag, type=int, default=None, help=f"default {getattr(defaults, f.name)}")
        elif f.name == "policy":
            p.add_argument(flag, choices=POLICIES, default=None, help="default both")
        else:
            p.add_argument(flag, default=None, help=f"default {getattr(defaults, f.name)}")
    p.add_argument("--dump-schedule", metavar="DIR", default=None,
                   help="write the generated request schedule per seed (debug)")
    p.add_argument("--dump-trace", metavar="DIR", default=None,
                   help="write the full event trace per run (debug)")
    return p


def _parse_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected 'key = value'")
                key, _, raw = line.partition("=")
                key = key.strip()
                raw = raw.strip()
                if key in _FLOAT_FIELDS:
                    values[key] = float(raw)
                elif key in _INT_FIELDS:
                    values[key] = int(raw)
                elif key in _STR_FIELDS:
                    values[key] = raw
                else:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    return values


def parse_config(argv: list[str]) -> tuple[SimConfig, argparse.Namespace]:
    """Resolve a SimConfig: flags override file values override defaults."""
    parser = _build_run_parser()
    args = parser.parse_args(argv)
    values = {}
    if args.config:
        try:
            values.update(_parse_config_file(args.config))
        except ValueError as exc:
            parser.error(str(exc))
    for f in fields(SimConfig):
        flag_value = getattr(args, f.name)
        if flag_value is not None:
            values[f.name] = flag_value
    config = SimConfig(**values)
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    return config, args


def _echo_config(config: SimConfig) -> None:
    resolved = " ".join(f"{k}={v}" for k, v in config.as_dict().items())
    print(f"# config: {resolved}", file=sys.stderr)


def _dump_schedule(inputs, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("time,node,item\n")
        for t, node, items in inputs.trace:
            for item in items:
                fh.write(f"{t:.6f},{node},{item}\n")


def _dump_trace(world, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("time,node,event,msg_id,item\n")
        for t, node, kind, msg_id, item in world.trace:
            fh.write(f"{t:.6f},{node},{kind},{msg_id},{item}\n")


def run_experiment(config: SimConfig, dump_schedule: str | None = None, dump_trace: str | None = None) -> list[SummaryRow]:
    policies = ["lru", "arm"] if config.policy == "both" else [config.policy]
    os.makedirs(config.out, exist_ok=True)
    rows = []
    for seed in range(config.seed, config.seed + config.seeds):
        seeded = SimConfig(**{**config.as_dict(), "seed": seed})
        inputs = build_inputs(seeded)
        if dump_schedule:
            os.makedirs(dump_schedule, exist_ok=True)
            _dump_schedule(inputs, os.path.join(dump_schedule, f"schedule_{seed}.csv"))
        for policy in policies:
            world = run_policy(seeded, policy, inputs, collect_trace=dump_trace is not None)
            metrics = world.metrics
            metrics.write_csv(os.path.join(config.out, f"{policy}_{seed}.csv"))
            if dump_trace:
                os.makedirs(dump_trace, exist_ok=True)
                _dump_trace(world, os.path.join(dump_trace, f"trace_{policy}_{seed}.csv"))
            rows.append(
                SummaryRow(
                    policy,
                    seed,
                    metrics.final_hit_ratio(),
                    metrics.total_requests,
                    metrics.messages_sent,
                    metrics.mean_first_reply_latency(),
                )
            )
    return rows


def _print_summary_rows(rows: list[SummaryRow]) -> None:
    print("policy\tseed\tfinal_hit_ratio\trequests\tmessages\tmean_reply_latency")
    for r in rows:
        lat = f"{r.mean_first_reply_latency:.6f}" if r.mean_first_reply_latency is not None else "n/a"
        print(f"{r.policy}\t{r.seed}\t{r.final_hit_ratio:.6f}\t{r.total_requests}\t{r.total_messages}\t{lat}")


def summarize(paths: list[str]) -> str:
    """Aggregate metrics CSVs into a per-policy table plus an ARM-vs-LRU
    win count over seeds present for both policies."""
    if not paths:
        raise ValueError("no CSV files given")
    finals: dict[str, dict[int, float]] = {}
    for path in paths:
        rows = load_csv(path)
        if not rows:
            continue
        last = rows[-1]
        finals.setdefault(last["policy"], {})[last["seed"]] = last["cum_hit_ratio"]
    lines = ["policy  seeds  mean_final_ratio  sd_final_ratio"]
    for policy in sorted(finals):
        vals = list(finals[policy].values())
        lines.append(
            f"{policy:<6}  {len(vals):>5}  {statistics.fmean(vals):>16.6f}  {statistics.pstdev(vals):>14.6f}"
        )
    if "arm" in finals and "lru" in finals:
        shared = sorted(set(finals["arm"]) & set(finals["lru"]))
        wins = sum(1 for s in shared if finals["arm"][s] > finals["lru"][s])
        lines.append(f"arm wins {wins}/{len(shared)} paired seeds")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "summarize":
        try:
            print(summarize(argv[1:]))
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return 0
    if argv and argv[0] == "run":
        argv = argv[1:]
    config, args = parse_config(argv)
    _echo_config(config)
    try:
        rows = run_experiment(config, args.dump_schedule, args.dump_trace)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _print_summary_rows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
