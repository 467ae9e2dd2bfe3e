#!/usr/bin/env python3
"""Run the paired LRU-vs-ARM hit-ratio experiments and print a summary.

Reproduces the two headline configurations (10 nodes at the default 5000 s
duration, and 50 nodes at 1000 s) over a range of seeds, writing one
metrics CSV per (policy, seed) and a per-seed comparison table to stdout.

Usage:
    python scripts/compare_policies.py --out results/            # both setups
    python scripts/compare_policies.py --setup small --seeds 3   # quick look
"""

import argparse
import os
import sys
from dataclasses import replace
from statistics import mean

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from armcache.cli import run_experiment, summarize  # noqa: E402
from armcache.config import SimConfig  # noqa: E402

SETUPS = {
    "small": SimConfig(nodes=10, duration=5000.0),
    "large": SimConfig(nodes=50, duration=1000.0),
}


def run_setup(name, base, seed, seeds, out_root):
    out = os.path.join(out_root, name)
    config = replace(base, policy="both", seed=seed, seeds=seeds, out=out)
    rows = run_experiment(config)
    print(f"\n== {name}: {base.nodes} nodes, {base.duration:.0f}s, "
          f"seeds {seed}..{seed + seeds - 1} ==")
    paths = [os.path.join(out, f"{r.policy}_{r.seed}.csv") for r in rows]
    print(summarize(paths))
    by_seed = {}
    for r in rows:
        by_seed.setdefault(r.seed, {})[r.policy] = r.final_hit_ratio
    print("seed\tlru\tarm\tdelta")
    for s in sorted(by_seed):
        lru, arm = by_seed[s]["lru"], by_seed[s]["arm"]
        print(f"{s}\t{lru:.6f}\t{arm:.6f}\t{arm - lru:+.6f}")
    for policy in ("lru", "arm"):
        ratios = [r.final_hit_ratio for r in rows if r.policy == policy]
        print(f"{policy} mean final hit ratio: {mean(ratios):.6f}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--setup", choices=[*SETUPS, "both"], default="both")
    parser.add_argument("--seed", type=int, default=1, help="first seed")
    parser.add_argument("--seeds", type=int, default=10, help="number of paired seeds")
    parser.add_argument("--out", default="results", help="output directory root")
    args = parser.parse_args(argv)

    names = list(SETUPS) if args.setup == "both" else [args.setup]
    for name in names:
        run_setup(name, SETUPS[name], args.seed, args.seeds, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
