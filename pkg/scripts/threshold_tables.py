"""Vanishing thresholds: hypersurfaces in P^N and Fano complete intersections."""

import argparse
import time
from dataclasses import dataclass

from effint.constraints import fano_exceptions, hypersurface_exceptions, hypersurface_table, summarize_table


@dataclass
class ThresholdConfig:
    n_max: int = 100
    ci_n_max: int = 60


def main(cfg: ThresholdConfig):
    rows = summarize_table(hypersurface_table(cfg.n_max, cfg.n_max), cfg.n_max)
    print(f"hypersurfaces with all g >= 2 invariants vanishing (N <= {cfg.n_max}):")
    for d, lo, hi in rows[:6]:
        print(f"  d = {d}: N = {lo}..{hi}")
    print(f"  ... {len(rows)} degrees in total")

    print("\nFano hypersurfaces of degree >= 3 outside the threshold:")
    for e in hypersurface_exceptions(cfg.ci_n_max):
        note = "" if e.in_regime else "  (dimension < 4)"
        print(f"  d = {e.degrees[0]}, N = {e.n}{note}")

    start = time.perf_counter()
    found = fano_exceptions(cfg.ci_n_max)
    print(f"\nFano complete intersections of codimension >= 2 outside the threshold (N <= {cfg.ci_n_max}):")
    print("  " + ", ".join(str(ds) for ds in found))
    print(f"  scan time {time.perf_counter() - start:.3f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--ci-n-max", type=int, default=60)
    a = p.parse_args()
    main(ThresholdConfig(a.n_max, a.ci_n_max))
