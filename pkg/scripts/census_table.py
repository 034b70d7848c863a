"""Counts of basic effective invariants per genus for the Calabi-Yau presets."""

import argparse
from dataclasses import dataclass

from effint.census import count_basic, enumerate_basic
from effint.target import PRESETS


@dataclass
class CensusConfig:
    g_min: int = 2
    g_max: int = 20
    targets: tuple[str, ...] = ("quintic", "x33", "x2222", "x24", "x223", "gr27")


def main(cfg: CensusConfig):
    names = list(cfg.targets)
    print("g    " + "  ".join(f"{n:>8}" for n in names))
    for g in range(cfg.g_min, cfg.g_max + 1):
        counts = [count_basic(PRESETS[n](), g) for n in names]
        print(f"{g:<4} " + "  ".join(f"{c:>8}" for c in counts))
    if "x24" in names:
        mixed = [len([b for b in enumerate_basic(PRESETS["x24"](), g) if b.mixed]) for g in range(cfg.g_min, cfg.g_max + 1)]
        print("\nX_{2,4} classes with fiber degree strictly between the sections:", mixed)


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--g-min", type=int, default=2)
    p.add_argument("--g-max", type=int, default=20)
    a = p.parse_args()
    main(CensusConfig(a.g_min, a.g_max))
