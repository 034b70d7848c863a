"""Genus-one effective cycles and invariants for the Calabi-Yau presets."""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from effint.genus1 import build_genus1, genus1_invariant
from effint.target import PRESETS


@dataclass
class GenusOneConfig:
    targets: tuple[str, ...] = ("quintic", "x33", "x24", "x223", "x2222")
    normalization: Fraction = Fraction(1, 24)


def main(cfg: GenusOneConfig):
    for name in cfg.targets:
        model = build_genus1(PRESETS[name](), cfg.normalization)
        gens = model.target.ambient.generators
        print(f"{model.target.name}")
        print(f"  red  = {model.red_cycle}")
        print(f"  vir  = {model.vir_cycle}")
        print(f"  vir == -rtilde psi_min red: {model.consistency_holds()}")
        print(f"  k=1: {genus1_invariant(model, 1)}   insertion {gens[0]}: {genus1_invariant(model, 0, [gens[0]])}")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--normalization", type=Fraction, default=Fraction(1, 24))
    a = p.parse_args()
    main(GenusOneConfig(normalization=a.normalization))
