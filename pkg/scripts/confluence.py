"""Reduce random quintic tokens under several removal orders and compare."""

import argparse
import random
import time
from dataclasses import dataclass

from effint.genus1 import build_genus1
from effint.recursion import Marking, Token, random_chooser, reduce_to_basic
from effint.target import PRESETS


@dataclass
class ConfluenceConfig:
    tokens: int = 1000
    orders: int = 3
    seed: int = 7


def random_token(rng):
    if rng.random() < 0.2:
        g, beta, n2 = 1, 0, 0
    else:
        g = rng.randint(2, 4)
        beta = rng.randint(0, (2 * g - 2) // 5)
        n2 = 2 * g - 2 - 5 * beta
    units = rng.randint(1 if g == 1 else 0, 3)
    marks = [Marking(-2, 1, (("h", 1),) if rng.random() < 0.1 else ()) for _ in range(n2)]
    for _ in range(units):
        e = rng.choice([0, 0, 1, 1, 2])
        marks.append(Marking(-1, 1, (("h", e),) if e else ()))
    t = Token(g, (beta,), 5 * beta, tuple(marks))
    return t, max(0, units - t.insertion_codim())


def main(cfg: ConfluenceConfig):
    target = PRESETS["quintic"]()
    model = build_genus1(target)
    rng = random.Random(cfg.seed)
    mismatches = nonzero = 0
    start = time.perf_counter()
    for i in range(cfg.tokens):
        t, k = random_token(rng)
        results = [reduce_to_basic(target, t, k, chooser=random_chooser(i * 100 + s), model=model) for s in range(cfg.orders)]
        keys = [(r.constant, r.basic) for r in results]
        if any(x != keys[0] for x in keys):
            mismatches += 1
            print("mismatch:", t, k, [str(r) for r in results])
        nonzero += not results[0].is_zero
    print(f"{cfg.tokens} tokens, {cfg.orders} orders each: {mismatches} mismatches, {nonzero} nonzero")
    print(f"elapsed {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser()
    p.add_argument("--tokens", type=int, default=1000)
    p.add_argument("--orders", type=int, default=3)
    p.add_argument("--seed", type=int, default=7)
    a = p.parse_args()
    main(ConfluenceConfig(a.tokens, a.orders, a.seed))
