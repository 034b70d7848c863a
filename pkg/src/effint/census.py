"""Index sets of basic effective invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .constraints import bound0
from .errors import InvalidDataError
from .target import DiscreteData, TargetSpec


@dataclass(frozen=True, order=True)
class BasicIndex:
    g: int
    beta: tuple[int, ...]
    t: int
    n: int
    mixed: bool = False  # fiber degree strictly between the extreme sections

    def data(self) -> DiscreteData:
        return DiscreteData(self.g, self.beta, (-2,) * self.n, log_degree=self.t)

    def as_dict(self) -> dict:
        return {"g": self.g, "beta": list(self.beta), "t": self.t, "n": self.n, "mixed": self.mixed}


def enumerate_basic(target: TargetSpec, g: int) -> list[BasicIndex]:
    """All ``(g, beta)`` carrying a basic effective invariant, sorted by beta.

    Classes on the projective bundle are parameterized by ``beta_X`` and the
    log degree ``t``; effectivity is ``t >= sum_i m_i beta_i`` with ``m_i``
    the smallest twist of E along the i-th coordinate.
    """
    if g < 2:
        raise InvalidDataError("basic effective invariants live in genus >= 2")
    m = target.bundle.min_twist
    if any(x <= 0 for x in m):
        raise InvalidDataError("E must be ample for a finite census")
    top = 2 * g - 2
    big = target.bundle.max_twist
    out = []
    for beta in itertools.product(*(range(top // mi + 1) for mi in m)):
        low = target.pair(m, beta)
        if low > top or bound0(target, g, beta) != 0:
            continue
        if target.rank == 1:
            t = target.pair(target.bundle.degrees[0], beta)
            if t > top:
                continue
            out.append(BasicIndex(g, beta, t, top - t))
        else:
            mixed = low < top < target.pair(big, beta)
            out.append(BasicIndex(g, beta, top, 0, mixed))
    return sorted(out)


def count_basic(target: TargetSpec, g: int) -> int:
    return len(enumerate_basic(target, g))
