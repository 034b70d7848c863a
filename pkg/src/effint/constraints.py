"""Balancing, dimension counts, vanishing rules and ampleness thresholds.

Everything here is integer or exact rational arithmetic on pairing data;
no ring computations are involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidDataError, OutOfRegimeError
from .target import DiscreteData, SplitBundle, TargetSpec, log_degree


class Vanishing(enum.Enum):
    EMPTY = "empty"  # the moduli space itself is empty
    ZERO_CYCLE = "zero-cycle"  # the reduced cycle (or invariant) vanishes
    UNKNOWN = "unknown"

    @property
    def vanishes(self) -> bool:
        return self is not Vanishing.UNKNOWN


@dataclass(frozen=True)
class FeasibilityReport:
    balancing_defect: int
    feasible: bool
    all_minus_one_forced: bool
    red_vdim: int
    ci_vdim: int
    bound0: int
    log_degree: int
    vanish: Vanishing
    reasons: tuple[str, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "balancing_defect": self.balancing_defect,
            "feasible": self.feasible,
            "all_minus_one_forced": self.all_minus_one_forced,
            "red_vdim": self.red_vdim,
            "ci_vdim": self.ci_vdim,
            "bound0": self.bound0,
            "log_degree": self.log_degree,
            "vanish": self.vanish.value,
            "reasons": list(self.reasons),
        }


# -- balancing and dimensions -------------------------------------------------


def balancing(data: DiscreteData, target: TargetSpec) -> tuple[bool, int]:
    """``(holds, defect)`` with ``defect = sum(c_i + 1) - (t - (2g - 2))``."""
    t = log_degree(target, data)
    defect = sum(c + 1 for c in data.contacts) - (t - (2 * data.g - 2))
    return defect == 0, defect


def bound0(target: TargetSpec, g: int, beta: Sequence[int]) -> int:
    """Left side of the strict genus bound; its sign drives the vanishing rules."""
    return (3 - target.ambient.dim + target.rank) * (g - 1) - target.pair(target.kx_det, beta)


def ci_vdim(data: DiscreteData, target: TargetSpec) -> int:
    """Virtual dimension of stable maps to the complete intersection."""
    return bound0(target, data.g, data.beta) + data.n


def reduced_vdim(data: DiscreteData, target: TargetSpec) -> int:
    return ci_vdim(data, target) + target.rank * sum(c + 1 for c in data.contacts)


def reduced_vdim_infinity(data: DiscreteData, target: TargetSpec) -> int:
    """Same dimension computed on the projective bundle ``inf_X`` directly.

    Agrees with :func:`reduced_vdim` exactly when balancing holds.
    """
    t = log_degree(target, data)
    k_inf = -target.rank * t + target.pair(target.kx_det, data.beta)
    return (2 - target.dim_infinity) * (data.g - 1) - k_inf + data.n


def general_bound(target: TargetSpec, beta: Sequence[int], t: int) -> int:
    """``(3 - dim X + rk E) t - 2 <K_X (x) det E, beta>``; negative is good."""
    return (3 - target.ambient.dim + target.rank) * t - 2 * target.pair(target.kx_det, beta)


def effective_class(target: TargetSpec, beta: Sequence[int], t: int) -> bool:
    """Coordinate-cone effectivity on the projective bundle: ``t >= sum m_i beta_i``."""
    return all(b >= 0 for b in beta) and t >= target.pair(target.bundle.min_twist, beta)


# -- vanishing ----------------------------------------------------------------


def vanishing_check(
    data: DiscreteData,
    target: TargetSpec,
    insertion_degrees: Sequence[int] = (),
    k: int = 0,
) -> Vanishing:
    """Classify the reduced cycle with the given insertions.

    ``insertion_degrees[i]`` is the real cohomological degree of the class
    inserted at marking i (0 for no insertion, 2 for a divisor, ...).
    """
    return _classify(data, target, insertion_degrees)[0]


def _classify(data: DiscreteData, target: TargetSpec, insertion_degrees: Sequence[int]):
    degs = tuple(insertion_degrees) + (0,) * (data.n - len(insertion_degrees))
    if len(degs) != data.n:
        raise InvalidDataError("more insertions than markings")
    t = log_degree(target, data)
    ok, _ = balancing(data, target)
    if not ok:
        return Vanishing.EMPTY, ("balancing",)
    if not effective_class(target, data.beta, t):
        return Vanishing.EMPTY, ("effectivity",)
    if data.g == 0 and target.log_nef:
        return Vanishing.EMPTY, ("genus-0-nef",)
    if ci_vdim(data, target) < 0:
        return Vanishing.ZERO_CYCLE, ("general-type",)
    if bound0(target, data.g, data.beta) < 0:
        if target.ambient.h1_vanishes:
            return Vanishing.ZERO_CYCLE, ("bound-0", "h1-vanishes")
        if all(c <= -2 or (c == -1 and deg >= 2) for c, deg in zip(data.contacts, degs)):
            return Vanishing.ZERO_CYCLE, ("bound-0",)
    return Vanishing.UNKNOWN, ()


def analyze(
    data: DiscreteData,
    target: TargetSpec,
    insertion_degrees: Sequence[int] = (),
) -> FeasibilityReport:
    t = log_degree(target, data)
    ok, defect = balancing(data, target)
    vanish, reasons = _classify(data, target, insertion_degrees)
    red = reduced_vdim(data, target)
    if ok and red != reduced_vdim_infinity(data, target):
        raise AssertionError("dimension routes disagree on balanced data")
    return FeasibilityReport(
        balancing_defect=defect,
        feasible=ok,
        all_minus_one_forced=(t == 2 * data.g - 2),
        red_vdim=red,
        ci_vdim=ci_vdim(data, target),
        bound0=bound0(target, data.g, data.beta),
        log_degree=t,
        vanish=vanish,
        reasons=reasons,
    )


# -- thresholds ---------------------------------------------------------------


def hypersurface_threshold(d: int, n: int) -> bool:
    """Degree-d hypersurface in P^n: every g >= 2 effective invariant vanishes."""
    if n < 5:
        raise OutOfRegimeError(f"P^{n}: the hypersurface needs dimension >= 4 (n >= 5)")
    if d < 1:
        raise OutOfRegimeError("degree must be positive")
    return d * (n - 2) > 2 * n + 2


def ci_value(degrees: Sequence[int], n: int) -> Fraction:
    ds = sorted(degrees)
    return 3 - n + len(ds) + Fraction(2, ds[0]) * (n + 1 - sum(ds))


def ci_threshold(degrees: Sequence[int], n: int) -> bool:
    ds = sorted(degrees)
    if not ds or ds[0] < 2:
        raise OutOfRegimeError("complete-intersection degrees must all be >= 2")
    if sum(ds) > n:
        raise OutOfRegimeError(f"{tuple(ds)} in P^{n} is not Fano")
    if n - len(ds) < 4:
        raise OutOfRegimeError(f"{tuple(ds)} in P^{n} has dimension < 4")
    return ci_value(ds, n) < 0


def product_threshold(degrees: Sequence[int], dims: Sequence[int]) -> bool:
    """Hypersurface of multidegree ``degrees`` in a product of P^{N_i}."""
    if len(degrees) != len(dims):
        raise InvalidDataError("one degree per projective factor is required")
    total = sum(dims)
    if total < 5:
        raise OutOfRegimeError("sum of factor dimensions must be >= 5")
    return all(d * (total - 2) > 2 * n + 2 for d, n in zip(degrees, dims))


def grassmann_threshold(d: int, k: int, n: int) -> bool:
    """Degree-d Pluecker hypersurface in Gr(k, n)."""
    dim = k * (n - k)
    if dim < 5:
        raise OutOfRegimeError(f"Gr({k},{n}) has dimension {dim} < 5")
    return d * (dim - 2) > 2 * n


@dataclass(frozen=True)
class BartonData:
    m: Fraction
    m_prime: Fraction
    value: Fraction  # 3 - dim X + rk E + 2 m'/m

    @property
    def vanishes(self) -> bool:
        return self.m_prime >= 0 and self.value < 0


def barton(bundle: SplitBundle, dims: Sequence[int], ample: Sequence[int] | None = None) -> BartonData:
    """Barton-type invariants of ``E`` over a product of P^{N_i} w.r.t. ``A``."""
    dims = tuple(dims)
    ample = tuple(ample) if ample is not None else (1,) * len(dims)
    if len(ample) != len(dims) or any(a <= 0 for a in ample):
        raise InvalidDataError("the polarization must have positive entries")
    if not bundle.ample:
        raise InvalidDataError("E must be ample")
    m = min(Fraction(row[i], ample[i]) for row in bundle.degrees for i in range(len(dims)))
    det = bundle.det
    m_prime = max(Fraction(n + 1 - det[i], ample[i]) for i, n in enumerate(dims))
    value = 3 - sum(dims) + bundle.rank + 2 * m_prime / m
    return BartonData(m, m_prime, value)


# -- exception scans ------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionEntry:
    degrees: tuple[int, ...]
    n: int | None  # ambient dimension for single hypersurfaces
    in_regime: bool

    def as_dict(self) -> dict:
        return {"degrees": list(self.degrees), "n": self.n, "in_regime": self.in_regime}


def hypersurface_table(n_max: int = 100, d_max: int = 100, d_min: int = 3) -> list[tuple[int, int]]:
    """Fano pairs ``(d, n)`` with ``5 <= n <= n_max`` satisfying the threshold."""
    return [
        (d, n)
        for d in range(d_min, d_max + 1)
        for n in range(max(5, d), n_max + 1)
        if hypersurface_threshold(d, n)
    ]


def summarize_table(pairs: Sequence[tuple[int, int]], n_max: int) -> list[tuple[int, int, int]]:
    """Compress ``(d, n)`` pairs into rows ``(d, first n, last n)``."""
    rows: dict[int, list[int]] = {}
    for d, n in pairs:
        rows.setdefault(d, []).append(n)
    out = []
    for d in sorted(rows):
        ns = sorted(rows[d])
        if ns != list(range(ns[0], ns[-1] + 1)):
            raise AssertionError(f"threshold set for d={d} is not an interval")
        out.append((d, ns[0], ns[-1]))
    return out


def hypersurface_exceptions(n_max: int = 60) -> list[ExceptionEntry]:
    """Fano hypersurfaces of degree >= 3 where the threshold fails.

    Pairs with ``n < 5`` lie below the dimension-4 floor and are reported
    with ``in_regime = False``.  Quadrics never satisfy the threshold and
    are left out.
    """
    out = []
    for n in range(3, n_max + 1):
        for d in range(3, n + 1):
            if ci_value((d,), n) >= 0:
                out.append(ExceptionEntry((d,), n, n >= 5))
    return sorted(out, key=lambda e: (e.degrees, e.n))


def _tuples(max_sum: int, lo: int, prefix: tuple[int, ...], prefix_sum: int) -> Iterator[tuple[int, ...]]:
    for d in range(lo, max_sum - prefix_sum + 1):
        yield prefix + (d,)
        yield from _tuples(max_sum, d, prefix + (d,), prefix_sum + d)


def _worst_value(ds: tuple[int, ...], n_max: int) -> Fraction | None:
    """Largest threshold value over the admissible n (None if no n is admissible)."""
    n_min = max(sum(ds), len(ds) + 4)
    if n_min > n_max:
        return None
    # the value is non-increasing in n, so the smallest admissible n is worst
    return ci_value(ds, n_min)


def fano_exceptions(n_max: int = 60, min_rank: int = 2) -> list[tuple[int, ...]]:
    """Degree tuples (rank >= ``min_rank``) failing the threshold for some admissible n.

    Depth-first over sorted tuples; a branch is cut once its worst value is
    negative, since appending a degree lowers the value at every n by at
    least one and raises the smallest admissible n.
    """
    found = []

    def walk(prefix: tuple[int, ...], s: int):
        lo = prefix[-1] if prefix else 2
        for d in range(lo, n_max - s + 1):
            ds = prefix + (d,)
            worst = _worst_value(ds, n_max)
            if worst is None:
                break
            if worst >= 0 and len(ds) >= min_rank:
                found.append(ds)
            if worst >= 0 or len(ds) < min_rank:
                walk(ds, s + d)
            # with d growing the worst value can only drop further
            elif len(prefix) >= 1:
                break

    walk((), 0)
    return sorted(found, key=lambda ds: (len(ds), ds))


def fano_exceptions_bruteforce(n_max: int, min_rank: int = 2) -> list[tuple[int, ...]]:
    """Unpruned version of :func:`fano_exceptions` for validation."""
    found = []
    for ds in _tuples(n_max, 2, (), 0):
        if len(ds) < min_rank:
            continue
        for n in range(max(sum(ds), len(ds) + 4), n_max + 1):
            if not ci_threshold(ds, n):
                found.append(ds)
                break
    return sorted(found, key=lambda ds: (len(ds), ds))
