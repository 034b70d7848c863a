"""String, divisor and dilaton rewriting of effective invariants.

An invariant is a pair ``(Token, k)``: the token records genus, curve class,
log degree and the markings with their insertions, ``k`` is the power of
psi_min.  Insertions are monomials in the generators of ``inf_X`` plus the
symbol ``psi_DF`` (the divisorial class at a marking).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .census import BasicIndex
from .constraints import balancing, bound0, ci_vdim, reduced_vdim
from .errors import InvalidDataError, ReductionNotGuaranteedError, UnsupportedTokenError
from .series import LaurentSeries, expand_pole, product
from .target import DiscreteData, TargetSpec, log_degree

PSI_DF = "psi_DF"

Monomial = tuple  # sorted tuple of (generator name, exponent)


def monomial(spec: str | Mapping[str, int] | Monomial | None) -> Monomial:
    """Normalize ``"h^2*zeta"``, ``{"h": 2}`` or pairs into a sorted tuple."""
    if spec is None or spec == "" or spec == "1":
        return ()
    if isinstance(spec, str):
        exps: dict[str, int] = {}
        for factor in spec.replace("**", "^").split("*"):
            name, _, e = factor.strip().partition("^")
            if not name:
                raise InvalidDataError(f"bad monomial {spec!r}")
            try:
                exps[name] = exps.get(name, 0) + (int(e) if e else 1)
            except ValueError:
                raise InvalidDataError(f"bad exponent in {spec!r}") from None
        spec = exps
    items = dict(spec).items() if isinstance(spec, Mapping) else spec
    merged: dict[str, int] = {}
    for name, e in items:
        if e < 0:
            raise InvalidDataError("negative exponent in an insertion")
        if e:
            merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return monomial(tuple(a) + tuple(b))


def codim(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


@dataclass(frozen=True, order=True)
class Marking:
    contact: int
    order: int = 1
    insertion: Monomial = ()

    def __str__(self):
        tag = f"{self.contact}" if self.order == 1 else f"{self.contact}/{self.order}"
        return tag if not self.insertion else f"{tag}[{mono_str(self.insertion)}]"


@dataclass(frozen=True, order=True)
class Token:
    g: int
    beta: tuple[int, ...]
    t: int
    markings: tuple[Marking, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "markings", tuple(sorted(self.markings)))

    @classmethod
    def from_data(cls, target: TargetSpec, data: DiscreteData, insertions: Sequence = ()) -> "Token":
        ins = list(insertions) + [None] * (data.n - len(insertions))
        if len(ins) != data.n:
            raise InvalidDataError("more insertions than markings")
        marks = tuple(Marking(c, r, monomial(a)) for c, r, a in zip(data.contacts, data.orders, ins))
        return cls(data.g, tuple(data.beta), log_degree(target, data), marks)

    @property
    def n(self) -> int:
        return len(self.markings)

    def data(self) -> DiscreteData:
        return DiscreteData(
            self.g,
            self.beta,
            tuple(m.contact for m in self.markings),
            tuple(m.order for m in self.markings),
            self.t,
        )

    def without(self, i: int) -> "Token":
        return Token(self.g, self.beta, self.t, self.markings[:i] + self.markings[i + 1 :])

    def with_insertion(self, i: int, extra: Monomial) -> "Token":
        m = self.markings[i]
        new = Marking(m.contact, m.order, mono_mul(m.insertion, extra))
        return Token(self.g, self.beta, self.t, self.markings[:i] + (new,) + self.markings[i + 1 :])

    def insertion_codim(self) -> int:
        return sum(codim(m.insertion) for m in self.markings)

    def __str__(self):
        beta = ",".join(map(str, self.beta))
        return f"<g={self.g} beta=({beta}) t={self.t} | {' '.join(map(str, self.markings))}>"


Key = tuple  # (Token, k)


class Combination(dict):
    """Finite rational combination of ``(Token, k)`` keys."""

    def add(self, key: Key, coeff) -> None:
        c = self.get(key, Fraction(0)) + Fraction(coeff)
        if c:
            self[key] = c
        else:
            self.pop(key, None)

    def __add__(self, other: "Combination") -> "Combination":
        out = Combination(self)
        for key, c in other.items():
            out.add(key, c)
        return out

    def __sub__(self, other: "Combination") -> "Combination":
        return self + other.scaled(-1)

    def scaled(self, c) -> "Combination":
        out = Combination()
        for key, v in self.items():
            out.add(key, v * Fraction(c))
        return out

    def sorted_items(self):
        return sorted(self.items(), key=lambda kv: (kv[0][0], kv[0][1]))


def pairing(target: TargetSpec, token: Token, name: str) -> Fraction:
    """``int_beta D`` for a generator D of ``inf_X`` (or psi_DF restricted to it)."""
    gens = target.ambient.generators
    if name in gens:
        return Fraction(token.beta[gens.index(name)])
    if name == "zeta":
        return Fraction(token.t)
    if name == PSI_DF:
        return Fraction(-token.t)
    raise UnsupportedTokenError(f"unknown divisor {name!r}")


def _is_unit(target: TargetSpec | None, m: Marking) -> bool:
    if target is None:
        return m.contact == -1 and m.order == 1
    return m.contact == -target.d and m.order == target.r


def _weights(token: Token, skip: int):
    for j, m in enumerate(token.markings):
        if j != skip:
            yield j, Fraction(abs(m.contact), m.order)


def reduce_string(token: Token, k: int, unit: int | None = None, target: TargetSpec | None = None) -> Combination:
    """Forget a unit marking without insertion."""
    unit = _find_unit(token, unit, target, want_codim=0)
    rest = token.without(unit)
    out = Combination()
    for j, w in _weights(token, unit):
        jr = j - 1 if j > unit else j
        for kp in range(k):
            out.add((rest.with_insertion(jr, ((PSI_DF, kp),)), k - 1 - kp), w)
    return out


def reduce_divisor(token: Token, k: int, target: TargetSpec, unit: int | None = None) -> Combination:
    """Forget a unit marking carrying a single divisor insertion."""
    unit = _find_unit(token, unit, target, want_codim=1)
    (name, _), = token.markings[unit].insertion
    rest = token.without(unit)
    out = Combination()
    coeff = pairing(target, token, name)
    if coeff:
        out.add((rest, k), coeff)
    for j, w in _weights(token, unit):
        jr = j - 1 if j > unit else j
        for kp in range(k):
            out.add((rest.with_insertion(jr, ((name, 1), (PSI_DF, kp))), k - 1 - kp), w)
    return out


def _find_unit(token: Token, unit: int | None, target: TargetSpec | None, want_codim: int) -> int:
    candidates = [
        i
        for i, m in enumerate(token.markings)
        if _is_unit(target, m) and codim(m.insertion) == want_codim
    ]
    if unit is None:
        if not candidates:
            raise InvalidDataError(f"{token} has no unit marking with a codimension-{want_codim} insertion")
        return candidates[-1]
    if unit not in candidates:
        raise InvalidDataError(f"marking {unit} of {token} is not a suitable unit marking")
    return unit


def dilaton_factor(target: TargetSpec, token: Token) -> Fraction:
    """``(d/r)(2g - 2 + n)`` for the token with the unit marking removed."""
    return Fraction(target.d, target.r) * (2 * token.g - 2 + token.n)


def dilaton_combination(token: Token, k: int, target: TargetSpec) -> Combination:
    """String minus divisor(psi_DF) for ``token`` plus one unit marking.

    The result is ``(-int psi_DF + sum |c_j|/r_j) [token, k-1]``; when
    balancing holds the scalar equals :func:`dilaton_factor`.
    """
    if k < 1:
        raise InvalidDataError("the dilaton combination needs k >= 1")
    unit = Marking(-target.d, target.r)
    plain = Token(token.g, token.beta, token.t, token.markings + (unit,))
    marked = Token(token.g, token.beta, token.t, token.markings + (Marking(-target.d, target.r, ((PSI_DF, 1),)),))
    return reduce_string(plain, k, target=target) - reduce_divisor(marked, k - 1, target)


def dilaton_scalar(target: TargetSpec, token: Token) -> Fraction:
    return -pairing(target, token, PSI_DF) + sum(Fraction(abs(m.contact), m.order) for m in token.markings)


# -- reduction to basic invariants -------------------------------------------


@dataclass
class Reduction:
    constant: Fraction = Fraction(0)
    basic: dict = field(default_factory=dict)  # BasicIndex -> coefficient
    trace: list = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return not self.constant and not self.basic

    def scaled_add(self, other: "Reduction", c: Fraction) -> None:
        self.constant += c * other.constant
        for sym, v in other.basic.items():
            total = self.basic.get(sym, Fraction(0)) + c * v
            if total:
                self.basic[sym] = total
            else:
                self.basic.pop(sym, None)

    def as_dict(self) -> dict:
        from .target import rational_to_json

        return {
            "constant": rational_to_json(self.constant),
            "basic": [
                {"symbol": sym.as_dict(), "coefficient": rational_to_json(c)}
                for sym, c in sorted(self.basic.items())
            ],
            "trace": list(self.trace),
        }

    def __str__(self):
        parts = [f"{c} * B(g={s.g}, beta={list(s.beta)})" for s, c in sorted(self.basic.items())]
        if self.constant or not parts:
            parts.insert(0, str(self.constant))
        return " + ".join(parts)


class InvariantLedger:
    """Memo of reduced invariants with one provenance line per entry."""

    def __init__(self):
        self.entries: dict[Key, Reduction] = {}
        self.trace: list[str] = []

    def record(self, key: Key, result: Reduction, note: str) -> Reduction:
        self.entries[key] = result
        self.trace.append(f"{key[0]} k={key[1]}: {note}")
        return result


Chooser = Callable[[list], int]


def first_choice(options: list) -> int:
    return 0


def random_chooser(seed: int) -> Chooser:
    rng = random.Random(seed)
    return lambda options: rng.randrange(len(options))


def reduce_to_basic(
    target: TargetSpec,
    token: Token,
    k: int = 0,
    *,
    chooser: Chooser = first_choice,
    model=None,
    ledger: InvariantLedger | None = None,
) -> Reduction:
    """Express ``(token, k)`` through basic symbols and genus-one values."""
    ledger = ledger if ledger is not None else InvariantLedger()
    engine = _Engine(target, chooser, model, ledger)
    result = engine.reduce(token, k)
    out = Reduction(result.constant, dict(result.basic), list(ledger.trace))
    return out


class _Engine:
    def __init__(self, target: TargetSpec, chooser: Chooser, model, ledger: InvariantLedger):
        self.target = target
        self.chooser = chooser
        self.model = model
        self.ledger = ledger

    def _zero(self, key, rule):
        return self.ledger.record(key, Reduction(), f"zero ({rule})")

    def reduce(self, token: Token, k: int) -> Reduction:
        key = (token, k)
        if key in self.ledger.entries:
            return self.ledger.entries[key]
        target = self.target
        for m in token.markings:
            for name, _ in m.insertion:
                if name != PSI_DF and name != "zeta" and name not in target.ambient.generators:
                    raise UnsupportedTokenError(f"unknown insertion generator {name!r} in {token}")
        data = token.data()
        if not balancing(data, target)[0]:
            return self._zero(key, "balancing")
        if token.g == 0 and target.log_nef:
            return self._zero(key, "genus-0-nef")
        if k + token.insertion_codim() != reduced_vdim(data, target):
            return self._zero(key, "dimension")
        if token.g == 1:
            return self._genus_one(token, k)
        if ci_vdim(data, target) < 0:
            return self._zero(key, "general-type")
        b0 = bound0(target, token.g, token.beta)
        if b0 > 0 or not target.ambient.h1_vanishes:
            raise ReductionNotGuaranteedError(
                f"{token}: reduction to basic invariants needs H^1(inf_X) = 0 and a non-positive genus bound"
                f" (bound = {b0})",
                self.ledger.trace,
            )
        if b0 < 0:
            return self._zero(key, "bound-0")
        return self._genus_high(token, k)

    def _removable(self, token: Token) -> list[tuple[int, str]]:
        out = []
        for i, m in enumerate(token.markings):
            if not _is_unit(self.target, m):
                continue
            c = codim(m.insertion)
            if c == 0:
                out.append((i, "string"))
            elif c == 1:
                out.append((i, "divisor"))
        # identical markings give identical rewrites
        seen, unique = set(), []
        for i, kind in out:
            if token.markings[i] not in seen:
                seen.add(token.markings[i])
                unique.append((i, kind))
        return unique

    def _rewrite(self, token: Token, k: int, i: int | None, kind: str) -> Reduction:
        if kind == "string":
            combo = reduce_string(token, k, i, self.target)
        else:
            combo = reduce_divisor(token, k, self.target, i)
        result = Reduction()
        for (tok, kk), c in combo.sorted_items():
            if (tok.n, kk) >= (token.n, k):
                raise AssertionError("rewrite did not decrease the (n, k) measure")
            result.scaled_add(self.reduce(tok, kk), c)
        return result

    def _genus_high(self, token: Token, k: int) -> Reduction:
        key = (token, k)
        options = self._removable(token)
        if options:
            i, kind = options[self.chooser(options)]
            result = self._rewrite(token, k, i, kind)
            return self.ledger.record(key, result, f"{kind} at marking {i}")
        rank = self.target.rank
        basic = k == 0 and not token.insertion_codim() and (
            (rank == 1 and all(m.contact == -2 and m.order == 1 for m in token.markings))
            or (rank >= 2 and token.n == 0)
        )
        if not basic:
            raise UnsupportedTokenError(f"{token} with psi power {k} is neither basic nor reducible")
        sym = BasicIndex(token.g, token.beta, token.t, token.n)
        return self.ledger.record(key, Reduction(Fraction(0), {sym: Fraction(1)}), "basic")

    def _genus_one(self, token: Token, k: int) -> Reduction:
        key = (token, k)
        if any(token.beta) or token.t or any(m.contact != -1 or m.order != 1 for m in token.markings):
            raise ReductionNotGuaranteedError(
                f"{token}: genus-one closed formulas need beta = 0 and untwisted unit contacts", self.ledger.trace
            )
        if token.n == 0:
            raise UnsupportedTokenError("genus one without markings is unstable")
        # all evaluation maps agree: gather insertions at one marking
        total: Monomial = ()
        for m in token.markings:
            total = mono_mul(total, m.insertion)
        gathered = Token(1, token.beta, 0, (Marking(-1, 1, total),) + (Marking(-1, 1),) * (token.n - 1))
        if token.n > 1:
            if gathered != token:
                result = self.reduce(gathered, k)
                return self.ledger.record(key, result, "gather insertions")
            result = self._rewrite(gathered, k, None, "string")
            return self.ledger.record(key, result, "string (genus one)")
        value = self._evaluate_one(total, k)
        return self.ledger.record(key, Reduction(value), f"genus-one value {value}")

    def _evaluate_one(self, insertion: Monomial, k: int) -> Fraction:
        from .genus1 import build_genus1, genus1_invariant

        if self.model is None:
            self.model = build_genus1(self.target)
        ring = self.model.ring
        alpha = ring.one
        for name, e in insertion:
            gen = -ring.gen("zeta") if name == PSI_DF else ring.gen(name)
            alpha = alpha * gen**e
        return genus1_invariant(self.model, k, [alpha])


# -- root change, disconnected assembly, push-forward ------------------------


def rescale_roots(value, k: int, ell: int, inverse: bool = False):
    """Invariant on the ell-th root target -> invariant on the base (factor ell^(1+k))."""
    if ell < 1 or k < 0:
        raise InvalidDataError("need ell >= 1 and k >= 0")
    factor = Fraction(ell) ** (1 + k)
    return value / factor if inverse else value * factor


def connected_series(value, psi, rtilde=1, order: int | None = None, canonical: bool = False) -> LaurentSeries:
    """``rtilde t value / (-t - psi)`` (or ``value / (-t - psi)`` when canonical)."""
    if canonical:
        return expand_pole("-", psi, order).scale(value)
    base = expand_pole("-", psi, None if order is None else order + 1)
    return base.shift(1).scale(value * Fraction(rtilde))


def assemble_disconnected(parts: Sequence[LaurentSeries]) -> LaurentSeries:
    """Series of a disconnected source: product of the connected series."""
    return product(list(parts))


def pushforward_min_check(m: int, order: int = 12, base_dims: Sequence[int] | None = None) -> bool:
    """Blow-down identity for ``P(O(e_1) + ... + O(e_m))`` over a product of P^N.

    The push-forward of ``1/(-t - zeta)`` is compared coefficientwise with
    ``prod_i 1/(-t + e_i)``.
    """
    from .ring import RELATION, Generator, GradedAlgebra, RingSpec

    if m < 1:
        raise InvalidDataError("m must be positive")
    dims = tuple(base_dims) if base_dims is not None else (1,) * m
    if len(dims) != m:
        raise InvalidDataError("one base factor per summand")
    names = [f"h{i + 1}" for i in range(m)]
    gens = tuple(Generator(n, 1, d) for n, d in zip(names, dims)) + (Generator("zeta", 1, RELATION),)
    ring = GradedAlgebra(RingSpec(gens, bundle=tuple({n: 1} for n in names)))
    lhs = expand_pole("-", ring.gen("zeta"), order).map(ring.segre_pushforward)
    rhs = product([expand_pole("-", -ring.gen(n), order) for n in names])
    return lhs.equals(rhs, order)
