"""Exact graded quotient algebras for Chern/Segre class computations.

An algebra is generated by degree-homogeneous generators, each either
nilpotent (``x**(bound+1) == 0``) or, for at most one generator ``zeta``,
governed by the Grothendieck relation of a projective bundle P(F) of lines
in a split bundle F over the nilpotent part::

    sum_j c_j(F) * zeta**(rk - j) == 0,     zeta = c_1(O(1)).

Every arithmetic result is immediately rewritten into the finite monomial
basis, so elements compare structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Sequence

from .errors import NotAUnitError, ParseError, RingMismatchError, SpecificationError

RELATION = "relation"

DEFAULT_NORMALIZATION = Fraction(1, 24)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 1
    bound: int | str = 1  # largest surviving exponent, or RELATION


@dataclass(frozen=True)
class RingSpec:
    """Description of a graded algebra.

    ``bundle`` lists the first Chern classes of the line summands of F as
    linear forms ``{generator name: coefficient}`` in the nilpotent
    generators; it is required exactly when one generator has bound
    ``RELATION``.  ``hodge`` names the generator that plays the role of the
    Hodge class, whose top power is weighted by ``normalization`` in
    :meth:`GradedAlgebra.integrate`.
    """

    generators: tuple[Generator, ...]
    bundle: tuple[Mapping[str, int | Fraction], ...] | None = None
    hodge: str | None = None
    normalization: Fraction = DEFAULT_NORMALIZATION


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


class GradedElement:
    """Immutable element of a :class:`GradedAlgebra` in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "GradedAlgebra", terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            if other.ring is not self.ring:
                raise RingMismatchError("elements belong to different algebras")
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return GradedElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedElement(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        return self.ring._multiply(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)) or not other:
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            return self.ring.invert_unit(self) ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    @property
    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.unit_monomial, Fraction(0))

    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def homogeneous_part(self, degree: int) -> "GradedElement":
        return GradedElement(
            self.ring,
            {m: c for m, c in self.terms.items() if self.ring.monomial_degree(m) == degree},
        )

    def coefficient(self, monomial: Mapping[str, int] | tuple) -> Fraction:
        if not isinstance(monomial, tuple):
            monomial = self.ring.monomial(monomial)
        return self.terms.get(monomial, Fraction(0))

    def __repr__(self):
        return f"GradedElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        order = sorted(self.terms, key=lambda m: (-ring.monomial_degree(m), tuple(-e for e in m)))
        pieces = []
        for m in order:
            c = self.terms[m]
            word = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(ring.names, m)
                if e
            )
            mag = abs(c)
            if not word:
                body = str(mag)
            elif mag == 1:
                body = word
            else:
                body = f"{mag}*{word}"
            pieces.append(("-" if c < 0 else "+", body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


@dataclass(frozen=True)
class BundleDesc:
    """Split bundle given by the first Chern classes of its line summands."""

    summands: tuple[GradedElement, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for s in self.summands:
            if not s.is_homogeneous(1):
                raise SpecificationError(f"bundle summand {s} is not a degree-1 class")

    def __add__(self, other: "BundleDesc") -> "BundleDesc":
        return BundleDesc(self.summands + other.summands)

    @property
    def rank(self) -> int:
        return len(self.summands)


class GradedAlgebra:
    """Handle for the algebra described by a :class:`RingSpec`."""

    def __init__(self, spec: RingSpec):
        self.spec = spec
        gens = spec.generators
        if len({g.name for g in gens}) != len(gens):
            raise SpecificationError("duplicate generator names")
        self.names = tuple(g.name for g in gens)
        self.index = {n: i for i, n in enumerate(self.names)}
        self.degrees = tuple(g.degree for g in gens)
        for g in gens:
            if g.degree < 1:
                raise SpecificationError(f"generator {g.name} must have positive degree")
            if g.bound != RELATION and (not isinstance(g.bound, int) or g.bound < 1):
                raise SpecificationError(f"generator {g.name} needs a positive nilpotency bound")
        related = [i for i, g in enumerate(gens) if g.bound == RELATION]
        if len(related) > 1:
            raise SpecificationError("at most one generator may be governed by a relation")
        if bool(related) != (spec.bundle is not None):
            raise SpecificationError("a relation generator requires a bundle and vice versa")
        self.zeta = related[0] if related else None
        self.bounds = tuple(None if g.bound == RELATION else g.bound for g in gens)
        if spec.hodge is not None and spec.hodge not in self.index:
            raise SpecificationError(f"unknown Hodge generator {spec.hodge}")
        self.normalization = _as_fraction(spec.normalization)
        self.unit_monomial = (0,) * len(gens)
        self._cache: dict[tuple[tuple, tuple], dict] = {}

        if self.zeta is not None:
            if self.degrees[self.zeta] != 1:
                raise SpecificationError("the bundle generator must have degree 1")
            self.rank = len(spec.bundle)
            if self.rank < 1:
                raise SpecificationError("bundle must have rank >= 1")
            summands = []
            for form in spec.bundle:
                for name in form:
                    if name not in self.index or self.index[name] == self.zeta:
                        raise SpecificationError(f"bundle class refers to unknown base generator {name}")
                    if self.degrees[self.index[name]] != 1:
                        raise SpecificationError(
                            f"bundle class uses {name} of degree {self.degrees[self.index[name]]}; "
                            "the relation would not be homogeneous"
                        )
                summands.append(self.linear(form))
            self.bundle = BundleDesc(tuple(summands))
            self.bundle_chern = self.chern_twisted(self.bundle, self.zero)
            cs = [self.bundle_chern.homogeneous_part(j) for j in range(self.rank + 1)]
            # zeta**rk = -sum_{j>=1} c_j * zeta**(rk-j)
            self._zeta_powers = [self._zeta_monomial(e) for e in range(self.rank)]
            top = self.zero
            for j in range(1, self.rank + 1):
                top = top - self._base_times(cs[j], self._zeta_monomial(self.rank - j))
            self._zeta_powers.append(top)
        else:
            self.rank = None
            self.bundle = None
            self.bundle_chern = None

    # -- constructors -------------------------------------------------------

    @property
    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    @property
    def one(self) -> GradedElement:
        return GradedElement(self, {self.unit_monomial: Fraction(1)})

    def scalar(self, c) -> GradedElement:
        return GradedElement(self, {self.unit_monomial: _as_fraction(c)})

    def monomial(self, exps: Mapping[str, int]) -> tuple:
        m = [0] * len(self.names)
        for name, e in exps.items():
            m[self.index[name]] += e
        return tuple(m)

    def gen(self, name: str) -> GradedElement:
        return self.element({self.monomial({name: 1}): Fraction(1)})

    def linear(self, form: Mapping[str, int | Fraction]) -> GradedElement:
        return reduce(lambda a, b: a + b, (self.gen(n) * _as_fraction(c) for n, c in form.items()), self.zero)

    def element(self, terms: Mapping[tuple, int | Fraction]) -> GradedElement:
        """Normalize an arbitrary (possibly non-reduced) term map."""
        out = self.zero
        for m, c in terms.items():
            out = out + self._monomial_element(m) * _as_fraction(c)
        return out

    def monomial_degree(self, m: tuple) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    @property
    def top_degree(self) -> int:
        deg = sum(b * d for b, d in zip(self.bounds, self.degrees) if b is not None)
        if self.zeta is not None:
            deg += self.rank - 1
        return deg

    # -- normal forms -------------------------------------------------------

    def _zeta_monomial(self, e: int) -> GradedElement:
        m = [0] * len(self.names)
        m[self.zeta] = e
        return GradedElement(self, {tuple(m): Fraction(1)})

    def _fits(self, m: Sequence[int]) -> bool:
        return all(b is None or e <= b for e, b in zip(m, self.bounds))

    def _base_times(self, x: GradedElement, y: GradedElement) -> GradedElement:
        """Product where at most one factor carries zeta and no zeta overflow occurs."""
        out: dict[tuple, Fraction] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                m = tuple(i + j for i, j in zip(a, b))
                if self._fits(m):
                    out[m] = out.get(m, 0) + ca * cb
        return GradedElement(self, out)

    def _zeta_power(self, e: int) -> GradedElement:
        while len(self._zeta_powers) <= e:
            prev = self._zeta_powers[-1]
            nxt = self.zero
            for m, c in prev.terms.items():
                z = m[self.zeta]
                base = list(m)
                base[self.zeta] = 0
                base_el = GradedElement(self, {tuple(base): c})
                nxt = nxt + self._base_times(base_el, self._zeta_powers[z + 1])
            self._zeta_powers.append(nxt)
        return self._zeta_powers[e]

    def _monomial_element(self, m: tuple) -> GradedElement:
        if not self._fits(m):
            return self.zero
        if self.zeta is None or m[self.zeta] < self.rank:
            return GradedElement(self, {m: Fraction(1)})
        base = list(m)
        base[self.zeta] = 0
        return self._base_times(GradedElement(self, {tuple(base): Fraction(1)}), self._zeta_power(m[self.zeta]))

    def _multiply(self, x: GradedElement, y: GradedElement) -> GradedElement:
        out: dict[tuple, Fraction] = {}
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                key = (a, b) if a <= b else (b, a)
                prod = self._cache.get(key)
                if prod is None:
                    prod = self._monomial_element(tuple(i + j for i, j in zip(a, b))).terms
                    self._cache[key] = prod
                c = ca * cb
                for m, cm in prod.items():
                    out[m] = out.get(m, 0) + c * cm
        return GradedElement(self, out)

    # -- characteristic classes --------------------------------------------

    def invert_unit(self, x: GradedElement) -> GradedElement:
        """Inverse of an element with constant term 1 (finite geometric series)."""
        if x.constant_term != 1:
            raise NotAUnitError(f"{x} has constant term {x.constant_term}, not 1")
        nil = self.one - x
        result = self.one
        power = self.one
        for _ in range(self.top_degree):
            power = power * nil
            if not power:
                break
            result = result + power
        return result

    def chern_twisted(self, bundle: BundleDesc, twist: GradedElement | int = 0) -> GradedElement:
        """Total Chern class of ``bundle`` tensored with the line class ``twist``."""
        if not isinstance(twist, GradedElement):
            twist = self.scalar(twist)
        if not twist.is_homogeneous(1):
            raise SpecificationError(f"twist {twist} is not a degree-1 class")
        result = self.one
        for v in bundle.summands:
            result = result * (self.one + v + twist)
        return result

    def chern_kclass(self, num: BundleDesc, den: BundleDesc, twist: GradedElement | int = 0) -> GradedElement:
        """Total Chern class of the K-theory class ``(num - den) (x) twist``."""
        return self.chern_twisted(num, twist) * self.invert_unit(self.chern_twisted(den, twist))

    def segre_pushforward(self, x: GradedElement) -> GradedElement:
        """Push forward along P(F) -> base; the result has no zeta terms."""
        if self.zeta is None:
            raise SpecificationError("algebra carries no projective-bundle structure")
        target = self.rank - 1
        out = {}
        for m, c in x.terms.items():
            if m[self.zeta] == target:
                base = list(m)
                base[self.zeta] = 0
                out[tuple(base)] = c
        return GradedElement(self, out)

    def integrate(self, x: GradedElement) -> Fraction:
        """Degree of the top-dimensional part of ``x``."""
        if self.zeta is not None:
            x = self.segre_pushforward(x)
        top = tuple(b if b is not None else 0 for b in self.bounds)
        value = x.terms.get(top, Fraction(0))
        if self.spec.hodge is not None:
            value *= self.normalization
        return value

    # -- parsing ------------------------------------------------------------

    _TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")

    def parse(self, text: str) -> GradedElement:
        """Parse expressions such as ``"3/2*h1^2*zeta - lambda + 1"``."""
        src = text.replace("**", "^").strip()
        if not src:
            raise ParseError("empty expression")
        pos = 0
        total = self.zero
        while pos < len(src):
            match = self._TERM.match(src, pos)
            if not match or not match.group(2).strip():
                raise ParseError(f"cannot parse {text!r} at column {pos}")
            sign = -1 if match.group(1) == "-" else 1
            total = total + self._parse_product(match.group(2).strip(), text) * sign
            pos = match.end()
        return total

    def _parse_product(self, chunk: str, text: str) -> GradedElement:
        value = self.one
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"dangling '*' in {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                value = value * Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            name = name.strip()
            if name not in self.index:
                raise ParseError(f"unknown generator {name!r} in {text!r}")
            try:
                e = int(exp) if exp else 1
            except ValueError:
                raise ParseError(f"bad exponent {exp!r} in {text!r}") from None
            value = value * self.gen(name) ** e
        return value


def make_ring(spec: RingSpec) -> GradedAlgebra:
    return GradedAlgebra(spec)


def invert_unit(x: GradedElement) -> GradedElement:
    return x.ring.invert_unit(x)


def chern_twisted(bundle: BundleDesc, twist: GradedElement) -> GradedElement:
    return twist.ring.chern_twisted(bundle, twist)


def chern_kclass(num: BundleDesc, den: BundleDesc, twist: GradedElement) -> GradedElement:
    return twist.ring.chern_kclass(num, den, twist)


def segre_pushforward(x: GradedElement) -> GradedElement:
    return x.ring.segre_pushforward(x)


def integrate(x: GradedElement) -> Fraction:
    return x.ring.integrate(x)


def truncated_polynomial_ring(names: Iterable[str], bounds: Iterable[int], **kw) -> GradedAlgebra:
    """Shorthand for Q[x_1..x_k]/(x_i**(b_i+1)) with degree-1 generators."""
    gens = tuple(Generator(n, 1, b) for n, b in zip(names, bounds))
    return GradedAlgebra(RingSpec(gens, **kw))
