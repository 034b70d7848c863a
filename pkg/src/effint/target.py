"""Targets of punctured R-maps: ambient space, split bundle, root data.

Curve classes are recorded in pairing coordinates: ``beta[i]`` is the
degree of the class against the i-th line-bundle generator of the ambient
space.  On the projective bundle the extra coordinate is the degree
``t`` of the class against the log line bundle O(1).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import InvalidDataError, ParseError, SpecificationError


@dataclass(frozen=True)
class AmbientSpace:
    name: str
    dim: int
    canonical: tuple[int, ...]  # pairing of c_1(K_X) with each coordinate
    generators: tuple[str, ...]
    h1_vanishes: bool = True
    dims: tuple[int, ...] | None = None  # factor dimensions for products of P^N

    def __post_init__(self):
        if not self.generators:
            raise SpecificationError("ambient space needs at least one curve coordinate")
        if len(self.canonical) != len(self.generators):
            raise SpecificationError("canonical pairing length differs from curve rank")
        if self.dims is not None:
            if len(self.dims) != len(self.generators) or sum(self.dims) != self.dim:
                raise SpecificationError("factor dimensions inconsistent with dim")
            if self.canonical != tuple(-n - 1 for n in self.dims):
                raise SpecificationError("canonical pairing of a product of P^N must be (-N_i - 1)")

    @property
    def curve_rank(self) -> int:
        return len(self.generators)

    @property
    def chow_supported(self) -> bool:
        return self.dims is not None


def projective_product(dims: Sequence[int], names: Sequence[str] | None = None) -> AmbientSpace:
    dims = tuple(int(n) for n in dims)
    if any(n < 1 for n in dims):
        raise SpecificationError("projective factors must have positive dimension")
    if names is None:
        names = ("h",) if len(dims) == 1 else tuple(f"h{i + 1}" for i in range(len(dims)))
    label = " x ".join(f"P^{n}" for n in dims)
    return AmbientSpace(label, sum(dims), tuple(-n - 1 for n in dims), tuple(names), True, dims)


@dataclass(frozen=True)
class SplitBundle:
    degrees: tuple[tuple[int, ...], ...]  # one pairing vector per line summand

    def __post_init__(self):
        if not self.degrees:
            raise SpecificationError("bundle rank must be at least 1")
        if len({len(d) for d in self.degrees}) != 1:
            raise SpecificationError("summand degree vectors have different lengths")

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def det(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.degrees))

    @property
    def min_twist(self) -> tuple[int, ...]:
        return tuple(min(col) for col in zip(*self.degrees))

    @property
    def max_twist(self) -> tuple[int, ...]:
        return tuple(max(col) for col in zip(*self.degrees))

    @property
    def ample(self) -> bool:
        return all(x > 0 for d in self.degrees for x in d)

    @property
    def nef(self) -> bool:
        return all(x >= 0 for d in self.degrees for x in d)


@dataclass(frozen=True)
class TargetSpec:
    ambient: AmbientSpace
    bundle: SplitBundle
    spin: tuple[int, ...] | None = None
    r: int = 1
    d: int = 1
    ell: int = 1
    superpotential: bool = False
    name: str = ""

    def __post_init__(self):
        k = self.ambient.curve_rank
        if len(self.bundle.degrees[0]) != k:
            raise SpecificationError("bundle degrees do not match the ambient curve rank")
        if self.spin is None:
            object.__setattr__(self, "spin", (0,) * k)
        if len(self.spin) != k:
            raise SpecificationError("spin pairing does not match the ambient curve rank")
        if min(self.r, self.d, self.ell) < 1:
            raise SpecificationError("r, d and ell must be positive")
        if self.superpotential and self.rtilde.denominator != 1:
            raise SpecificationError(f"r*ell/d = {self.rtilde} must be an integer when a superpotential exists")

    @property
    def rtilde(self) -> Fraction:
        return Fraction(self.r * self.ell, self.d)

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def dim_infinity(self) -> int:
        return self.ambient.dim + self.rank - 1

    @property
    def kx_det(self) -> tuple[int, ...]:
        """Pairing vector of c_1(K_X (x) det E)."""
        return tuple(a + b for a, b in zip(self.ambient.canonical, self.bundle.det))

    @property
    def log_ample(self) -> bool:
        return self.bundle.ample

    @property
    def log_nef(self) -> bool:
        return self.bundle.nef

    def pair(self, vector: Sequence[int], beta: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(vector, beta))


def infinity_data(target: TargetSpec) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Return ``(dim inf_X, L_log pairing rule, K_X (x) det E pairing)``.

    ``int_beta c_1(K_inf) = -rk E * t + <K_X (x) det E, beta_X>`` where ``t`` is
    the log degree; the second entry is the coefficient vector ``(-rk E)``
    applied to ``t``, reported for symmetry with the third.
    """
    return target.dim_infinity, (-target.rank,), target.kx_det


def k_infinity_degree(target: TargetSpec, beta: Sequence[int], log_degree: int) -> int:
    return -target.rank * log_degree + target.pair(target.kx_det, beta)


@dataclass(frozen=True)
class DiscreteData:
    """Genus, curve class and marking data of a punctured R-map."""

    g: int
    beta: tuple[int, ...]
    contacts: tuple[int, ...] = ()
    orders: tuple[int, ...] | None = None
    log_degree: int | None = None

    def __post_init__(self):
        if self.g < 0:
            raise InvalidDataError("genus must be non-negative")
        if any(b < 0 for b in self.beta):
            raise InvalidDataError("curve class coordinates must be non-negative")
        if any(c >= 0 for c in self.contacts):
            raise InvalidDataError("contact orders must be negative")
        if self.orders is None:
            object.__setattr__(self, "orders", (1,) * len(self.contacts))
        if len(self.orders) != len(self.contacts) or any(r < 1 for r in self.orders):
            raise InvalidDataError("one positive gerbe order per marking is required")

    @property
    def n(self) -> int:
        return len(self.contacts)

    @property
    def ages(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, r) % 1 for c, r in zip(self.contacts, self.orders))


def log_degree(target: TargetSpec, data: DiscreteData) -> int:
    """Degree ``t`` of the curve class against the log line bundle."""
    if len(data.beta) != target.ambient.curve_rank:
        raise InvalidDataError("curve class length does not match the ambient curve rank")
    if target.rank == 1:
        derived = target.pair(target.bundle.degrees[0], data.beta)
        if data.log_degree is not None and data.log_degree != derived:
            raise InvalidDataError(f"log degree {data.log_degree} contradicts the rank-one value {derived}")
        return derived
    if data.log_degree is None:
        raise InvalidDataError("log degree must be given when rk E >= 2")
    return data.log_degree


def normalize_target(r: int, d: int, ell: int) -> tuple[int, int, int, int]:
    """Rewrite (r, d, ell) as equivalent data with ell = 1.

    Returns ``(r_hat, d_hat, a, b)`` with ``a*ell + b*d == r*ell/r_hat``.
    Among the solutions the one with smallest ``|b|`` (ties: ``b >= 0``) is
    returned, which gives ``(a, b) = (1, 0)`` whenever ``ell == 1``.
    """
    if min(r, d, ell) < 1:
        raise InvalidDataError("r, d and ell must be positive")
    q = Fraction(d, r * ell)
    d1, r1 = q.numerator, q.denominator
    r_hat = math.lcm(r, r1)
    d_hat = d1 * r_hat // r1
    rhs = r * ell // r_hat
    g = math.gcd(ell, d)
    if rhs % g:
        raise SpecificationError("no integral solution; inconsistent root data")
    # b ranges over one residue class modulo ell/g
    period = ell // g
    if period == 1:
        b = 0
    else:
        b = (rhs // g) * pow(d // g, -1, period) % period
        if b > period - b:
            b -= period
    a = (rhs - b * d) // ell
    assert a * ell + b * d == rhs
    return r_hat, d_hat, a, b


def push_contacts(contacts: Sequence[int], orders: Sequence[int], base_orders: Sequence[int], ell: int):
    """Discrete data on the ell-th root target to data on the base target.

    ``orders`` are the gerbe orders on the root, ``base_orders`` those of the
    image sectors.  Returns ``(contacts', base_orders, ages')``.
    """
    out = []
    for c, r, r1 in zip(contacts, orders, base_orders, strict=True):
        if r % r1:
            raise InvalidDataError(f"gerbe order {r1} does not divide {r}")
        rho = r // r1
        if ell % rho:
            raise InvalidDataError(f"rho = {rho} does not divide ell = {ell}")
        out.append(ell // rho * c)
    ages = tuple(Fraction(c, r1) % 1 for c, r1 in zip(out, base_orders))
    return tuple(out), tuple(base_orders), ages


def lift_contacts(contacts: Sequence[int], base_orders: Sequence[int], ell: int):
    """Inverse of :func:`push_contacts`.

    Returns ``(contacts, orders, rhos, ages)`` on the ell-th root, where the
    age of the i-th marking is ``{c'_i / (r'_i ell)}``.
    """
    cs, rs, rhos, ages = [], [], [], []
    for c1, r1 in zip(contacts, base_orders, strict=True):
        if c1 == 0:
            raise InvalidDataError("contact order 0 has no lift")
        m = math.lcm(ell, abs(c1))
        rho = m // abs(c1)
        c = (1 if c1 > 0 else -1) * (m // ell)
        cs.append(c)
        rs.append(rho * r1)
        rhos.append(rho)
        ages.append(Fraction(c1, r1 * ell) % 1)
    return tuple(cs), tuple(rs), tuple(rhos), tuple(ages)


def unit_sector(target: TargetSpec) -> tuple[int, Fraction]:
    """Contact order and spin age of the unit sector (requires ell = 1)."""
    if target.ell != 1:
        raise InvalidDataError("normalize the target to ell = 1 first")
    return -target.d, Fraction(1, target.r) % 1


def normalized(target: TargetSpec) -> TargetSpec:
    r_hat, d_hat, _, _ = normalize_target(target.r, target.d, target.ell)
    return TargetSpec(
        target.ambient, target.bundle, target.spin, r_hat, d_hat, 1, target.superpotential, target.name
    )


# -- JSON -------------------------------------------------------------------


def rational_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        if not all(isinstance(obj[k], int) for k in obj) or obj["den"] == 0:
            raise ParseError(f"bad rational {obj!r}")
        return Fraction(obj["num"], obj["den"])
    raise ParseError(f"expected integer or {{'num','den'}} object, got {obj!r}")


def _need(doc: Mapping, key: str, where: str):
    if key not in doc:
        raise ParseError(f"{where}: missing field '{key}'")
    return doc[key]


def _int_list(value, where: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ParseError(f"{where}: expected a list of integers, got {value!r}")
    return tuple(value)


def target_from_dict(doc: Mapping[str, Any]) -> TargetSpec:
    if not isinstance(doc, Mapping):
        raise ParseError("target: top level must be an object")
    amb = _need(doc, "ambient", "target")
    kind = _need(amb, "kind", "ambient")
    try:
        if kind == "projective_product":
            ambient = projective_product(_int_list(_need(amb, "dims", "ambient"), "ambient.dims"), amb.get("names"))
        elif kind == "abstract":
            gens = amb.get("generators", ["H"])
            ambient = AmbientSpace(
                amb.get("name", "X"),
                _need(amb, "dim", "ambient"),
                _int_list(_need(amb, "canonical", "ambient"), "ambient.canonical"),
                tuple(gens),
                bool(amb.get("h1_vanishes", True)),
            )
        else:
            raise ParseError(f"ambient.kind: unknown kind {kind!r}")
        bundle_doc = _need(doc, "bundle", "target")
        degrees = _need(bundle_doc, "degrees", "bundle")
        if not isinstance(degrees, list):
            raise ParseError("bundle.degrees: expected a list of integer lists")
        bundle = SplitBundle(tuple(_int_list(d, f"bundle.degrees[{i}]") for i, d in enumerate(degrees)))
        spin = doc.get("spin")
        return TargetSpec(
            ambient,
            bundle,
            None if spin is None else _int_list(spin, "spin"),
            int(doc.get("r", 1)),
            int(doc.get("d", 1)),
            int(doc.get("ell", 1)),
            bool(doc.get("superpotential", False)),
            str(doc.get("name", "")),
        )
    except SpecificationError as exc:
        raise ParseError(f"target: {exc}") from exc


def target_to_dict(target: TargetSpec) -> dict:
    amb = target.ambient
    if amb.chow_supported:
        ambient = {"kind": "projective_product", "dims": list(amb.dims), "names": list(amb.generators)}
    else:
        ambient = {
            "kind": "abstract",
            "name": amb.name,
            "dim": amb.dim,
            "canonical": list(amb.canonical),
            "generators": list(amb.generators),
            "h1_vanishes": amb.h1_vanishes,
        }
    return {
        "name": target.name,
        "ambient": ambient,
        "bundle": {"degrees": [list(d) for d in target.bundle.degrees]},
        "spin": list(target.spin),
        "r": target.r,
        "d": target.d,
        "ell": target.ell,
        "superpotential": target.superpotential,
    }


def load_target(text: str) -> TargetSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"target JSON, line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return target_from_dict(doc)


# -- named examples -----------------------------------------------------------


def complete_intersection(dims: Sequence[int], degrees: Sequence[Sequence[int]] | Sequence[int], name: str = "") -> TargetSpec:
    """Complete-intersection setup r = d = ell = 1 over a product of P^N."""
    rows = tuple(tuple(d) if isinstance(d, (list, tuple)) else (d,) for d in degrees)
    return TargetSpec(projective_product(dims), SplitBundle(rows), superpotential=True, name=name)


def grassmannian_section(k: int, n: int, degrees: Sequence[int], name: str = "") -> TargetSpec:
    """Complete intersection in Gr(k, n) given by Pluecker-degree sections."""
    ambient = AmbientSpace(f"Gr({k},{n})", k * (n - k), (-n,), ("H",), True, None)
    return TargetSpec(ambient, SplitBundle(tuple((d,) for d in degrees)), superpotential=True, name=name)


PRESETS = {
    "quintic": lambda: complete_intersection([4], [5], "quintic"),
    "x33": lambda: complete_intersection([5], [3, 3], "X_{3,3}"),
    "x2222": lambda: complete_intersection([7], [2, 2, 2, 2], "X_{2,2,2,2}"),
    "x24": lambda: complete_intersection([5], [2, 4], "X_{2,4}"),
    "x223": lambda: complete_intersection([6], [2, 2, 3], "X_{2,2,3}"),
    "gr27": lambda: grassmannian_section(2, 7, [1] * 7, "Gr(2,7) cap 7H"),
}
