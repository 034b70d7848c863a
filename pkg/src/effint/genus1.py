"""Genus-one effective cycles on the Hodge-twisted projective bundle.

For ``g = n = 1`` and ``beta = 0`` the moduli space is the product of the
moduli of elliptic curves with ``inf_X = P(E^v)``.  Its Chow ring is
modelled as Q[lambda, h_i, zeta] with lambda^2 = 0, h_i^{N_i+1} = 0 and the
Grothendieck relation for zeta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .constraints import Vanishing
from .errors import InvalidDataError, SpecificationError
from .ring import RELATION, BundleDesc, GradedAlgebra, GradedElement, Generator, RingSpec
from .target import DiscreteData, TargetSpec

HODGE = "lambda"
ZETA = "zeta"


@dataclass(frozen=True)
class GenusOneModel:
    target: TargetSpec
    ring: GradedAlgebra
    psi_min: GradedElement
    red_cycle: GradedElement
    vir_cycle: GradedElement
    rtilde: Fraction

    @property
    def dim_infinity(self) -> int:
        return self.target.dim_infinity

    def consistency_holds(self) -> bool:
        return self.vir_cycle == -self.psi_min * self.red_cycle * self.rtilde

    def insertion(self, text_or_element) -> GradedElement:
        if isinstance(text_or_element, GradedElement):
            if text_or_element.ring is not self.ring:
                raise InvalidDataError("insertion lives in a different ring")
            return text_or_element
        return self.ring.parse(str(text_or_element))


def genus1_ring(target: TargetSpec, normalization=Fraction(1, 24)) -> GradedAlgebra:
    amb = target.ambient
    if not amb.chow_supported:
        raise SpecificationError(f"{amb.name}: no Chow ring available for an abstract ambient")
    if not target.bundle.ample:
        raise InvalidDataError("E must be ample")
    gens = [Generator(HODGE, 1, 1)]
    gens += [Generator(name, 1, n) for name, n in zip(amb.generators, amb.dims)]
    gens.append(Generator(ZETA, 1, RELATION))
    # F = E^v, one summand -sum_i d_ji h_i per line summand of E
    dual = tuple({name: -d for name, d in zip(amb.generators, row) if d} for row in target.bundle.degrees)
    spec = RingSpec(tuple(gens), bundle=dual, hodge=HODGE, normalization=Fraction(normalization))
    return GradedAlgebra(spec)


def tangent_kclass(target: TargetSpec, ring: GradedAlgebra) -> tuple[BundleDesc, BundleDesc]:
    """``T_inf`` as (numerator, denominator) from the two Euler sequences."""
    amb = target.ambient
    zeta = ring.gen(ZETA)
    num, den = [], []
    for name, n in zip(amb.generators, amb.dims):
        num += [ring.gen(name)] * (n + 1)
        den.append(ring.zero)
    for row in target.bundle.degrees:
        num.append(zeta - ring.linear({name: d for name, d in zip(amb.generators, row)}))
    den.append(ring.zero)
    return BundleDesc(tuple(num)), BundleDesc(tuple(den))


def build_genus1(target: TargetSpec, normalization=Fraction(1, 24)) -> GenusOneModel:
    ring = genus1_ring(target, normalization)
    lam, zeta = ring.gen(HODGE), ring.gen(ZETA)
    hodge_dual = -lam
    num, den = tangent_kclass(target, ring)
    dim_inf = target.dim_infinity
    # c(H^v (x) T) c(H^v) / c(H^v (x) L)
    red_num = num + BundleDesc((ring.zero,))
    red_den = den + BundleDesc((zeta,))
    red = ring.chern_kclass(red_num, red_den, hodge_dual).homogeneous_part(dim_inf)
    vir = hodge_dual * ring.chern_kclass(num, den, hodge_dual).homogeneous_part(dim_inf)
    psi_min = lam - zeta
    return GenusOneModel(target, ring, psi_min, red, vir, target.rtilde)


def genus1_invariant(model: GenusOneModel, k: int = 0, insertions: Sequence = ()) -> Fraction:
    """Degree of ``psi_min^k * prod(alpha_i)`` against the reduced cycle.

    All evaluation maps agree in genus one with beta = 0, so the product of
    the insertions is pulled back along a single evaluation map.
    """
    if k < 0:
        raise InvalidDataError("psi power must be non-negative")
    ring = model.ring
    alpha = reduce(lambda a, b: a * b, (model.insertion(x) for x in insertions), ring.one)
    return ring.integrate(model.psi_min**k * alpha * model.red_cycle)


def genus0_status(target: TargetSpec, data: DiscreteData | None = None) -> Vanishing:
    """Genus zero with nef log line bundle: the moduli space is empty."""
    if data is not None and data.g != 0:
        raise InvalidDataError("genus-zero status asked for positive genus")
    return Vanishing.EMPTY if target.log_nef else Vanishing.UNKNOWN


def genus1_reduce(target: TargetSpec, data: DiscreteData, k: int = 0, insertions: Sequence = (), model=None):
    """Genus-one invariant with any number of untwisted markings.

    ``insertions[i]`` is a monomial string (e.g. ``"h^2"``) at marking i.
    The markings are removed by the string equation down to one, where the
    closed formula applies.
    """
    from .recursion import Token, reduce_to_basic

    if data.g != 1:
        raise InvalidDataError("genus1_reduce needs genus one")
    token = Token.from_data(target, data, insertions)
    result = reduce_to_basic(target, token, k, model=model)
    if result.basic:
        raise AssertionError("genus-one reduction produced unknown symbols")
    return result.constant
