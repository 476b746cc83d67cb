"""Weight-sequence and graded-ring calculus.

A weight sequence (d_0, ..., d_n) encodes the potential sum x_i^{d_i}; its
weight group grades the polynomial ring with deg x_i = e_i.  This module
computes the attached numerology exactly: the hypersurface parameter
mu = lcm(d) * (-1 + sum 1/d_i), the Gorenstein twist eta = -d + sum a_i of a
graded ring presentation, counts of exceptional objects and complementary
blocks, decomposition summaries for the three sign cases, and the graded
doubling that adds two quadric variables to force mu > 0.

All rationals are exact (`fractions.Fraction`); mu is asserted integral and
the code fails loudly rather than rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .abgroup import (GroupElement, PointedAbelianGroup, boxminus, pointed_Z,
                      weight_group)

__all__ = [
    "WeightSequence",
    "GradedRingSpec",
    "GorensteinData",
    "SODSummary",
    "mu_values",
    "gorenstein_parameter",
    "sod_summary",
    "exceptional_count",
    "complement_count",
    "knoerrer_double",
    "concat",
    "spec_from_weights",
]


class WeightSequence:
    """A multiset of integer weights d_i >= 1; equality is order-insensitive."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(sorted(int(x) for x in entries))
        if not entries:
            raise ValueError("empty weight sequence")
        if entries[0] < 1:
            raise ValueError("weights must be >= 1")
        self.entries = entries

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def lcm(self) -> int:
        return math.lcm(*self.entries)

    def product(self) -> int:
        return math.prod(self.entries)

    def has_unit_weight(self) -> bool:
        """A weight 1 collapses the factorization category to zero."""
        return self.entries[0] == 1

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, WeightSequence) and self.entries == other.entries

    def __lt__(self, other):
        return self.entries < other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"WeightSequence({list(self.entries)!r})"


def concat(d: WeightSequence, e: WeightSequence) -> WeightSequence:
    """Multiset union; mu_bar(d + e) = mu_bar(d) + mu_bar(e) + 1."""
    return WeightSequence(d.entries + e.entries)


def mu_values(d: WeightSequence):
    """(mu_bar, mu, sign_class) for a weight sequence.

    mu_bar = -1 + sum 1/d_i exactly; mu = lcm(d) * mu_bar, always an
    integer; sign_class is the strict trichotomy 'negative' / 'zero' /
    'positive'.
    """
    mu_bar = Fraction(-1) + sum(Fraction(1, x) for x in d.entries)
    mu = mu_bar * d.lcm()
    if mu.denominator != 1:
        raise AssertionError(f"mu = lcm * mu_bar is not integral for {d}")
    mu = int(mu)
    sign_class = "zero" if mu == 0 else ("positive" if mu > 0 else "negative")
    return mu_bar, mu, sign_class


@dataclass(frozen=True)
class GradedRingSpec:
    """A positively graded polynomial ring with a potential degree.

    `grading` is a pointed rank-one group whose marked element is the
    potential degree d; `generator_degrees` are the degrees a_i of the
    variables, all of positive degree.
    """

    grading: PointedAbelianGroup
    generator_degrees: tuple

    def __post_init__(self):
        if self.grading.group.free_rank != 1:
            raise ValueError("grading group must have free rank 1")
        if self.grading.degree(self.grading.marked) <= 0:
            raise ValueError("potential degree must be positive")
        for a in self.generator_degrees:
            if self.grading.degree(a) <= 0:
                raise ValueError("ring is not positively graded")

    @property
    def potential_degree(self) -> GroupElement:
        return self.grading.marked

    def degree(self, e: GroupElement) -> int:
        return self.grading.degree(e)

    def num_variables(self) -> int:
        return len(self.generator_degrees)


def spec_from_weights(d: WeightSequence) -> GradedRingSpec:
    """The graded-ring presentation of sum x_i^{d_i} over its weight group."""
    B = weight_group(d.entries)
    gens = tuple(B.group.generator(i) for i in range(len(d)))
    return GradedRingSpec(B, gens)


@dataclass(frozen=True)
class GorensteinData:
    """The Gorenstein twist eta = -d + sum a_i and its degree mu."""

    eta: GroupElement
    mu: int


def gorenstein_parameter(spec: GradedRingSpec) -> GorensteinData:
    """eta = -d + sum of generator degrees, mu = deg(eta)."""
    eta = -spec.potential_degree
    for a in spec.generator_degrees:
        eta = eta + a
    return GorensteinData(eta, spec.degree(eta))


@dataclass(frozen=True)
class SODSummary:
    """Count-level shadow of the three-case decomposition theorem.

    We do not construct the twisted line bundles or the semi-orthogonal
    functors, only block degrees, object kinds and multiplicities: that is
    the computable content.
    """

    case: str            # 'positive' | 'zero' | 'negative'
    mu: int
    torsion: int
    blocks: tuple        # ((degree, kind, count), ...) in decomposition order
    residual: str        # 'factorization' | 'geometry' | 'equivalence'

    def block_count(self) -> int:
        return len(self.blocks)

    def complement_total(self) -> int:
        return sum(b[2] for b in self.blocks)

    def to_json(self):
        return {
            "case": self.case,
            "mu": self.mu,
            "torsion": self.torsion,
            "blocks": [{"degree": deg, "kind": kind, "count": count}
                       for deg, kind, count in self.blocks],
            "residual": self.residual,
        }


def sod_summary(spec: GradedRingSpec) -> SODSummary:
    """Block degrees and per-degree counts for the sign of mu.

    mu > 0: the geometry side decomposes with line-bundle blocks in degrees
    -mu, ..., -1 and the factorization category as residual component.
    mu < 0: the factorization side decomposes with stabilized-residue blocks
    in degrees -mu-1, ..., 0 and the geometry side as residual.  mu = 0: the
    two sides are equivalent and there are no blocks.  Every per-degree
    count is the torsion order of the grading group.
    """
    g = gorenstein_parameter(spec)
    torsion = spec.grading.group.torsion_order()
    if g.mu > 0:
        blocks = tuple((deg, "line_bundle", torsion) for deg in range(-g.mu, 0))
        return SODSummary("positive", g.mu, torsion, blocks, "factorization")
    if g.mu < 0:
        blocks = tuple((deg, "stabilized_residue", torsion)
                       for deg in range(-g.mu - 1, -1, -1))
        return SODSummary("negative", g.mu, torsion, blocks, "geometry")
    return SODSummary("zero", 0, torsion, (), "equivalence")


def exceptional_count(d: WeightSequence) -> int:
    """prod(d_i - 1) + (prod d_i) * (-1 + sum 1/d_i), as an exact integer.

    For a nonnegative sequence this is the length of a full exceptional
    collection on the geometry side; in general it is the residual count
    left after removing the complementary blocks from the prod(d_i - 1)
    exceptional objects of the quiver side.
    """
    correction = d.product() * (Fraction(-1) + sum(Fraction(1, x) for x in d.entries))
    assert correction.denominator == 1
    return math.prod(x - 1 for x in d.entries) + int(correction)


def complement_count(d: WeightSequence) -> int:
    """|mu| * torsion order: the number of complementary exceptional objects."""
    _, mu, _ = mu_values(d)
    torsion = d.product() // d.lcm()
    return abs(mu) * torsion


def knoerrer_double(spec: GradedRingSpec) -> GradedRingSpec:
    """Add two quadric variables: grading A -> A [] (Z,2) [] (Z,2).

    The two new generators are the images of 1 in the Z factors; the new
    potential degree is the common marked element.  The resulting Gorenstein
    degree is strictly positive.
    """
    A1 = boxminus(spec.grading, pointed_Z(2))
    A2 = boxminus(A1, pointed_Z(2))
    n_old = spec.grading.group.num_generators
    gens = []
    for a in spec.generator_degrees:
        gens.append(A2.group.element(list(a.coordinates) + [0, 0]))
    gens.append(A2.group.element([0] * n_old + [1, 0]))
    gens.append(A2.group.element([0] * n_old + [0, 1]))
    doubled = GradedRingSpec(A2, tuple(gens))
    g = gorenstein_parameter(doubled)
    assert g.mu > 0, "doubled Gorenstein degree must be positive"
    return doubled
